import type { ApiErrorBody, EnrichedAnswer, HealthStatus } from "./types.js";

export class ApiError extends Error {
  constructor(
    public readonly code: string,
    message: string,
    public readonly status: number
  ) {
    super(message);
  }
}

async function errorFrom(response: Response): Promise<ApiError> {
  try {
    const body = (await response.json()) as ApiErrorBody;
    return new ApiError(body.error.code, body.error.message, response.status);
  } catch {
    return new ApiError("HTTP_" + response.status, response.statusText, response.status);
  }
}

export class GuardrailClient {
  constructor(
    private readonly baseUrl: string = "",
    private readonly fetchFn: typeof fetch = fetch
  ) {}

  async chat(prompt: string, jurisdiction?: string): Promise<EnrichedAnswer> {
    const response = await this.fetchFn(this.baseUrl + "/v1/chat", {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify(jurisdiction ? { prompt, jurisdiction } : { prompt })
    });
    if (!response.ok) {
      throw await errorFrom(response);
    }
    return (await response.json()) as EnrichedAnswer;
  }

  async health(): Promise<HealthStatus> {
    const response = await this.fetchFn(this.baseUrl + "/health");
    if (!response.ok) {
      throw await errorFrom(response);
    }
    return (await response.json()) as HealthStatus;
  }
}

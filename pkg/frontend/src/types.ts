// Wire types of the guardrail service API (POST /v1/chat, GET /health).

export type ResponsePattern = "no_warning" | "warning" | "no_answer";

export interface AlertCitation {
  fragment_id: string;
  citation_text: string;
  lay_summary: string | null;
}

export interface AlertItem {
  issue: string;
  citations: AlertCitation[];
}

export interface AlertPayload {
  has_alerts: boolean;
  message: string;
  items: AlertItem[];
}

export interface UnresolvedIssue {
  text: string;
  source: string;
  note: string;
}

export interface EnrichedAnswer {
  recommendation: string;
  pattern: ResponsePattern;
  alert: AlertPayload;
  unresolved_issues: UnresolvedIssue[];
  trace: Record<string, unknown>;
}

export interface HealthStatus {
  status: string;
  snapshot_built_at: string;
  fragments: number;
}

export interface ApiErrorBody {
  error: { code: string; message: string };
}

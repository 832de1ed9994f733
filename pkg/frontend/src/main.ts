// DOM wiring: one input, one transcript container, event delegation.

import { ApiError, GuardrailClient } from "./api.js";
import { renderApp } from "./render.js";
import {
  ChatViewState,
  answerReceived,
  canSubmit,
  initialState,
  requestFailed,
  submitStarted,
  toggleAlertCard,
  toggleLaySummary
} from "./state.js";

declare global {
  interface Window {
    LEXGUARD_API_URL?: string;
  }
}

export function mount(root: HTMLElement, client?: GuardrailClient): void {
  const api = client ?? new GuardrailClient(window.LEXGUARD_API_URL ?? "");
  let state: ChatViewState = initialState();

  root.innerHTML =
    `<div id="chat-view"></div>` +
    `<form id="chat-form">` +
    `<input id="chat-input" type="text" autocomplete="off"` +
    ` placeholder="Ask anything..." />` +
    `<button id="chat-submit" type="submit" disabled>Send</button>` +
    `<span id="service-status" title="service status">&#9679;</span>` +
    `</form>`;

  const view = root.querySelector<HTMLElement>("#chat-view")!;
  const form = root.querySelector<HTMLFormElement>("#chat-form")!;
  const input = root.querySelector<HTMLInputElement>("#chat-input")!;
  const submit = root.querySelector<HTMLButtonElement>("#chat-submit")!;
  const status = root.querySelector<HTMLElement>("#service-status")!;

  function apply(next: ChatViewState): void {
    state = next;
    view.innerHTML = renderApp(state);
    submit.disabled = !canSubmit(state, input.value);
    input.disabled = state.pending;
  }

  input.addEventListener("input", () => {
    submit.disabled = !canSubmit(state, input.value);
  });

  form.addEventListener("submit", (event) => {
    event.preventDefault();
    const text = input.value;
    if (!canSubmit(state, text)) {
      return;
    }
    apply(submitStarted(state, text));
    input.value = "";
    api
      .chat(text.trim())
      .then((answer) => apply(answerReceived(state, answer)))
      .catch((error: unknown) => {
        const message =
          error instanceof ApiError
            ? `${error.code}: ${error.message}`
            : "network error, please retry";
        apply(requestFailed(state, message));
      });
  });

  view.addEventListener("click", (event) => {
    const target = event.target as HTMLElement;
    const icon = target.closest<HTMLElement>(".alert-icon");
    if (icon) {
      apply(toggleAlertCard(state, Number(icon.dataset.turn)));
      return;
    }
    const toggle = target.closest<HTMLElement>(".summary-toggle");
    if (toggle) {
      apply(
        toggleLaySummary(
          state,
          Number(toggle.dataset.turn),
          Number(toggle.dataset.item),
          Number(toggle.dataset.citation)
        )
      );
    }
  });

  api
    .health()
    .then(() => status.classList.add("up"))
    .catch(() => status.classList.add("down"));

  apply(state);
}

if (typeof document !== "undefined" && document.getElementById("app")) {
  mount(document.getElementById("app")!);
}

// Pure HTML rendering of the chat view state.
//
// Recommendation and citation text are always rendered verbatim (HTML-
// escaped, never reworded): the guardrail layer annotates answers, the
// UI must not alter them either.

import { ChatViewState, summaryKey } from "./state.js";
import type { AlertCitation, EnrichedAnswer } from "./types.js";

export const SUMMARY_UNAVAILABLE = "summary unavailable";

export function escapeHtml(text: string): string {
  return text
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;")
    .replace(/"/g, "&quot;")
    .replace(/'/g, "&#39;");
}

function alertIcon(turnIndex: number, answer: EnrichedAnswer): string {
  const active = answer.alert.has_alerts;
  return (
    `<button class="alert-icon${active ? " active" : ""}"` +
    ` data-turn="${turnIndex}" aria-label="legal alerts"` +
    ` title="${active ? "Legal issues identified" : "No legal issues identified"}">` +
    `${active ? "&#9888;" : "&#9432;"}</button>`
  );
}

function renderTurn(state: ChatViewState, turnIndex: number): string {
  const turn = state.transcript[turnIndex];
  const pieces = [
    `<div class="turn" data-turn="${turnIndex}">`,
    `<div class="bubble user">${escapeHtml(turn.prompt)}</div>`,
    `<div class="bubble answer"><pre class="recommendation">` +
      `${escapeHtml(turn.answer.recommendation)}</pre>${alertIcon(turnIndex, turn.answer)}</div>`
  ];
  if (state.openAlertIndex === turnIndex) {
    pieces.push(renderAlertCard(state, turnIndex));
  }
  pieces.push(`</div>`);
  return pieces.join("");
}

function renderCitation(
  state: ChatViewState,
  citation: AlertCitation,
  turnIndex: number,
  itemIndex: number,
  citationIndex: number
): string {
  const key = summaryKey(turnIndex, itemIndex, citationIndex);
  const showSummary = Boolean(state.summaryVisible[key]);
  const body = showSummary
    ? escapeHtml(citation.lay_summary ?? SUMMARY_UNAVAILABLE)
    : escapeHtml(citation.citation_text);
  return (
    `<li class="citation">` +
    `<span class="fragment-id">${escapeHtml(citation.fragment_id)}</span>` +
    `<pre class="${showSummary ? "lay-summary" : "citation-text"}">${body}</pre>` +
    `<button class="summary-toggle" data-turn="${turnIndex}"` +
    ` data-item="${itemIndex}" data-citation="${citationIndex}">` +
    `${showSummary ? "Show legal text" : "Show lay summary"}</button>` +
    `</li>`
  );
}

export function renderAlertCard(state: ChatViewState, turnIndex: number): string {
  const answer = state.transcript[turnIndex].answer;
  const pieces = [`<div class="alert-card" data-turn="${turnIndex}">`];
  pieces.push(`<p class="alert-message">${escapeHtml(answer.alert.message)}</p>`);
  if (answer.alert.has_alerts) {
    answer.alert.items.forEach((item, itemIndex) => {
      pieces.push(`<div class="alert-item">`);
      pieces.push(`<p class="issue">${escapeHtml(item.issue)}</p>`);
      pieces.push(`<ul class="citations">`);
      item.citations.forEach((citation, citationIndex) => {
        pieces.push(renderCitation(state, citation, turnIndex, itemIndex, citationIndex));
      });
      pieces.push(`</ul></div>`);
    });
  }
  for (const unresolved of answer.unresolved_issues) {
    pieces.push(
      `<p class="unresolved">${escapeHtml(unresolved.text)}` +
        ` <em>(${escapeHtml(unresolved.note)})</em></p>`
    );
  }
  pieces.push(`</div>`);
  return pieces.join("");
}

export function renderApp(state: ChatViewState): string {
  const pieces = [`<div class="transcript">`];
  for (let i = 0; i < state.transcript.length; i += 1) {
    pieces.push(renderTurn(state, i));
  }
  pieces.push(`</div>`);
  if (state.error) {
    pieces.push(`<div class="error-banner">${escapeHtml(state.error)}</div>`);
  }
  if (state.pending) {
    pieces.push(`<div class="pending">Waiting for the answer...</div>`);
  }
  return pieces.join("");
}

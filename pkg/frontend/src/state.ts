// Chat view state and its pure transition functions.
//
// Every transition takes the current state plus an event payload and
// returns a fresh state object, so a transcript can be replayed in
// tests without a live service.

import type { EnrichedAnswer } from "./types.js";

export interface ChatTurn {
  prompt: string;
  answer: EnrichedAnswer;
}

export interface ChatViewState {
  transcript: ChatTurn[];
  pending: boolean;
  pendingPrompt: string | null;
  error: string | null;
  openAlertIndex: number | null;
  summaryVisible: Record<string, boolean>;
}

export function initialState(): ChatViewState {
  return {
    transcript: [],
    pending: false,
    pendingPrompt: null,
    error: null,
    openAlertIndex: null,
    summaryVisible: {}
  };
}

export function canSubmit(state: ChatViewState, text: string): boolean {
  return !state.pending && text.trim().length > 0;
}

export function submitStarted(state: ChatViewState, text: string): ChatViewState {
  if (!canSubmit(state, text)) {
    return state;
  }
  return { ...state, pending: true, pendingPrompt: text.trim(), error: null };
}

export function answerReceived(
  state: ChatViewState,
  answer: EnrichedAnswer
): ChatViewState {
  if (!state.pending || state.pendingPrompt === null) {
    return state;
  }
  const turn: ChatTurn = { prompt: state.pendingPrompt, answer };
  return {
    ...state,
    transcript: [...state.transcript, turn],
    pending: false,
    pendingPrompt: null,
    error: null
  };
}

export function requestFailed(state: ChatViewState, message: string): ChatViewState {
  // The transcript stays untouched; only an inline banner appears.
  return { ...state, pending: false, pendingPrompt: null, error: message };
}

export function toggleAlertCard(state: ChatViewState, turnIndex: number): ChatViewState {
  if (turnIndex < 0 || turnIndex >= state.transcript.length) {
    return state;
  }
  const openAlertIndex = state.openAlertIndex === turnIndex ? null : turnIndex;
  return { ...state, openAlertIndex };
}

export function summaryKey(
  turnIndex: number,
  itemIndex: number,
  citationIndex: number
): string {
  return `${turnIndex}:${itemIndex}:${citationIndex}`;
}

export function toggleLaySummary(
  state: ChatViewState,
  turnIndex: number,
  itemIndex: number,
  citationIndex: number
): ChatViewState {
  const key = summaryKey(turnIndex, itemIndex, citationIndex);
  return {
    ...state,
    summaryVisible: { ...state.summaryVisible, [key]: !state.summaryVisible[key] }
  };
}

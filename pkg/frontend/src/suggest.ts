/** Autocomplete dropdown state and its keyboard protocol.
 *
 * The dropdown is visible only while an edit buffer is active and the
 * suggestion list is non-empty. Arrow keys move the highlight with wrapping,
 * Enter selects the highlighted entry, Escape closes the dropdown so a plain
 * text commit can proceed.
 */

import type { SuggestionJson } from "./types.js";

export interface SuggestionState {
  query: string;
  items: SuggestionJson[];
  highlighted: number;
  open: boolean;
}

export function closedSuggestions(): SuggestionState {
  return { query: "", items: [], highlighted: -1, open: false };
}

export function openSuggestions(query: string, items: SuggestionJson[]): SuggestionState {
  return { query, items, highlighted: items.length ? 0 : -1, open: items.length > 0 };
}

export type SuggestionKeyResult =
  | { kind: "ignored"; state: SuggestionState }
  | { kind: "moved"; state: SuggestionState }
  | { kind: "selected"; state: SuggestionState; item: SuggestionJson }
  | { kind: "closed"; state: SuggestionState };

export function suggestionKey(state: SuggestionState, key: string): SuggestionKeyResult {
  if (!state.open) return { kind: "ignored", state };
  const n = state.items.length;
  switch (key) {
    case "ArrowDown":
      return { kind: "moved", state: { ...state, highlighted: (state.highlighted + 1) % n } };
    case "ArrowUp":
      return { kind: "moved", state: { ...state, highlighted: (state.highlighted - 1 + n) % n } };
    case "Enter": {
      if (state.highlighted < 0) return { kind: "ignored", state };
      const item = state.items[state.highlighted];
      return { kind: "selected", state: closedSuggestions(), item };
    }
    case "Escape":
      return { kind: "closed", state: closedSuggestions() };
    default:
      return { kind: "ignored", state };
  }
}

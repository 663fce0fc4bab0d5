import { describe, expect, it } from "vitest";

import { closedSuggestions, openSuggestions, suggestionKey } from "../src/suggest.js";

const items = [
  { label: "ESWC", iri: "urn:x:1", comment: null },
  { label: "ESWC 2024", iri: "urn:x:2", comment: "the conference" },
  { label: "Estonia", iri: "urn:x:3", comment: null },
];

describe("suggestion state", () => {
  it("opens only with items", () => {
    expect(openSuggestions("ES", items).open).toBe(true);
    expect(openSuggestions("ES", items).highlighted).toBe(0);
    expect(openSuggestions("zzz", []).open).toBe(false);
    expect(closedSuggestions().open).toBe(false);
  });

  it("wraps the highlight in both directions", () => {
    let state = openSuggestions("ES", items);
    state = assertKind(suggestionKey(state, "ArrowUp"), "moved");
    expect(state.highlighted).toBe(2);
    state = assertKind(suggestionKey(state, "ArrowDown"), "moved");
    expect(state.highlighted).toBe(0);
    state = assertKind(suggestionKey(state, "ArrowDown"), "moved");
    expect(state.highlighted).toBe(1);
  });

  it("selects the highlighted entry on Enter", () => {
    let state = openSuggestions("ES", items);
    state = assertKind(suggestionKey(state, "ArrowDown"), "moved");
    const result = suggestionKey(state, "Enter");
    expect(result.kind).toBe("selected");
    if (result.kind === "selected") {
      expect(result.item.iri).toBe("urn:x:2");
      expect(result.state.open).toBe(false);
    }
  });

  it("closes on Escape so a plain text commit can proceed", () => {
    const result = suggestionKey(openSuggestions("ES", items), "Escape");
    expect(result.kind).toBe("closed");
    expect(result.state.open).toBe(false);
  });

  it("ignores keys while closed", () => {
    const closed = closedSuggestions();
    expect(suggestionKey(closed, "ArrowDown").kind).toBe("ignored");
    expect(suggestionKey(closed, "Enter").kind).toBe("ignored");
  });
});

function assertKind(
  result: ReturnType<typeof suggestionKey>,
  kind: "moved"
): ReturnType<typeof openSuggestions> {
  expect(result.kind).toBe(kind);
  return result.state;
}

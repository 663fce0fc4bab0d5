// @vitest-environment jsdom
/** Grid view rendering and interaction against a fixture-backed client. */

import { beforeEach, describe, expect, it } from "vitest";

import type { CellAddress, CommitResult, WorkbookClient } from "../src/client.js";
import { GridState } from "../src/state.js";
import { GridView, type GridViewOptions } from "../src/ui.js";
import type { DeltaJson } from "../src/types.js";
import { deliver, loadFixture, openFixtureClient, sleep } from "./support.js";

const fixture = loadFixture();

const emptyDelta: DeltaJson = { added: [], removed: [], minted: [] };
const appliedResult: CommitResult = { status: "applied", revision: 0, delta: emptyDelta };

async function mount(
  upto: number,
  options: GridViewOptions = {}
): Promise<{ client: WorkbookClient; root: HTMLElement; view: GridView }> {
  const client = await openFixtureClient(fixture, upto);
  const root = document.createElement("div");
  document.body.append(root);
  const view = new GridView(root, client, { suggestDebounceMs: 0, ...options });
  return { client, root, view };
}

function cellTd(root: HTMLElement, row: number, col: number): HTMLElement {
  const td = root.querySelector<HTMLElement>(`td[data-row="${row}"][data-col="${col}"]`);
  if (!td) throw new Error(`no cell rendered at (${row},${col})`);
  return td;
}

function editor(root: HTMLElement): HTMLInputElement {
  const input = root.querySelector<HTMLInputElement>("input.editor");
  if (!input) throw new Error("no editor open");
  return input;
}

function type(input: HTMLInputElement, value: string): void {
  input.value = value;
  input.dispatchEvent(new Event("input", { bubbles: true }));
}

function key(input: HTMLInputElement, name: string): void {
  input.dispatchEvent(new KeyboardEvent("keydown", { key: name, bubbles: true }));
}

async function tick(): Promise<void> {
  await sleep(0);
  await sleep(0);
}

beforeEach(() => {
  document.body.innerHTML = "";
});

describe("grid projection", () => {
  it("renders every committed cell through the display rule", async () => {
    const { client, root, view } = await mount(0);
    let quotedSeen = 0;
    for (let k = 0; k <= fixture.events.length; k++) {
      if (k > 0) {
        deliver(client, fixture.events[k - 1]);
        view.render();
      }
      const sheet = client.state.sheets[0];
      if (!sheet) continue;
      for (const [keyStr, cell] of sheet.cells) {
        const [row, col] = keyStr.split(",").map(Number);
        const span = cellTd(root, row, col).querySelector("span.text");
        expect(span?.textContent).toBe(GridState.displayText(cell));
        if (cell.text.startsWith("'")) quotedSeen += 1;
      }
      for (const span of root.querySelectorAll("td.cell span.text")) {
        expect(span.textContent?.startsWith("'")).toBe(false);
      }
    }
    expect(quotedSeen).toBeGreaterThan(0);
  });

  it("marks materialized cells with a badge and the rest pending", async () => {
    const { client, root } = await mount(fixture.events.length);
    const sheet = client.state.sheets[0];
    for (const [keyStr, cell] of sheet.cells) {
      const [row, col] = keyStr.split(",").map(Number);
      const td = cellTd(root, row, col);
      if (cell.materialized) {
        expect(td.classList.contains("materialized")).toBe(true);
        expect(td.querySelector("span.badge")).not.toBeNull();
      } else {
        expect(td.classList.contains("pending")).toBe(true);
        expect(td.querySelector("span.badge")).toBeNull();
      }
    }
  });

  it("shows header text and carries bound nodes as data-iri", async () => {
    const { client, root } = await mount(fixture.events.length);
    const sheet = client.state.sheets[0];
    for (const [row, header] of sheet.rows) {
      const th = root.querySelector<HTMLElement>(`th[data-row="${row}"]`);
      expect(th?.textContent).toBe(header.text);
      if (header.node) expect(th?.dataset.iri).toBe(header.node);
    }
    const tab = root.querySelector("button.tab");
    expect(tab?.textContent).toBe(sheet.name);
  });
});

describe("cell editing", () => {
  it("opens with the raw stored text and commits the buffer on Enter", async () => {
    const { client, root } = await mount(6);
    const calls: [CellAddress, unknown][] = [];
    client.commitCellEdit = async (addr, content) => {
      calls.push([addr, content]);
      return appliedResult;
    };

    const quotedEntry = [...client.state.sheets[0].cells.entries()].find(([, c]) =>
      c.text.startsWith("'")
    );
    expect(quotedEntry).toBeDefined();
    const [quotedKey, quotedCell] = quotedEntry!;
    const [qr, qc] = quotedKey.split(",").map(Number);
    cellTd(root, qr, qc).dispatchEvent(new MouseEvent("dblclick", { bubbles: true }));
    expect(editor(root).value).toBe(quotedCell.text); // raw text, quote included

    type(editor(root), "'B");
    key(editor(root), "Enter");
    await tick();
    expect(calls).toEqual([[{ sheet: 0, row: qr, col: qc }, { kind: "text", text: "'B" }]]);
    expect(root.querySelector("input.editor")).toBeNull();
  });

  it("discards the buffer on Escape", async () => {
    const { client, root } = await mount(6);
    let committed = 0;
    client.commitCellEdit = async () => {
      committed += 1;
      return appliedResult;
    };
    cellTd(root, 4, 0).dispatchEvent(new MouseEvent("dblclick", { bubbles: true }));
    type(editor(root), "typed but abandoned");
    key(editor(root), "Escape");
    await tick();
    expect(committed).toBe(0);
    expect(root.querySelector("input.editor")).toBeNull();
  });

  it("routes header and sheet-name edits to their commit calls", async () => {
    const { client, root } = await mount(6);
    const ops: string[] = [];
    client.commitRowHeader = async (s, r, text) => {
      ops.push(`row ${s}:${r} ${text}`);
      return appliedResult;
    };
    client.nameSheet = async (s, name) => {
      ops.push(`name ${s} ${name}`);
      return appliedResult;
    };

    root.querySelector<HTMLElement>('th[data-row="3"]')!.dispatchEvent(
      new MouseEvent("dblclick", { bubbles: true })
    );
    type(editor(root), "NewRow");
    key(editor(root), "Enter");
    await tick();

    root.querySelector<HTMLElement>("button.tab")!.dispatchEvent(
      new MouseEvent("dblclick", { bubbles: true })
    );
    type(editor(root), "Renamed");
    key(editor(root), "Enter");
    await tick();

    expect(ops).toEqual(["row 0:3 NewRow", "name 0 Renamed"]);
  });
});

describe("suggestions", () => {
  it("queries while typing, renders comments, and commits the arrowed pick", async () => {
    const { client, root } = await mount(6);
    const queries: string[] = [];
    client.fetchSuggestions = async (prefix) => {
      queries.push(prefix);
      return [
        { label: "ESWC", iri: "urn:s:1", comment: "European gathering" },
        { label: "ESWC 2024", iri: "urn:s:2", comment: null },
      ];
    };
    const commits: unknown[] = [];
    client.commitCellEdit = async (_addr, content) => {
      commits.push(content);
      return appliedResult;
    };

    cellTd(root, 4, 0).dispatchEvent(new MouseEvent("dblclick", { bubbles: true }));
    type(editor(root), "ES");
    await tick();
    expect(queries).toEqual(["ES"]);
    const dropdown = root.querySelector<HTMLElement>("ul.dropdown")!;
    expect(dropdown.hidden).toBe(false);
    const items = dropdown.querySelectorAll("li.suggestion");
    expect(items).toHaveLength(2);
    expect(items[0].classList.contains("highlighted")).toBe(true);
    expect(items[0].querySelector("span.suggestion-comment")?.textContent).toBe(
      "European gathering"
    );

    key(editor(root), "ArrowDown");
    key(editor(root), "Enter");
    await tick();
    expect(commits).toEqual([{ kind: "reference", iri: "urn:s:2", label: "ESWC 2024" }]);
  });

  it("stays closed for quoted input and closes on Escape without ending the edit", async () => {
    const { client, root } = await mount(6);
    let queried = 0;
    client.fetchSuggestions = async () => {
      queried += 1;
      return [{ label: "X", iri: "urn:s:x", comment: null }];
    };

    cellTd(root, 4, 0).dispatchEvent(new MouseEvent("dblclick", { bubbles: true }));
    type(editor(root), "'forced literal");
    await tick();
    expect(queried).toBe(0);
    expect(root.querySelector<HTMLElement>("ul.dropdown")!.hidden).toBe(true);

    type(editor(root), "label");
    await tick();
    expect(queried).toBe(1);
    expect(root.querySelector<HTMLElement>("ul.dropdown")!.hidden).toBe(false);
    key(editor(root), "Escape"); // first Escape only closes the dropdown
    expect(root.querySelector("input.editor")).not.toBeNull();
    expect(root.querySelector("li.suggestion")).toBeNull();
  });
});

describe("ambiguity picker", () => {
  it("lists candidates with known comments and pastes the chosen one", async () => {
    const { client, root } = await mount(fixture.events.length);
    const sheet = client.state.sheets[0];
    const bound = [...sheet.rows.values()].find((h) => h.node && client.state.commentOf(h.node));
    expect(bound).toBeDefined();
    const commented = bound!.node!;

    client.commitCellEdit = async () => ({
      status: "ambiguous",
      label: "Gold Standard",
      candidates: [commented, "urn:x:other"],
    });
    const picks: [CellAddress, string][] = [];
    client.resolveAmbiguity = async (addr, iri) => {
      picks.push([addr, iri]);
      return appliedResult;
    };

    cellTd(root, 4, 1).dispatchEvent(new MouseEvent("dblclick", { bubbles: true }));
    type(editor(root), "Gold Standard");
    key(editor(root), "Enter");
    await tick();

    const picker = root.querySelector<HTMLElement>("div.picker")!;
    expect(picker.hidden).toBe(false);
    const candidates = picker.querySelectorAll<HTMLElement>("li.candidate");
    expect(candidates).toHaveLength(2);
    expect(candidates[0].querySelector("span.candidate-comment")).not.toBeNull();
    expect(candidates[1].querySelector("span.candidate-iri")?.textContent).toBe("urn:x:other");

    candidates[1].dispatchEvent(new MouseEvent("click", { bubbles: true }));
    await tick();
    expect(picks).toEqual([[{ sheet: 0, row: 4, col: 1 }, "urn:x:other"]]);
    expect(root.querySelector<HTMLElement>("div.picker")!.hidden).toBe(true);
  });
});

describe("comments", () => {
  it("shows the comment as a tooltip when hovering a bound node", async () => {
    const { client, root } = await mount(fixture.events.length);
    const bound = [...client.state.sheets[0].rows.entries()].find(
      ([, h]) => h.node && client.state.commentOf(h.node)
    );
    expect(bound).toBeDefined();
    const [row, header] = bound!;

    const th = root.querySelector<HTMLElement>(`th[data-row="${row}"]`)!;
    th.dispatchEvent(new MouseEvent("mouseover", { bubbles: true }));
    const tooltip = root.querySelector<HTMLElement>("div.tooltip")!;
    expect(tooltip.hidden).toBe(false);
    expect(tooltip.textContent).toBe(client.state.commentOf(header.node!));

    th.dispatchEvent(new MouseEvent("mouseout", { bubbles: true }));
    expect(tooltip.hidden).toBe(true);
  });

  it("binds the comment pane to the selected node and commits changes", async () => {
    const { client, root } = await mount(fixture.events.length);
    const edits: [string, string][] = [];
    client.setComment = async (iri, text) => {
      edits.push([iri, text]);
      return appliedResult;
    };
    const bound = [...client.state.sheets[0].rows.entries()].find(([, h]) => h.node);
    const [row, header] = bound!;

    expect(root.querySelector<HTMLTextAreaElement>("textarea.comment-input")!.disabled).toBe(true);
    root
      .querySelector<HTMLElement>(`th[data-row="${row}"]`)!
      .dispatchEvent(new MouseEvent("click", { bubbles: true }));
    const area = root.querySelector<HTMLTextAreaElement>("textarea.comment-input")!;
    expect(area.disabled).toBe(false);
    expect(area.value).toBe(client.state.commentOf(header.node!) ?? "");

    area.value = "updated note";
    area.dispatchEvent(new Event("change", { bubbles: true }));
    await tick();
    expect(edits).toEqual([[header.node!, "updated note"]]);
  });
});

describe("sync affordances", () => {
  it("lists unsynced addresses in the status bar with working retry buttons", async () => {
    const { client, root, view } = await mount(6);
    let retried = 0;
    client.unsynced.set("c:0:4,0", async () => {
      retried += 1;
      return appliedResult;
    });
    view.render();

    expect(root.querySelector("span.revision")?.textContent).toBe("rev 6");
    const retry = root.querySelector<HTMLElement>("button.retry")!;
    expect(retry.dataset.key).toBe("c:0:4,0");
    expect(cellTd(root, 4, 0).classList.contains("unsynced")).toBe(true);
    retry.dispatchEvent(new MouseEvent("click", { bubbles: true }));
    await tick();
    expect(retried).toBe(1);
  });

  it("highlights remote edits only for other actors, and not when disabled", async () => {
    const { client, root, view } = await mount(6);
    client.lastChange = { actor: "someone-else", addresses: new Set(["c:0:0,0"]) };
    view.render();
    expect(cellTd(root, 0, 0).classList.contains("remote")).toBe(true);

    client.lastChange = { actor: client.actor, addresses: new Set(["c:0:0,0"]) };
    view.render();
    expect(cellTd(root, 0, 0).classList.contains("remote")).toBe(false);

    const quiet = await mount(6, { markRemote: false });
    quiet.client.lastChange = { actor: "someone-else", addresses: new Set(["c:0:0,0"]) };
    quiet.view.render();
    expect(cellTd(quiet.root, 0, 0).classList.contains("remote")).toBe(false);
  });

  it("copies a bound resource and pastes it elsewhere", async () => {
    const { client, view } = await mount(fixture.events.length);
    const pastes: unknown[] = [];
    client.pasteClip = async (addr, clip) => {
      pastes.push([addr, clip]);
      return appliedResult;
    };
    const resourceKey = [...client.state.sheets[0].cells.entries()].find(
      ([, c]) => c.value?.kind === "resource"
    )?.[0];
    expect(resourceKey).toBeDefined();
    const [row, col] = resourceKey!.split(",").map(Number);

    view.selection = { type: "cell", addr: { sheet: 0, row, col } };
    view.copySelection();
    expect(view.clipboard?.kind).toBe("reference");

    view.selection = { type: "cell", addr: { sheet: 0, row: 5, col: 3 } };
    await view.pasteSelection();
    expect(pastes).toEqual([
      [{ sheet: 0, row: 5, col: 3 }, view.clipboard],
    ]);
  });
});

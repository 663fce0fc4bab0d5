/** Spreadsheet view: tab bar, grid, autocomplete dropdown, comment pane.
 *
 * Rendering is a pure projection of the client's grid state; the view holds
 * only transient interaction state (selection, the active edit buffer, the
 * dropdown, the ambiguity picker). Committed cell text always goes through
 * GridState.displayText, so the literal-quote affordance never reaches the
 * screen.
 */

import type { BufferContent, CellAddress, CommitResult, WorkbookClient } from "./client.js";
import { GridState, cellKey } from "./state.js";
import { SuggestionState, closedSuggestions, openSuggestions, suggestionKey } from "./suggest.js";
import type { SuggestionJson } from "./types.js";

const MIN_ROWS = 6;
const MIN_COLS = 5;

type Target =
  | { type: "cell"; addr: CellAddress }
  | { type: "row"; sheet: number; row: number }
  | { type: "col"; sheet: number; col: number }
  | { type: "name"; sheet: number };

interface EditBuffer {
  target: Target;
  value: string;
  suggestions: SuggestionState;
  reference: { iri: string; label: string } | null;
}

interface Picker {
  addr: CellAddress;
  label: string;
  candidates: string[];
}

export interface GridViewOptions {
  /** Delay before querying suggestions while typing; 0 queries immediately. */
  suggestDebounceMs?: number;
  /** Disable the remote-edit highlight (used when diffing two rendered views). */
  markRemote?: boolean;
}

export class GridView {
  activeSheet = 0;
  selection: Target | null = null;
  clipboard: ReturnType<WorkbookClient["copyCell"]> = null;
  private editing: EditBuffer | null = null;
  private picker: Picker | null = null;
  private suggestTimer: ReturnType<typeof setTimeout> | null = null;
  private readonly debounceMs: number;
  private readonly markRemote: boolean;

  constructor(
    readonly root: HTMLElement,
    readonly client: WorkbookClient,
    options: GridViewOptions = {}
  ) {
    this.debounceMs = options.suggestDebounceMs ?? 150;
    this.markRemote = options.markRemote ?? true;
    root.classList.add("rdfsheet");
    this.render();
  }

  // ------------------------------------------------------------------ render

  render(): void {
    const state = this.client.state;
    if (this.activeSheet >= Math.max(state.sheets.length, 1)) this.activeSheet = 0;
    this.root.replaceChildren(
      this.renderTabs(state),
      this.renderGrid(state),
      this.renderDropdown(),
      this.renderPicker(),
      this.renderCommentPane(state),
      this.renderStatusBar(state)
    );
    const tooltip = el("div", "tooltip");
    tooltip.hidden = true;
    this.root.append(tooltip);
  }

  private renderTabs(state: GridState): HTMLElement {
    const bar = el("div", "tabs");
    const count = Math.max(state.sheets.length, 1);
    for (let i = 0; i < count; i++) {
      const name = state.sheets[i]?.name ?? "";
      if (this.editing?.target.type === "name" && this.editing.target.sheet === i) {
        bar.append(this.renderEditor("tab-editor"));
        continue;
      }
      const tab = el("button", "tab", name || `Sheet ${i + 1}`);
      tab.dataset.sheet = String(i);
      if (i === this.activeSheet) tab.classList.add("active");
      if (!name) tab.classList.add("unnamed");
      if (this.isRemote(`sheet:${i}`)) tab.classList.add("remote");
      tab.addEventListener("click", () => {
        this.activeSheet = i;
        this.render();
      });
      tab.addEventListener("dblclick", () => this.beginEdit({ type: "name", sheet: i }, name));
      bar.append(tab);
    }
    const add = el("button", "tab add", "+");
    add.addEventListener("click", () => {
      this.activeSheet = count;
      this.beginEdit({ type: "name", sheet: count }, "");
    });
    bar.append(add);
    return bar;
  }

  private renderGrid(state: GridState): HTMLElement {
    const sheet = state.sheets[this.activeSheet];
    let maxRow = MIN_ROWS - 1;
    let maxCol = MIN_COLS - 1;
    if (sheet) {
      for (const r of sheet.rows.keys()) maxRow = Math.max(maxRow, r + 1);
      for (const c of sheet.cols.keys()) maxCol = Math.max(maxCol, c + 1);
      for (const key of sheet.cells.keys()) {
        const [r, c] = key.split(",").map(Number);
        maxRow = Math.max(maxRow, r + 1);
        maxCol = Math.max(maxCol, c + 1);
      }
    }
    const table = el("table", "grid");
    const head = document.createElement("tr");
    head.append(el("th", "corner"));
    for (let c = 0; c <= maxCol; c++) {
      head.append(this.renderHeaderCell("col", c, sheet?.cols.get(c)));
    }
    table.append(head);
    for (let r = 0; r <= maxRow; r++) {
      const tr = document.createElement("tr");
      tr.append(this.renderHeaderCell("row", r, sheet?.rows.get(r)));
      for (let c = 0; c <= maxCol; c++) {
        tr.append(this.renderCell(state, r, c));
      }
      table.append(tr);
    }
    table.addEventListener("mouseover", (e) => this.showTooltip(e));
    table.addEventListener("mouseout", () => this.hideTooltip());
    return table;
  }

  private renderHeaderCell(
    axis: "row" | "col",
    index: number,
    header: { text: string; node: string | null } | undefined
  ): HTMLElement {
    const target: Target =
      axis === "row"
        ? { type: "row", sheet: this.activeSheet, row: index }
        : { type: "col", sheet: this.activeSheet, col: index };
    if (this.editing && sameTarget(this.editing.target, target)) {
      const th = el("th", `${axis}-header editing`);
      th.append(this.renderEditor("header-editor"));
      return th;
    }
    const th = el("th", `${axis}-header`, header?.text ?? "");
    th.dataset[axis] = String(index);
    if (header?.node) th.dataset.iri = header.node;
    const key = axis === "row" ? `h:r:${this.activeSheet}:${index}` : `h:c:${this.activeSheet}:${index}`;
    if (this.isRemote(key)) th.classList.add("remote");
    if (this.client.unsynced.has(key)) th.classList.add("unsynced");
    th.addEventListener("click", () => {
      this.selection = target;
      this.render();
    });
    th.addEventListener("dblclick", () => this.beginEdit(target, header?.text ?? ""));
    if (this.selection && sameTarget(this.selection, target)) th.classList.add("selected");
    return th;
  }

  private renderCell(state: GridState, row: number, col: number): HTMLElement {
    const addr: CellAddress = { sheet: this.activeSheet, row, col };
    const target: Target = { type: "cell", addr };
    if (this.editing && sameTarget(this.editing.target, target)) {
      const td = el("td", "cell editing");
      td.append(this.renderEditor("cell-editor"));
      return td;
    }
    const cell = state.cellAt(addr.sheet, row, col);
    const td = el("td", "cell");
    td.dataset.row = String(row);
    td.dataset.col = String(col);
    if (cell) {
      const text = el("span", "text", GridState.displayText(cell));
      td.append(text);
      if (cell.materialized) {
        td.classList.add("materialized");
        td.append(el("span", "badge", "●"));
      } else {
        td.classList.add("pending");
      }
      const value = cell.value;
      if (value && value.kind !== "literal") td.dataset.iri = value.iri;
    }
    const key = `c:${addr.sheet}:${cellKey(row, col)}`;
    if (this.isRemote(key)) td.classList.add("remote");
    if (this.client.unsynced.has(key)) td.classList.add("unsynced");
    if (this.selection && sameTarget(this.selection, target)) td.classList.add("selected");
    td.addEventListener("click", () => {
      this.selection = target;
      this.render();
    });
    td.addEventListener("dblclick", () => this.beginEdit(target, cell?.text ?? ""));
    return td;
  }

  private renderEditor(extraClass: string): HTMLElement {
    const input = document.createElement("input");
    input.className = `editor ${extraClass}`;
    input.value = this.editing?.value ?? "";
    input.addEventListener("input", () => this.onEditorInput(input.value));
    input.addEventListener("keydown", (e) => this.onEditorKey(e));
    queueMicrotask(() => input.focus());
    return input;
  }

  private renderDropdown(): HTMLElement {
    const list = el("ul", "dropdown");
    const suggestions = this.editing?.suggestions;
    if (!this.editing || !suggestions?.open) {
      list.hidden = true;
      return list;
    }
    suggestions.items.forEach((item, i) => {
      const li = el("li", "suggestion", item.label);
      if (item.comment) li.append(el("span", "suggestion-comment", item.comment));
      li.dataset.iri = item.iri;
      if (i === suggestions.highlighted) li.classList.add("highlighted");
      li.addEventListener("mousedown", (e) => {
        e.preventDefault();
        void this.selectSuggestion(item);
      });
      list.append(li);
    });
    return list;
  }

  private renderPicker(): HTMLElement {
    const box = el("div", "picker");
    if (!this.picker) {
      box.hidden = true;
      return box;
    }
    box.append(el("div", "picker-title", `"${this.picker.label}" matches several resources`));
    const list = el("ul", "picker-list");
    for (const iri of this.picker.candidates) {
      const li = el("li", "candidate");
      li.dataset.iri = iri;
      li.append(el("span", "candidate-label", this.picker.label));
      const comment = this.client.state.commentOf(iri);
      if (comment) li.append(el("span", "candidate-comment", comment));
      li.append(el("span", "candidate-iri", iri));
      li.addEventListener("click", () => void this.pickCandidate(iri));
      list.append(li);
    }
    box.append(list);
    const cancel = el("button", "picker-cancel", "Cancel");
    cancel.addEventListener("click", () => {
      this.picker = null;
      this.render();
    });
    box.append(cancel);
    return box;
  }

  private renderCommentPane(state: GridState): HTMLElement {
    const pane = el("div", "comment-pane");
    const iri = this.selectedIri();
    pane.append(el("label", "comment-label", "Comment"));
    const area = document.createElement("textarea");
    area.className = "comment-input";
    if (iri) {
      area.value = state.commentOf(iri) ?? "";
      area.addEventListener("change", () => void this.client.setComment(iri, area.value));
    } else {
      area.disabled = true;
    }
    pane.append(area);
    return pane;
  }

  private renderStatusBar(state: GridState): HTMLElement {
    const bar = el("div", "statusbar");
    bar.append(el("span", "revision", `rev ${state.revision}`));
    bar.append(el("span", "statements", `${state.statements} statements`));
    for (const key of this.client.unsynced.keys()) {
      const retry = el("button", "retry", `retry ${key}`);
      retry.dataset.key = key;
      retry.addEventListener("click", () => void this.client.retryUnsynced(key));
      bar.append(retry);
    }
    return bar;
  }

  // ------------------------------------------------------------------ editing

  beginEdit(target: Target, initial: string): void {
    this.editing = { target, value: initial, suggestions: closedSuggestions(), reference: null };
    this.selection = target;
    this.render();
  }

  cancelEdit(): void {
    this.editing = null;
    this.render();
  }

  private onEditorInput(value: string): void {
    if (!this.editing) return;
    this.editing.value = value;
    this.editing.reference = null;
    if (this.editing.target.type !== "cell" || value === "" || value.startsWith("'")) {
      this.editing.suggestions = closedSuggestions();
      this.refreshDropdown();
      return;
    }
    if (this.suggestTimer) clearTimeout(this.suggestTimer);
    const run = () => void this.querySuggestions(value);
    if (this.debounceMs === 0) run();
    else this.suggestTimer = setTimeout(run, this.debounceMs);
  }

  private async querySuggestions(prefix: string): Promise<void> {
    const items = await this.client.fetchSuggestions(prefix);
    if (!this.editing || this.editing.value !== prefix) return; // stale response
    this.editing.suggestions = openSuggestions(prefix, items);
    this.refreshDropdown();
  }

  private refreshDropdown(): void {
    const existing = this.root.querySelector("ul.dropdown");
    if (existing) existing.replaceWith(this.renderDropdown());
  }

  private onEditorKey(e: KeyboardEvent): void {
    if (!this.editing) return;
    const result = suggestionKey(this.editing.suggestions, e.key);
    if (result.kind === "moved") {
      e.preventDefault();
      this.editing.suggestions = result.state;
      this.refreshDropdown();
      return;
    }
    if (result.kind === "selected") {
      e.preventDefault();
      void this.selectSuggestion(result.item);
      return;
    }
    if (result.kind === "closed") {
      e.preventDefault();
      this.editing.suggestions = result.state;
      this.refreshDropdown();
      return;
    }
    if (e.key === "Enter") {
      e.preventDefault();
      void this.commitEditor();
    } else if (e.key === "Escape") {
      e.preventDefault();
      this.cancelEdit();
    }
  }

  /** Bind the edit buffer to the chosen resource and commit it as a paste. */
  async selectSuggestion(item: SuggestionJson): Promise<void> {
    if (!this.editing || this.editing.target.type !== "cell") return;
    this.editing.reference = { iri: item.iri, label: item.label };
    this.editing.suggestions = closedSuggestions();
    await this.commitEditor();
  }

  async commitEditor(): Promise<CommitResult | null> {
    const buffer = this.editing;
    if (!buffer) return null;
    this.editing = null;
    let result: CommitResult;
    const target = buffer.target;
    if (target.type === "cell") {
      const content: BufferContent = buffer.reference
        ? { kind: "reference", ...buffer.reference }
        : { kind: "text", text: buffer.value };
      result = await this.client.commitCellEdit(target.addr, content);
      if (result.status === "ambiguous") {
        this.picker = { addr: target.addr, label: result.label, candidates: result.candidates };
      }
    } else if (target.type === "row") {
      result = await this.client.commitRowHeader(target.sheet, target.row, buffer.value);
    } else if (target.type === "col") {
      result = await this.client.commitColumnHeader(target.sheet, target.col, buffer.value);
    } else {
      result = await this.client.nameSheet(target.sheet, buffer.value);
    }
    this.render();
    return result;
  }

  private async pickCandidate(iri: string): Promise<void> {
    const picker = this.picker;
    this.picker = null;
    if (picker) await this.client.resolveAmbiguity(picker.addr, iri);
    this.render();
  }

  // ------------------------------------------------------------- copy / paste

  copySelection(): void {
    if (this.selection?.type === "cell") {
      this.clipboard = this.client.copyCell(this.selection.addr);
    }
  }

  async pasteSelection(): Promise<CommitResult | null> {
    if (this.selection?.type !== "cell" || !this.clipboard) return null;
    return this.client.pasteClip(this.selection.addr, this.clipboard);
  }

  // ------------------------------------------------------------------ tooltip

  private showTooltip(e: Event): void {
    const target = e.target instanceof Element ? e.target.closest("[data-iri]") : null;
    const tooltip = this.root.querySelector<HTMLElement>("div.tooltip");
    if (!tooltip) return;
    const comment = target ? this.client.state.commentOf((target as HTMLElement).dataset.iri!) : null;
    if (comment) {
      tooltip.textContent = comment;
      tooltip.hidden = false;
    } else {
      tooltip.hidden = true;
    }
  }

  private hideTooltip(): void {
    const tooltip = this.root.querySelector<HTMLElement>("div.tooltip");
    if (tooltip) tooltip.hidden = true;
  }

  // ------------------------------------------------------------------ helpers

  private selectedIri(): string | null {
    const state = this.client.state;
    const sel = this.selection;
    if (!sel) return null;
    if (sel.type === "cell") {
      const cell = state.cellAt(sel.addr.sheet, sel.addr.row, sel.addr.col);
      const value = cell?.value;
      return value && value.kind !== "literal" ? value.iri : null;
    }
    if (sel.type === "row") return state.sheets[sel.sheet]?.rows.get(sel.row)?.node ?? null;
    if (sel.type === "col") return state.sheets[sel.sheet]?.cols.get(sel.col)?.node ?? null;
    return null;
  }

  private isRemote(key: string): boolean {
    if (!this.markRemote) return false;
    const change = this.client.lastChange;
    return change.actor !== this.client.actor && change.addresses.has(key);
  }

  /** Drop the remote-edit highlight (after diffing two views, or on demand). */
  clearHighlights(): void {
    this.client.lastChange = { actor: this.client.actor, addresses: new Set() };
    this.render();
  }
}

function sameTarget(a: Target, b: Target): boolean {
  if (a.type !== b.type) return false;
  if (a.type === "cell" && b.type === "cell") {
    return (
      a.addr.sheet === b.addr.sheet && a.addr.row === b.addr.row && a.addr.col === b.addr.col
    );
  }
  if (a.type === "row" && b.type === "row") return a.sheet === b.sheet && a.row === b.row;
  if (a.type === "col" && b.type === "col") return a.sheet === b.sheet && a.col === b.col;
  if (a.type === "name" && b.type === "name") return a.sheet === b.sheet;
  return false;
}

function el(tag: string, className: string, text?: string): HTMLElement {
  const node = document.createElement(tag);
  node.className = className;
  if (text !== undefined) node.textContent = text;
  return node;
}

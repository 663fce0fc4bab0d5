/** Local grid state and the change-event reducer.
 *
 * The client never guesses bindings ahead of the server: state advances only
 * by applying acknowledged change events, in revision order, exactly once.
 * Each event replays the same per-sheet bookkeeping the engine performed
 * (header binding, pending cells, materialization), with label resolution
 * answered from the local label index plus the event's minted IRIs. Applied
 * over the same event sequence, two grids are therefore identical, and both
 * match the server's own snapshot.
 */

import { classifyCellInput } from "./cells.js";
import { parseNtriples } from "./ntparse.js";
import type {
  CellJson,
  ChangeEventJson,
  DeltaJson,
  EditJson,
  HeaderJson,
  SnapshotJson,
  TripleJson,
} from "./types.js";
import { RDFS_COMMENT, RDFS_LABEL } from "./types.js";

export const CREATED = "created-here";
export const REFERENCED = "referenced";

export interface Header {
  text: string;
  node: string | null;
  origin: string;
}

export type BoundValue =
  | { kind: "resource"; iri: string }
  | { kind: "direct"; iri: string }
  | { kind: "literal"; lexical: string; datatype: string; language: string | null };

export interface Cell {
  text: string;
  value: BoundValue | null;
  origin: string;
  materialized: boolean;
}

export interface SheetState {
  name: string;
  rows: Map<number, Header>;
  cols: Map<number, Header>;
  cells: Map<string, Cell>; // "r,c"
}

interface LitEntry {
  lexical: string;
  language: string | null;
}

/** Raised when an event cannot be applied; the client resyncs from a snapshot. */
export class StateSyncError extends Error {}

export function cellKey(row: number, col: number): string {
  return `${row},${col}`;
}

function labelKey(label: string, language: string | null): string {
  return `${language ?? ""}\u0000${label}`;
}

function litEq(a: LitEntry, b: LitEntry): boolean {
  return a.lexical === b.lexical && a.language === b.language;
}

/** Ordering used for a node's labels and comments: own-language first. */
function litCompare(language: string): (a: LitEntry, b: LitEntry) => number {
  return (a, b) => {
    const aOwn = a.language === language ? 0 : 1;
    const bOwn = b.language === language ? 0 : 1;
    if (aOwn !== bOwn) return aOwn - bOwn;
    const al = a.language ?? "";
    const bl = b.language ?? "";
    if (al !== bl) return al < bl ? -1 : 1;
    if (a.lexical !== b.lexical) return a.lexical < b.lexical ? -1 : 1;
    return 0;
  };
}

export class GridState {
  workbookId = "";
  language = "en";
  reuseByLabel = true;
  revision = 0;
  statements = 0;
  sheets: SheetState[] = [];

  private labels = new Map<string, LitEntry[]>(); // iri -> label literals
  private comments = new Map<string, LitEntry[]>(); // iri -> comment literals
  private byLabel = new Map<string, Set<string>>(); // (language, label) -> iris

  static fromSnapshot(snap: SnapshotJson): GridState {
    const state = new GridState();
    state.workbookId = snap.id;
    state.language = snap.language;
    state.reuseByLabel = snap.reuse_by_label;
    state.revision = snap.revision;
    state.statements = snap.statements;
    state.sheets = snap.sheets.map((sd) => ({
      name: sd.name,
      rows: readHeaders(sd.rows),
      cols: readHeaders(sd.cols),
      cells: readCells(sd.cells),
    }));
    for (const t of parseNtriples(snap.graph)) {
      if (t.o.kind !== "literal") continue;
      if (t.p === RDFS_LABEL) state.addLabel(t.s, t.o.value, t.o.language ?? null);
      else if (t.p === RDFS_COMMENT) state.addComment(t.s, t.o.value, t.o.language ?? null);
    }
    return state;
  }

  // ---------------------------------------------------------------- lookups

  /** Labels of a node, own-language entries first. */
  labelsOf(iri: string): string[] {
    const entries = [...(this.labels.get(iri) ?? [])].sort(litCompare(this.language));
    return entries.map((e) => e.lexical);
  }

  /** The comment shown for a node, preferring the workbook language. */
  commentOf(iri: string): string | null {
    const entries = [...(this.comments.get(iri) ?? [])].sort(litCompare(this.language));
    return entries.length ? entries[0].lexical : null;
  }

  /** IRIs carrying a label in the workbook language or untagged. */
  lookupLabel(label: string): Set<string> {
    const found = new Set(this.byLabel.get(labelKey(label, this.language)) ?? []);
    for (const iri of this.byLabel.get(labelKey(label, null)) ?? []) found.add(iri);
    return found;
  }

  sheet(index: number): SheetState {
    while (this.sheets.length <= index) {
      this.sheets.push({ name: "", rows: new Map(), cols: new Map(), cells: new Map() });
    }
    return this.sheets[index];
  }

  cellAt(sheet: number, row: number, col: number): Cell | undefined {
    return this.sheets[sheet]?.cells.get(cellKey(row, col));
  }

  // ---------------------------------------------------------------- reducer

  /** Apply one change event; its revision must be exactly the next one. */
  applyChange(ev: ChangeEventJson): void {
    if (ev.revision !== this.revision + 1) {
      throw new StateSyncError(
        `event revision ${ev.revision} does not follow local revision ${this.revision}`
      );
    }
    if (ev.kind === "edit") {
      if (!ev.edit) throw new StateSyncError("edit event carries no edit");
      this.applyEdit(ev.edit, ev.delta);
    }
    this.reconcile(ev.delta);
    this.statements += ev.delta.added.length - ev.delta.removed.length;
    this.revision = ev.revision;
  }

  private applyEdit(edit: EditJson, delta: DeltaJson): void {
    const minted = delta.minted.map((m) => ({ ...m, used: false }));
    const resolve = (label: string): [string, boolean] => {
      if (this.reuseByLabel) {
        const candidates = this.lookupLabel(label);
        if (candidates.size === 1) return [candidates.values().next().value!, false];
        if (candidates.size > 1) {
          throw new StateSyncError(`label "${label}" is ambiguous locally but not on the server`);
        }
      }
      const entry = minted.find((m) => !m.used && m.label === label);
      if (!entry) throw new StateSyncError(`no minted IRI recorded for label "${label}"`);
      entry.used = true;
      // mirror the engine registering the fresh label before later lookups
      this.addLabel(entry.iri, label, this.language);
      return [entry.iri, true];
    };

    switch (edit.op) {
      case "name_sheet": {
        this.sheet(edit.sheet).name = edit.name;
        return;
      }
      case "set_row_header":
        this.applyHeader(this.sheet(edit.sheet), "rows", edit.row, edit.text, resolve);
        return;
      case "set_column_header":
        this.applyHeader(this.sheet(edit.sheet), "cols", edit.col, edit.text, resolve);
        return;
      case "set_cell":
        this.applySetCell(this.sheet(edit.sheet), edit.row, edit.col, edit.text, resolve);
        return;
      case "paste_reference": {
        const sheet = this.sheet(edit.sheet);
        const key = cellKey(edit.row, edit.col);
        if (sheet.cells.has(key)) this.unmaterialize(sheet, key);
        const labels = this.labelsOf(edit.iri);
        const raw = labels.length ? labels[0] : edit.iri;
        sheet.cells.set(key, {
          text: raw,
          value: { kind: "resource", iri: edit.iri },
          origin: REFERENCED,
          materialized: false,
        });
        this.tryMaterialize(sheet, edit.row, edit.col, resolve);
        return;
      }
      case "set_comment":
        return; // comment triples land via delta reconciliation
    }
  }

  private applyHeader(
    sheet: SheetState,
    axis: "rows" | "cols",
    index: number,
    text: string,
    resolve: (label: string) => [string, boolean]
  ): void {
    const headers = sheet[axis];
    const existing = headers.get(index);
    const lineKeys = () => this.lineCells(sheet, axis, index);
    if (text === "") {
      if (!existing) return;
      for (const key of lineKeys()) this.unmaterialize(sheet, key);
      headers.delete(index);
      return;
    }
    if (existing && existing.text === text) return;
    if (existing && existing.node !== null && existing.origin === CREATED) {
      existing.text = text; // rename: the bound node keeps its identity
      return;
    }
    if (existing) {
      // rebinding a referenced header retracts this line's statements first
      for (const key of lineKeys()) this.unmaterialize(sheet, key);
    }
    const [node, created] = resolve(text);
    headers.set(index, { text, node, origin: created ? CREATED : REFERENCED });
    for (const key of lineKeys()) {
      const [r, c] = key.split(",").map(Number);
      this.tryMaterialize(sheet, r, c, resolve);
    }
  }

  private applySetCell(
    sheet: SheetState,
    row: number,
    col: number,
    text: string,
    resolve: (label: string) => [string, boolean]
  ): void {
    const key = cellKey(row, col);
    const existing = sheet.cells.get(key);
    if (text === "") {
      if (existing) {
        this.unmaterialize(sheet, key);
        sheet.cells.delete(key);
      }
      return;
    }
    if (existing && existing.text === text) return;
    if (existing && existing.value?.kind === "resource" && existing.origin === CREATED) {
      const intent = classifyCellInput(text, this.language);
      if (intent.kind === "label") {
        existing.text = text; // correcting the label renames the cell's resource
        return;
      }
    }
    if (existing) {
      this.unmaterialize(sheet, key);
      existing.text = text;
      existing.value = null;
      existing.origin = CREATED;
    } else {
      sheet.cells.set(key, { text, value: null, origin: CREATED, materialized: false });
    }
    this.tryMaterialize(sheet, row, col, resolve);
  }

  private lineCells(sheet: SheetState, axis: "rows" | "cols", index: number): string[] {
    const keys: [number, number][] = [];
    for (const key of sheet.cells.keys()) {
      const [r, c] = key.split(",").map(Number);
      if ((axis === "rows" ? r : c) === index) keys.push([r, c]);
    }
    keys.sort((a, b) => a[0] - b[0] || a[1] - b[1]);
    return keys.map(([r, c]) => cellKey(r, c));
  }

  private tryMaterialize(
    sheet: SheetState,
    row: number,
    col: number,
    resolve: (label: string) => [string, boolean]
  ): void {
    const cell = sheet.cells.get(cellKey(row, col));
    if (!cell || cell.materialized) return;
    const rowHeader = sheet.rows.get(row);
    const colHeader = sheet.cols.get(col);
    if (!rowHeader?.node || !colHeader?.node) return;
    if (cell.value === null) {
      const intent = classifyCellInput(cell.text, this.language);
      if (intent.kind === "label") {
        const [iri, created] = resolve(intent.label);
        cell.value = { kind: "resource", iri };
        cell.origin = created ? CREATED : REFERENCED;
      } else if (intent.kind === "direct") {
        cell.value = { kind: "direct", iri: intent.iri };
        cell.origin = REFERENCED;
      } else {
        cell.value = {
          kind: "literal",
          lexical: intent.lexical,
          datatype: intent.datatype,
          language: intent.language,
        };
        cell.origin = CREATED;
      }
    }
    cell.materialized = true;
  }

  private unmaterialize(sheet: SheetState, key: string): void {
    const cell = sheet.cells.get(key);
    if (cell?.materialized) cell.materialized = false;
  }

  // --------------------------------------------------------- label/comment maps

  private addLabel(iri: string, lexical: string, language: string | null): void {
    const list = this.labels.get(iri) ?? [];
    if (!list.some((e) => litEq(e, { lexical, language }))) {
      list.push({ lexical, language });
      this.labels.set(iri, list);
    }
    const key = labelKey(lexical, language);
    const bucket = this.byLabel.get(key) ?? new Set();
    bucket.add(iri);
    this.byLabel.set(key, bucket);
  }

  private removeLabel(iri: string, lexical: string, language: string | null): void {
    const list = this.labels.get(iri);
    if (list) {
      const next = list.filter((e) => !litEq(e, { lexical, language }));
      if (next.length) this.labels.set(iri, next);
      else this.labels.delete(iri);
    }
    const key = labelKey(lexical, language);
    const bucket = this.byLabel.get(key);
    if (bucket) {
      bucket.delete(iri);
      if (!bucket.size) this.byLabel.delete(key);
    }
  }

  private addComment(iri: string, lexical: string, language: string | null): void {
    const list = this.comments.get(iri) ?? [];
    if (!list.some((e) => litEq(e, { lexical, language }))) {
      list.push({ lexical, language });
      this.comments.set(iri, list);
    }
  }

  private removeComment(iri: string, lexical: string, language: string | null): void {
    const list = this.comments.get(iri);
    if (!list) return;
    const next = list.filter((e) => !litEq(e, { lexical, language }));
    if (next.length) this.comments.set(iri, next);
    else this.comments.delete(iri);
  }

  /** Fold the delta's label and comment triples into the lookup maps. */
  private reconcile(delta: DeltaJson): void {
    const fold = (t: TripleJson, removed: boolean) => {
      if (t.o.kind !== "literal") return;
      const language = t.o.language ?? null;
      if (t.p === RDFS_LABEL) {
        if (removed) this.removeLabel(t.s, t.o.value, language);
        else this.addLabel(t.s, t.o.value, language);
      } else if (t.p === RDFS_COMMENT) {
        if (removed) this.removeComment(t.s, t.o.value, language);
        else this.addComment(t.s, t.o.value, language);
      }
    };
    for (const t of delta.removed) fold(t, true);
    for (const t of delta.added) fold(t, false);
  }

  // ---------------------------------------------------------------- display

  /** What the grid shows for a cell: the quote is an affordance, never output. */
  static displayText(cell: Cell): string {
    if (cell.value?.kind === "literal") return cell.value.lexical;
    if (cell.text.startsWith("'")) return cell.text.slice(1);
    return cell.text;
  }

  /** Canonical serialization of everything the grid renders, for comparison. */
  signature(): string {
    const headerObj = (h: Header) => ({ text: h.text, node: h.node, origin: h.origin });
    const mapObj = <T, U>(m: Map<number, T>, f: (v: T) => U) => {
      const out: Record<string, U> = {};
      for (const k of [...m.keys()].sort((a, b) => a - b)) out[String(k)] = f(m.get(k)!);
      return out;
    };
    const cellsObj = (cells: Map<string, Cell>) => {
      const out: Record<string, Cell & { display: string }> = {};
      const keys = [...cells.keys()].sort((a, b) => {
        const [ar, ac] = a.split(",").map(Number);
        const [br, bc] = b.split(",").map(Number);
        return ar - br || ac - bc;
      });
      for (const k of keys) {
        const c = cells.get(k)!;
        out[k] = { ...c, display: GridState.displayText(c) };
      }
      return out;
    };
    const litsObj = (m: Map<string, LitEntry[]>) => {
      const out: Record<string, LitEntry[]> = {};
      for (const iri of [...m.keys()].sort()) {
        out[iri] = [...m.get(iri)!].sort(litCompare(this.language));
      }
      return out;
    };
    return JSON.stringify({
      revision: this.revision,
      statements: this.statements,
      sheets: this.sheets.map((s) => ({
        name: s.name,
        rows: mapObj(s.rows, headerObj),
        cols: mapObj(s.cols, headerObj),
        cells: cellsObj(s.cells),
      })),
      labels: litsObj(this.labels),
      comments: litsObj(this.comments),
    });
  }
}

function readHeaders(data: Record<string, HeaderJson>): Map<number, Header> {
  const out = new Map<number, Header>();
  for (const [k, h] of Object.entries(data)) {
    out.set(Number(k), { text: h.text, node: h.node, origin: h.origin });
  }
  return out;
}

function readCells(data: Record<string, CellJson>): Map<string, Cell> {
  const out = new Map<string, Cell>();
  for (const [k, c] of Object.entries(data)) {
    let value: BoundValue | null = null;
    if (c.value) {
      if (c.value.kind === "literal") {
        value = {
          kind: "literal",
          lexical: c.value.lexical,
          datatype: c.value.datatype,
          language: c.value.language,
        };
      } else {
        value = { kind: c.value.kind, iri: c.value.iri };
      }
    }
    out.set(k, { text: c.text, value, origin: c.origin, materialized: c.materialized });
  }
  return out;
}

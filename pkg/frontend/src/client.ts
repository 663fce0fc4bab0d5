/** Workbook client: one server connection, one grid state, one change feed.
 *
 * There is no optimistic local echo. Commits POST the edit and the grid
 * advances only through acknowledged change events, applied exactly once in
 * revision order. The POST response and the feed both deliver the same
 * event; whichever arrives while it is the next revision is applied, the
 * other copy is recognized as a duplicate and dropped. A revision gap or any
 * replay mismatch triggers a full resync from a fresh snapshot.
 */

import { AmbiguousLabelError, ApiClient } from "./api.js";
import { ChangeFeed } from "./sse.js";
import { GridState, StateSyncError, cellKey } from "./state.js";
import type { ChangeEventJson, DeltaJson, EditJson, SuggestionJson } from "./types.js";

export type CellAddress = { sheet: number; row: number; col: number };

export type CommitResult =
  | { status: "applied"; revision: number; delta: DeltaJson }
  | { status: "noop" }
  | { status: "busy" }
  | { status: "ambiguous"; label: string; candidates: string[] }
  | { status: "unsynced"; error: unknown };

/** Edit buffer content: plain text, or a resource picked from suggestions. */
export type BufferContent =
  | { kind: "text"; text: string }
  | { kind: "reference"; iri: string; label: string };

export type Clip = { kind: "reference"; iri: string } | { kind: "text"; text: string };

export interface ClientEvents {
  /** State changed (event applied, resync, or sync-status change); re-render. */
  onRender?(): void;
  /** An event was applied; fires once per revision in order. */
  onApplied?(ev: ChangeEventJson): void;
}

interface LastChange {
  actor: string | null;
  addresses: Set<string>;
}

export class WorkbookClient {
  state: GridState;
  readonly feed: ChangeFeed;
  /** Addresses whose last commit failed to reach the server, with retry thunks. */
  readonly unsynced = new Map<string, () => Promise<CommitResult>>();
  lastChange: LastChange = { actor: null, addresses: new Set() };

  private inFlight = new Set<string>();
  private pendingEvents: ChangeEventJson[] = [];
  private resyncing = false;

  private constructor(
    readonly api: ApiClient,
    readonly workbookId: string,
    state: GridState,
    private events: ClientEvents
  ) {
    this.state = state;
    this.feed = new ChangeFeed(
      api.baseUrl,
      workbookId,
      () => this.state.revision,
      {
        onEvent: (ev) => this.receive(ev),
        onResync: () => this.resync(),
      },
      (...args) => fetch(...args)
    );
  }

  /** Load the workbook snapshot and start following its change feed. */
  static async open(
    api: ApiClient,
    workbookId: string,
    events: ClientEvents = {},
    follow = true
  ): Promise<WorkbookClient> {
    const snapshot = await api.getSnapshot(workbookId);
    const client = new WorkbookClient(api, workbookId, GridState.fromSnapshot(snapshot), events);
    if (follow) client.feed.start();
    return client;
  }

  close(): void {
    this.feed.stop();
  }

  get actor(): string | null {
    return this.api.actor ?? null;
  }

  // ------------------------------------------------------------------ commits

  async commitCellEdit(addr: CellAddress, content: BufferContent): Promise<CommitResult> {
    const key = `c:${addr.sheet}:${cellKey(addr.row, addr.col)}`;
    if (content.kind === "reference") {
      return this.post(
        { op: "paste_reference", sheet: addr.sheet, row: addr.row, col: addr.col, iri: content.iri },
        key
      );
    }
    const existing = this.state.cellAt(addr.sheet, addr.row, addr.col);
    if (content.text === "" && !existing) return { status: "noop" };
    if (existing && existing.text === content.text) return { status: "noop" };
    return this.post(
      { op: "set_cell", sheet: addr.sheet, row: addr.row, col: addr.col, text: content.text },
      key
    );
  }

  async commitRowHeader(sheet: number, row: number, text: string): Promise<CommitResult> {
    const existing = this.state.sheets[sheet]?.rows.get(row);
    if (text === "" && !existing) return { status: "noop" };
    if (existing && existing.text === text) return { status: "noop" };
    return this.post({ op: "set_row_header", sheet, row, text }, `h:r:${sheet}:${row}`);
  }

  async commitColumnHeader(sheet: number, col: number, text: string): Promise<CommitResult> {
    const existing = this.state.sheets[sheet]?.cols.get(col);
    if (text === "" && !existing) return { status: "noop" };
    if (existing && existing.text === text) return { status: "noop" };
    return this.post({ op: "set_column_header", sheet, col, text }, `h:c:${sheet}:${col}`);
  }

  async nameSheet(sheet: number, name: string): Promise<CommitResult> {
    if ((this.state.sheets[sheet]?.name ?? "") === name) return { status: "noop" };
    return this.post({ op: "name_sheet", sheet, name }, `sheet:${sheet}`);
  }

  async setComment(iri: string, text: string): Promise<CommitResult> {
    if ((this.state.commentOf(iri) ?? "") === text) return { status: "noop" };
    return this.post({ op: "set_comment", iri, text }, `comment:${iri}`);
  }

  /** Resolve an ambiguous label commit by pasting the chosen resource. */
  async resolveAmbiguity(addr: CellAddress, iri: string): Promise<CommitResult> {
    return this.commitCellEdit(addr, { kind: "reference", iri, label: "" });
  }

  async fetchSuggestions(prefix: string, limit = 10): Promise<SuggestionJson[]> {
    if (!prefix) return [];
    return this.api.suggest(this.workbookId, prefix, limit);
  }

  /** Copy a cell: bound resources travel by IRI, everything else as text. */
  copyCell(addr: CellAddress): Clip | null {
    const cell = this.state.cellAt(addr.sheet, addr.row, addr.col);
    if (!cell) return null;
    if (cell.value?.kind === "resource" || cell.value?.kind === "direct") {
      return { kind: "reference", iri: cell.value.iri };
    }
    return { kind: "text", text: cell.text };
  }

  async pasteClip(addr: CellAddress, clip: Clip): Promise<CommitResult> {
    if (clip.kind === "reference") {
      return this.commitCellEdit(addr, { kind: "reference", iri: clip.iri, label: "" });
    }
    return this.commitCellEdit(addr, { kind: "text", text: clip.text });
  }

  async retryUnsynced(addrKey: string): Promise<CommitResult> {
    const thunk = this.unsynced.get(addrKey);
    if (!thunk) return { status: "noop" };
    return thunk();
  }

  // ------------------------------------------------------------------ plumbing

  private async post(edit: EditJson, key: string): Promise<CommitResult> {
    if (this.inFlight.has(key)) return { status: "busy" };
    this.inFlight.add(key);
    try {
      const receipt = await this.api.postEdit(this.workbookId, edit);
      this.unsynced.delete(key);
      this.receive({
        revision: receipt.revision,
        kind: "edit",
        actor: this.actor,
        ts: 0,
        edit,
        delta: receipt.delta,
      });
      return { status: "applied", revision: receipt.revision, delta: receipt.delta };
    } catch (error) {
      if (error instanceof AmbiguousLabelError) {
        return { status: "ambiguous", label: error.label, candidates: error.candidates };
      }
      if (isNetworkError(error)) {
        this.unsynced.set(key, () => this.post(edit, key));
        this.events.onRender?.();
        return { status: "unsynced", error };
      }
      throw error;
    } finally {
      this.inFlight.delete(key);
    }
  }

  /** Exactly-once, in-order application gate shared by feed and POST echo. */
  private receive(ev: ChangeEventJson): void {
    if (this.resyncing) {
      this.pendingEvents.push(ev);
      return;
    }
    if (ev.revision <= this.state.revision) return; // duplicate delivery
    if (ev.revision > this.state.revision + 1) {
      void this.resync(); // gap: this subscriber missed events
      return;
    }
    try {
      this.state.applyChange(ev);
    } catch (error) {
      if (error instanceof StateSyncError) {
        void this.resync();
        return;
      }
      throw error;
    }
    this.lastChange = { actor: ev.actor, addresses: changedAddresses(ev) };
    this.events.onApplied?.(ev);
    this.events.onRender?.();
  }

  /** Reload the full snapshot; queued feed events are replayed on top. */
  async resync(): Promise<void> {
    if (this.resyncing) return;
    this.resyncing = true;
    try {
      const snapshot = await this.api.getSnapshot(this.workbookId);
      this.state = GridState.fromSnapshot(snapshot);
    } finally {
      this.resyncing = false;
    }
    const queued = this.pendingEvents.sort((a, b) => a.revision - b.revision);
    this.pendingEvents = [];
    for (const ev of queued) this.receive(ev);
    this.events.onRender?.();
  }
}

/** Grid addresses an event touched, for the remote-edit highlight. */
function changedAddresses(ev: ChangeEventJson): Set<string> {
  const out = new Set<string>();
  const edit = ev.edit;
  if (!edit) return out;
  switch (edit.op) {
    case "name_sheet":
      out.add(`sheet:${edit.sheet}`);
      break;
    case "set_row_header":
      out.add(`h:r:${edit.sheet}:${edit.row}`);
      break;
    case "set_column_header":
      out.add(`h:c:${edit.sheet}:${edit.col}`);
      break;
    case "set_cell":
    case "paste_reference":
      out.add(`c:${edit.sheet}:${cellKey(edit.row, edit.col)}`);
      break;
    case "set_comment":
      out.add(`comment:${edit.iri}`);
      break;
  }
  return out;
}

function isNetworkError(error: unknown): boolean {
  if (error instanceof TypeError) return true; // fetch rejects network failures this way
  return error instanceof Error && /fetch failed|network|ECONNREFUSED|aborted/i.test(error.message);
}

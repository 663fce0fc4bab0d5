/** Server-sent-events plumbing for the change feed.
 *
 * SseParser turns a byte/text stream into frames without caring how the
 * transport chunked it. ChangeFeed owns one subscription: it connects with
 * fetch, reconnects with backoff after transport errors, and defers to its
 * handlers when the server says the subscriber is too far behind (a resync
 * event or HTTP 410), which require a fresh snapshot rather than a retry.
 */

import type { ChangeEventJson } from "./types.js";

export type SseFrame =
  | { type: "event"; event: string; data: string }
  | { type: "comment"; text: string };

export class SseParser {
  private buffer = "";

  /** Feed one transport chunk; returns every frame it completed. */
  push(chunk: string): SseFrame[] {
    this.buffer += chunk;
    const frames: SseFrame[] = [];
    let at: number;
    while ((at = this.buffer.indexOf("\n\n")) !== -1) {
      const block = this.buffer.slice(0, at);
      this.buffer = this.buffer.slice(at + 2);
      const frame = parseBlock(block);
      if (frame) frames.push(frame);
    }
    return frames;
  }
}

function parseBlock(block: string): SseFrame | null {
  let event = "";
  const data: string[] = [];
  let comment: string | null = null;
  for (const line of block.split("\n")) {
    if (line.startsWith(":")) {
      comment = line.slice(1);
    } else if (line.startsWith("event:")) {
      event = stripField(line, 6);
    } else if (line.startsWith("data:")) {
      data.push(stripField(line, 5));
    }
    // other fields (id, retry) are not used by this protocol
  }
  if (data.length) return { type: "event", event, data: data.join("\n") };
  if (comment !== null) return { type: "comment", text: comment };
  return null;
}

function stripField(line: string, prefix: number): string {
  const rest = line.slice(prefix);
  return rest.startsWith(" ") ? rest.slice(1) : rest;
}

export interface FeedHandlers {
  /** One change event, in stream order. */
  onEvent(ev: ChangeEventJson): void;
  /** Subscriber fell behind or asked for dropped history; reload a snapshot,
   * after which the feed reconnects from the provider's new revision. */
  onResync(resume: number): Promise<void> | void;
  onComment?(): void;
  onStatus?(status: "connected" | "disconnected" | "stopped"): void;
}

const BACKOFF_START_MS = 250;
const BACKOFF_CAP_MS = 4000;

export class ChangeFeed {
  private controller: AbortController | null = null;
  private running = false;
  private generation = 0;
  private fetchImpl: typeof fetch;

  constructor(
    private baseUrl: string,
    private workbookId: string,
    private sinceProvider: () => number,
    private handlers: FeedHandlers,
    fetchImpl?: typeof fetch
  ) {
    this.fetchImpl = fetchImpl ?? ((...args) => fetch(...args));
  }

  start(): void {
    if (this.running) return;
    this.running = true;
    void this.loop(++this.generation);
  }

  stop(): void {
    this.running = false;
    this.controller?.abort();
    this.controller = null;
  }

  get active(): boolean {
    return this.running;
  }

  private async loop(gen: number): Promise<void> {
    let backoff = BACKOFF_START_MS;
    // the generation guard keeps a superseded loop from reconnecting after
    // a stop/start pair restarted the feed underneath it
    while (this.running && gen === this.generation) {
      try {
        const outcome = await this.connectOnce();
        backoff = BACKOFF_START_MS;
        if (outcome === "resync") continue; // handler reloaded; reconnect now
      } catch {
        if (!this.running || gen !== this.generation) break;
        this.handlers.onStatus?.("disconnected");
        await sleep(backoff);
        backoff = Math.min(backoff * 2, BACKOFF_CAP_MS);
      }
    }
    this.handlers.onStatus?.("stopped");
  }

  /** One subscription until the stream ends; "resync" means state was reloaded. */
  private async connectOnce(): Promise<"ended" | "resync"> {
    const since = this.sinceProvider();
    this.controller = new AbortController();
    const url = `${this.baseUrl}/workbooks/${this.workbookId}/changes?since=${since}`;
    const response = await this.fetchImpl(url, {
      headers: { Accept: "text/event-stream" },
      signal: this.controller.signal,
    });
    if (response.status === 410) {
      const body = await response.json().catch(() => ({}));
      await this.handlers.onResync(Number(body.resume ?? since));
      return "resync";
    }
    if (!response.ok || !response.body) {
      throw new Error(`feed subscription failed: ${response.status}`);
    }
    this.handlers.onStatus?.("connected");
    const reader = response.body.getReader();
    const decoder = new TextDecoder();
    const parser = new SseParser();
    try {
      for (;;) {
        const { done, value } = await reader.read();
        if (done) break;
        for (const frame of parser.push(decoder.decode(value, { stream: true }))) {
          if (frame.type === "comment") {
            this.handlers.onComment?.();
          } else if (frame.event === "resync") {
            const resume = Number(JSON.parse(frame.data).resume);
            this.controller?.abort();
            await this.handlers.onResync(resume);
            return "resync";
          } else {
            this.handlers.onEvent(JSON.parse(frame.data) as ChangeEventJson);
          }
        }
      }
    } finally {
      reader.releaseLock();
    }
    return "ended";
  }
}

function sleep(ms: number): Promise<void> {
  return new Promise((resolve) => setTimeout(resolve, ms));
}

/** Shared helpers: fixture access, canned fetch stubs, and a real-server harness. */

import { type ChildProcess, spawn } from "node:child_process";
import { readFileSync } from "node:fs";
import { mkdtempSync, rmSync } from "node:fs";
import { createServer } from "node:net";
import { tmpdir } from "node:os";
import { dirname, join } from "node:path";
import { fileURLToPath } from "node:url";

import { ApiClient } from "../src/api.js";
import { WorkbookClient, type ClientEvents } from "../src/client.js";
import type { ChangeEventJson, SnapshotJson } from "../src/types.js";

export interface Fixture {
  initial: SnapshotJson;
  events: ChangeEventJson[];
  final: SnapshotJson;
}

const here = dirname(fileURLToPath(import.meta.url));

export function loadFixture(): Fixture {
  return JSON.parse(readFileSync(join(here, "fixtures/events.json"), "utf-8"));
}

export function jsonResponse(data: unknown, status = 200): Response {
  return new Response(JSON.stringify(data), {
    status,
    headers: { "Content-Type": "application/json" },
  });
}

export type RouteHandler = (
  method: string,
  url: string,
  body: unknown
) => Response | Promise<Response>;

/** fetch stand-in that forwards every request to one handler. */
export function stubFetch(handler: RouteHandler): typeof fetch {
  return (async (input: RequestInfo | URL, init?: RequestInit) => {
    const url = String(input);
    const method = init?.method ?? "GET";
    const body = init?.body ? JSON.parse(String(init.body)) : undefined;
    return handler(method, url, body);
  }) as typeof fetch;
}

/** A client seeded from the fixture's initial snapshot, no live feed. */
export async function openFixtureClient(
  fixture: Fixture,
  upto: number,
  handler?: RouteHandler,
  events: ClientEvents = {}
): Promise<WorkbookClient> {
  const fetchImpl = stubFetch(async (method, url, body) => {
    if (method === "GET" && url.endsWith(`/workbooks/${fixture.initial.id}`)) {
      return jsonResponse(fixture.initial);
    }
    if (handler) return handler(method, url, body);
    if (method === "GET" && url.includes("/suggest?")) {
      return jsonResponse({ suggestions: [] });
    }
    throw new Error(`unexpected request: ${method} ${url}`);
  });
  const api = new ApiClient("http://stub", "tester", fetchImpl);
  const client = await WorkbookClient.open(api, fixture.initial.id, events, false);
  for (const ev of fixture.events.slice(0, upto)) {
    deliver(client, ev);
  }
  return client;
}

/** Push a change event through the client's feed path. */
export function deliver(client: WorkbookClient, ev: ChangeEventJson): void {
  (client as unknown as { receive(ev: ChangeEventJson): void }).receive(ev);
}

// --------------------------------------------------------------- real server

export interface ServerHandle {
  base: string;
  stop(): Promise<void>;
  /** Stop the process and bring it back on the same port and data directory. */
  restart(): Promise<void>;
}

function freePort(): Promise<number> {
  return new Promise((resolve, reject) => {
    const srv = createServer();
    srv.listen(0, "127.0.0.1", () => {
      const address = srv.address();
      if (address && typeof address === "object") {
        const port = address.port;
        srv.close(() => resolve(port));
      } else {
        srv.close(() => reject(new Error("no port assigned")));
      }
    });
  });
}

function launch(port: number, dataDir: string): ChildProcess {
  return spawn(
    "python3",
    ["-m", "rdfsheet", "serve", "--addr", `127.0.0.1:${port}`, "--data-dir", dataDir],
    { stdio: ["ignore", "pipe", "pipe"] }
  );
}

async function awaitHealthy(child: ChildProcess, base: string): Promise<void> {
  const stderr: string[] = [];
  child.stderr?.on("data", (chunk) => stderr.push(String(chunk)));
  const deadline = Date.now() + 30_000;
  for (;;) {
    if (child.exitCode !== null) {
      throw new Error(`server exited early: ${stderr.join("")}`);
    }
    try {
      const res = await fetch(`${base}/health`);
      if (res.ok) return;
    } catch {
      // not up yet
    }
    if (Date.now() > deadline) {
      child.kill("SIGKILL");
      throw new Error(`server did not come up: ${stderr.join("")}`);
    }
    await sleep(100);
  }
}

function terminate(child: ChildProcess): Promise<void> {
  child.kill("SIGTERM");
  return new Promise<void>((resolve) => {
    const timer = setTimeout(() => {
      child.kill("SIGKILL");
      resolve();
    }, 5000);
    child.once("exit", () => {
      clearTimeout(timer);
      resolve();
    });
  });
}

/** Start the workbook server in a scratch directory and wait until healthy. */
export async function startServer(): Promise<ServerHandle> {
  const port = await freePort();
  const dataDir = mkdtempSync(join(tmpdir(), "rdfsheet-web-"));
  const base = `http://127.0.0.1:${port}`;
  let child = launch(port, dataDir);
  await awaitHealthy(child, base);
  return {
    base,
    stop: async () => {
      await terminate(child);
      rmSync(dataDir, { recursive: true, force: true });
    },
    restart: async () => {
      await terminate(child);
      child = launch(port, dataDir);
      await awaitHealthy(child, base);
    },
  };
}

export function sleep(ms: number): Promise<void> {
  return new Promise((resolve) => setTimeout(resolve, ms));
}

export async function waitFor(
  predicate: () => boolean,
  timeoutMs = 20_000,
  what = "condition"
): Promise<void> {
  const deadline = Date.now() + timeoutMs;
  while (!predicate()) {
    if (Date.now() > deadline) throw new Error(`timed out waiting for ${what}`);
    await sleep(10);
  }
}

/** Deterministic PRNG so the randomized session is reproducible. */
export function mulberry32(seed: number): () => number {
  let a = seed >>> 0;
  return () => {
    a |= 0;
    a = (a + 0x6d2b79f5) | 0;
    let t = Math.imul(a ^ (a >>> 15), 1 | a);
    t = (t + Math.imul(t ^ (t >>> 7), 61 | t)) ^ t;
    return ((t ^ (t >>> 14)) >>> 0) / 4294967296;
  };
}

export function pick<T>(rng: () => number, items: readonly T[]): T {
  return items[Math.floor(rng() * items.length)];
}

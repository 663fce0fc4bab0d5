/** Typed HTTP client for the workbook server. */

import type {
  EditJson,
  EditReceipt,
  ImportReceipt,
  SnapshotJson,
  SuggestionJson,
} from "./types.js";

export class ApiError extends Error {
  constructor(
    message: string,
    readonly status: number,
    readonly code: string,
    readonly body: Record<string, unknown> = {}
  ) {
    super(message);
  }
}

/** The label matches more than one resource; the caller must pick one. */
export class AmbiguousLabelError extends ApiError {
  readonly label: string;
  readonly language: string;
  readonly candidates: string[];

  constructor(status: number, body: Record<string, unknown>) {
    super(`label ${JSON.stringify(body.label)} is ambiguous`, status, "ambiguous_label", body);
    this.label = String(body.label ?? "");
    this.language = String(body.language ?? "");
    this.candidates = Array.isArray(body.candidates) ? body.candidates.map(String) : [];
  }
}

export interface WorkbookConfig {
  language?: string;
  reuse_by_label?: boolean;
  generated_ns?: string;
}

export class ApiClient {
  private fetchImpl: typeof fetch;

  constructor(
    readonly baseUrl: string,
    readonly actor?: string,
    fetchImpl?: typeof fetch
  ) {
    this.baseUrl = baseUrl.replace(/\/+$/, "");
    this.fetchImpl = fetchImpl ?? ((...args) => fetch(...args));
  }

  async createWorkbook(config: WorkbookConfig = {}): Promise<{ id: string; revision: number }> {
    return this.request("POST", "/workbooks", config);
  }

  async listWorkbooks(): Promise<{ id: string; revision: number }[]> {
    const body = await this.request<{ workbooks: { id: string; revision: number }[] }>(
      "GET",
      "/workbooks"
    );
    return body.workbooks;
  }

  async getSnapshot(workbookId: string): Promise<SnapshotJson> {
    return this.request("GET", `/workbooks/${workbookId}`);
  }

  /** Apply one edit; throws AmbiguousLabelError on a 409. */
  async postEdit(workbookId: string, edit: EditJson): Promise<EditReceipt> {
    return this.request("POST", `/workbooks/${workbookId}/edits`, edit);
  }

  async suggest(workbookId: string, q: string, limit = 10): Promise<SuggestionJson[]> {
    const params = new URLSearchParams({ q, limit: String(limit) });
    const body = await this.request<{ suggestions: SuggestionJson[] }>(
      "GET",
      `/workbooks/${workbookId}/suggest?${params}`
    );
    return body.suggestions;
  }

  async exportGraph(
    workbookId: string,
    format: "ntriples" | "turtle" = "ntriples"
  ): Promise<{ text: string; revision: number }> {
    const url = `${this.baseUrl}/workbooks/${workbookId}/export?format=${format}`;
    const response = await this.fetchImpl(url, { headers: this.headers() });
    if (!response.ok) throw await toApiError(response);
    return {
      text: await response.text(),
      revision: Number(response.headers.get("X-Workbook-Revision") ?? -1),
    };
  }

  async importDocument(
    workbookId: string,
    document: string,
    format: "ntriples" | "turtle" = "ntriples"
  ): Promise<ImportReceipt> {
    return this.request("POST", `/workbooks/${workbookId}/import`, { document, format });
  }

  private headers(json = false): Record<string, string> {
    const out: Record<string, string> = {};
    if (json) out["Content-Type"] = "application/json";
    if (this.actor) out["X-Actor-Id"] = this.actor;
    return out;
  }

  private async request<T>(method: string, path: string, body?: unknown): Promise<T> {
    const response = await this.fetchImpl(`${this.baseUrl}${path}`, {
      method,
      headers: this.headers(body !== undefined),
      body: body !== undefined ? JSON.stringify(body) : undefined,
    });
    if (!response.ok) throw await toApiError(response);
    return (await response.json()) as T;
  }
}

async function toApiError(response: Response): Promise<ApiError> {
  let body: Record<string, unknown> = {};
  try {
    body = (await response.json()) as Record<string, unknown>;
  } catch {
    // non-JSON error body; keep the status
  }
  const code = typeof body.error === "string" ? body.error : "http_error";
  if (code === "ambiguous_label") return new AmbiguousLabelError(response.status, body);
  const detail = typeof body.detail === "string" ? `: ${body.detail}` : "";
  return new ApiError(`${code} (${response.status})${detail}`, response.status, code, body);
}

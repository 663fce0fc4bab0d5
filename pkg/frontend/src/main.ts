/** Browser entry point: join (or create) a workbook and mount the grid.
 *
 * Query parameters:
 *   server    base URL of the workbook server (default: same origin)
 *   workbook  workbook id to open (default: create a new one)
 *   actor     name sent with edits, shown to other collaborators
 */

import { ApiClient } from "./api.js";
import { WorkbookClient } from "./client.js";
import { GridView } from "./ui.js";

async function boot(): Promise<void> {
  const params = new URLSearchParams(window.location.search);
  const server = params.get("server") ?? window.location.origin;
  const actor = params.get("actor") ?? `user-${Math.random().toString(36).slice(2, 8)}`;
  const api = new ApiClient(server, actor);

  let workbookId = params.get("workbook");
  if (!workbookId) {
    const created = await api.createWorkbook();
    workbookId = created.id;
    params.set("workbook", workbookId);
    history.replaceState(null, "", `?${params}`);
  }

  const root = document.getElementById("app");
  if (!root) throw new Error("missing #app container");

  let view: GridView | null = null;
  const client = await WorkbookClient.open(api, workbookId, {
    onRender: () => view?.render(),
  });
  view = new GridView(root, client);

  window.addEventListener("keydown", (e) => {
    if ((e.ctrlKey || e.metaKey) && e.key === "c") view?.copySelection();
    if ((e.ctrlKey || e.metaKey) && e.key === "v") void view?.pasteSelection();
  });
}

if (typeof document !== "undefined") {
  void boot().catch((error) => {
    console.error(error);
    const root = document.getElementById("app");
    if (root) root.textContent = `failed to open workbook: ${error}`;
  });
}

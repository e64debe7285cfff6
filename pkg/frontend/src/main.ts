import { ApiClient } from "./api.js";
import { SessionController } from "./session.js";
import { mount } from "./ui.js";

async function boot(): Promise<void> {
  const root = document.getElementById("app");
  if (!root) throw new Error("missing #app element");
  const base = (window as { LPA_SERVER?: string }).LPA_SERVER ?? "http://127.0.0.1:8642";
  const api = new ApiClient(base);
  const controller = new SessionController(api);
  try {
    const { seeds } = await api.listSeeds();
    mount(root, controller, seeds);
  } catch (err) {
    root.textContent = `cannot reach the seed server at ${base}: ${String(err)}`;
  }
}

document.addEventListener("DOMContentLoaded", () => {
  void boot();
});

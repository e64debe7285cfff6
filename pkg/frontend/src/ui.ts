// DOM rendering for the mutation explorer.  Every displayed algebra string
// comes verbatim from the server; this layer only builds elements.

import { SessionController } from "./session.js";

function el<K extends keyof HTMLElementTagNameMap>(
  tag: K,
  className?: string,
  text?: string,
): HTMLElementTagNameMap[K] {
  const node = document.createElement(tag);
  if (className) node.className = className;
  if (text !== undefined) node.textContent = text;
  return node;
}

export function mount(root: HTMLElement, controller: SessionController, seeds: string[]): void {
  const picker = el("div", "picker");
  const status = el("div", "status");
  const error = el("div", "error");
  const panel = el("div", "panel");
  const controls = el("div", "controls");
  const exportBox = el("pre", "export");
  root.append(picker, status, error, panel, controls, exportBox);

  const pickerButtons: HTMLButtonElement[] = [];
  for (const name of seeds) {
    const button = el("button", "seed-button", name);
    button.addEventListener("click", () => {
      controller.start(name).catch(() => undefined);
    });
    pickerButtons.push(button);
    picker.append(button);
  }

  const undoButton = el("button", "undo", "undo");
  undoButton.addEventListener("click", () => {
    controller.undo().catch(() => undefined);
  });
  const exportButton = el("button", "export-path", "export path");
  exportButton.addEventListener("click", () => {
    exportBox.textContent = controller.exportPath();
  });
  controls.append(undoButton, exportButton);

  controller.subscribe(() => render());

  function render(): void {
    const state = controller.state;
    error.textContent = controller.error ?? "";
    for (const button of pickerButtons) button.disabled = controller.busy;
    undoButton.disabled = !controller.canUndo;
    exportButton.disabled = state === null;
    panel.replaceChildren();
    if (!state) {
      status.textContent = "pick a seed to start a session";
      return;
    }
    const orbit = state.seed.orbit ? ` — orbit ${state.seed.orbit}` : "";
    status.textContent =
      `${state.seedName}: rank ${state.seed.rank}${orbit}` +
      ` — path [${state.path.join(", ")}]`;
    state.seed.cluster.forEach((clusterText, k) => {
      const row = el("div", "slot");
      const name = state.seed.cluster_names?.[k];
      const mutateButton = el("button", "mutate", `mutate ${k + 1}`);
      mutateButton.disabled = controller.busy;
      mutateButton.addEventListener("click", () => {
        controller.mutateAt(k + 1).catch(() => undefined);
      });
      row.append(
        mutateButton,
        el("span", "variable", name ? `${name} = ${clusterText}` : clusterText),
        el("span", "exchange", `exchange: ${state.seed.exchange[k]}`),
        el("span", "hat", `denominator: ${state.seed.hat_denominators[k]}`),
      );
      panel.append(row);
    });
  }

  render();
}

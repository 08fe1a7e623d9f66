import { forceLayout } from "./layout.js";
import { SessionStore } from "./state.js";
import { AnarchyBody, SolveResponse, WhatIfBody } from "./types.js";

const SVG_NS = "http://www.w3.org/2000/svg";
const PANE_W = 360;
const PANE_H = 300;

export type ConfirmFn = (message: string) => boolean;

export function percent(ratio: number | null): string {
  return ratio === null ? "n/a" : `${Math.round(ratio * 100)}%`;
}

function el<K extends keyof HTMLElementTagNameMap>(
  tag: K,
  cls?: string,
  text?: string,
): HTMLElementTagNameMap[K] {
  const node = document.createElement(tag);
  if (cls) node.className = cls;
  if (text !== undefined) node.textContent = text;
  return node;
}

function svgEl(tag: string): SVGElement {
  return document.createElementNS(SVG_NS, tag) as SVGElement;
}

function graphPane(
  store: SessionStore,
  title: string,
  kind: "worst" | "best",
  solve: SolveResponse,
  interactive: boolean,
  confirmFn: ConfirmFn,
): HTMLElement {
  const pane = el("section", "pane");
  pane.dataset.pane = kind;
  pane.appendChild(el("h3", undefined, title));
  pane.appendChild(
    el("p", "pane-value", `communal value ${solve.communal_value}`),
  );
  const svg = svgEl("svg");
  svg.setAttribute("viewBox", `0 0 ${PANE_W} ${PANE_H}`);
  svg.setAttribute("width", String(PANE_W));
  svg.setAttribute("height", String(PANE_H));

  const n = solve.graph.n;
  const pos = forceLayout(n, solve.graph.edges, PANE_W, PANE_H);
  for (const [a, b] of solve.graph.edges) {
    const line = svgEl("line");
    line.setAttribute("x1", pos[a].x.toFixed(1));
    line.setAttribute("y1", pos[a].y.toFixed(1));
    line.setAttribute("x2", pos[b].x.toFixed(1));
    line.setAttribute("y2", pos[b].y.toFixed(1));
    line.setAttribute("class", "edge");
    svg.appendChild(line);
  }
  const rows = store.view?.summary.rows ?? [];
  for (let v = 0; v < n; v++) {
    const group = svgEl("g");
    group.setAttribute("class", "vertex");
    (group as unknown as HTMLElement).dataset.vertex = String(v);
    const circle = svgEl("circle");
    circle.setAttribute("cx", pos[v].x.toFixed(1));
    circle.setAttribute("cy", pos[v].y.toFixed(1));
    circle.setAttribute("r", "12");
    const label = svgEl("text");
    label.setAttribute("x", pos[v].x.toFixed(1));
    label.setAttribute("y", (pos[v].y + 4).toFixed(1));
    label.setAttribute("text-anchor", "middle");
    label.textContent = store.label(v);
    if (interactive && rows[v]) {
      const row = rows[v];
      const tip = svgEl("title");
      tip.textContent =
        `vertex ${store.label(v)}: degree ${row.degree}, ` +
        `centrality ${row.eig_centrality.toFixed(4)}, ` +
        `utility change ${row.communal_utility_change}`;
      group.appendChild(tip);
      group.addEventListener("click", () => {
        const ok = confirmFn(
          `Remove vertex ${store.label(v)} from the network?`,
        );
        if (ok) void store.removeVertex(v);
      });
    }
    group.appendChild(circle);
    group.appendChild(label);
    svg.appendChild(group);
  }
  pane.appendChild(svg);
  return pane;
}

function anarchyLine(report: AnarchyBody): string {
  return `stable ${report.worst_stable_value} / best ${report.best_value}` +
    ` / ratio ${percent(report.poa_ratio)}`;
}

function deltaPanel(store: SessionStore): HTMLElement {
  const panel = el("aside", "panel");
  panel.id = "delta-panel";
  const last = store.lastWhatIf;
  if (!last) {
    panel.appendChild(el("p", "hint",
      "Click a vertex in the worst graph to explore its removal."));
    return panel;
  }
  const before = last.report_before;
  const after = last.report_after;
  panel.appendChild(el("h3", undefined,
    `Removed vertex ${store.lastRemovedLabel ?? last.removed}`));
  panel.appendChild(el("p", "delta-stable",
    `stable ${before.worst_stable_value} → ${after.worst_stable_value}`));
  panel.appendChild(el("p", "delta-best",
    `best ${before.best_value} → ${after.best_value}`));
  panel.appendChild(el("p", "delta-ratio",
    `ratio ${percent(before.poa_ratio)} → ${percent(after.poa_ratio)}`));
  panel.appendChild(el("p", "delta-du",
    `communal utility change ${last.communal_utility_change}`));
  panel.appendChild(el("p", "delta-vertex",
    `degree ${last.degree}, centrality ${last.eig_centrality.toFixed(4)}`));
  return panel;
}

function paretoScatter(store: SessionStore): HTMLElement {
  const box = el("section", "pane");
  box.id = "pareto";
  box.appendChild(el("h3", undefined, "Pareto view"));
  box.appendChild(el("p", "hint",
    "utility damage (x) vs price-of-anarchy increase (y); undominated targets highlighted"));
  const view = store.view;
  if (!view) return box;
  const rows = view.summary.rows;
  const pareto = new Set(view.summary.pareto);
  const svg = svgEl("svg");
  svg.setAttribute("viewBox", `0 0 ${PANE_W} ${PANE_H}`);
  svg.setAttribute("width", String(PANE_W));
  svg.setAttribute("height", String(PANE_H));
  const xs = rows.map((r) => r.communal_utility_change);
  const ys = rows.map((r) => r.delta_poa_ratio ?? 0);
  const xMax = Math.max(...xs, 1);
  const yMin = Math.min(...ys, 0);
  const yMax = Math.max(...ys, 0.001);
  for (const row of rows) {
    const x = 20 + (row.communal_utility_change / xMax) * (PANE_W - 40);
    const yVal = row.delta_poa_ratio ?? 0;
    const y = PANE_H - 20 - ((yVal - yMin) / (yMax - yMin)) * (PANE_H - 40);
    const dot = svgEl("circle");
    dot.setAttribute("cx", x.toFixed(1));
    dot.setAttribute("cy", y.toFixed(1));
    dot.setAttribute("r", "6");
    dot.setAttribute(
      "class",
      pareto.has(row.removed) ? "pareto-point undominated" : "pareto-point",
    );
    (dot as unknown as HTMLElement).dataset.vertex = String(row.removed);
    const tip = svgEl("title");
    tip.textContent = `vertex ${store.label(row.removed)}: ` +
      `utility change ${row.communal_utility_change}, ` +
      `poa diff ${row.delta_poa_ratio ?? "n/a"}`;
    dot.appendChild(tip);
    svg.appendChild(dot);
  }
  box.appendChild(svg);
  return box;
}

function breadcrumbs(store: SessionStore): HTMLElement {
  const nav = el("nav");
  nav.id = "breadcrumbs";
  const list = el("ol");
  for (const crumb of store.crumbs) {
    const item = el("li", "crumb", crumb.label);
    item.dataset.gameId = crumb.gameId;
    list.appendChild(item);
  }
  nav.appendChild(list);
  const undo = el("button", undefined, "Undo");
  undo.id = "undo";
  undo.disabled = store.crumbs.length < 2;
  undo.addEventListener("click", () => void store.undo());
  nav.appendChild(undo);
  return nav;
}

/** Full re-render of the session into the root element. */
export function render(
  root: HTMLElement,
  store: SessionStore,
  confirmFn: ConfirmFn,
): void {
  root.textContent = "";
  const view = store.view;

  if (store.error) {
    const banner = el("div", "banner", store.error);
    banner.id = "error-banner";
    root.appendChild(banner);
  }
  if (!view) {
    root.appendChild(el("p", "hint", "Load a game document to begin."));
    return;
  }

  const header = el("header");
  header.id = "header";
  header.appendChild(el("h2", undefined,
    `Game ${view.gameId} (${view.info.n} players)`));
  const ratio = el("span", "ratio", percent(view.anarchy.report.poa_ratio));
  ratio.title = anarchyLine(view.anarchy.report);
  header.appendChild(el("p", "anarchy-line",
    `price of anarchy: ${anarchyLine(view.anarchy.report)} — `));
  header.querySelector(".anarchy-line")!.appendChild(ratio);
  root.appendChild(header);

  root.appendChild(breadcrumbs(store));

  const panes = el("main", "panes");
  panes.appendChild(
    graphPane(store, "Worst stable graph", "worst", view.stable, true, confirmFn));
  panes.appendChild(
    graphPane(store, "Best coordinated graph", "best", view.best, false, confirmFn));
  panes.appendChild(deltaPanel(store));
  root.appendChild(panes);
  root.appendChild(paretoScatter(store));
}

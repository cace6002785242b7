// Thin DOM layer: translates view models into SVG/HTML and routes events
// into the store.  Everything displayable is computed in render.ts and
// panels.ts; nothing here inspects authorization semantics.

import { actionPanel, planPanel, scrubber } from "./panels.js";
import { renderGraph, type GraphView } from "./render.js";
import type { SessionStore } from "./store.js";

const SVG_NS = "http://www.w3.org/2000/svg";

function el<K extends keyof HTMLElementTagNameMap>(
  tag: K,
  attrs: Record<string, string> = {},
  text?: string,
): HTMLElementTagNameMap[K] {
  const node = document.createElement(tag);
  for (const [k, v] of Object.entries(attrs)) node.setAttribute(k, v);
  if (text) node.textContent = text;
  return node;
}

function svgEl(tag: string, attrs: Record<string, string> = {}): SVGElement {
  const node = document.createElementNS(SVG_NS, tag);
  for (const [k, v] of Object.entries(attrs)) node.setAttribute(k, v);
  return node;
}

function drawGraph(view: GraphView, width = 640, height = 480): SVGElement {
  const svg = svgEl("svg", {
    width: String(width),
    height: String(height),
    viewBox: `0 0 ${width} ${height}`,
  });
  const defs = svgEl("defs");
  const marker = svgEl("marker", {
    id: "arrow",
    viewBox: "0 -4 10 8",
    refX: "24",
    refY: "0",
    markerWidth: "7",
    markerHeight: "7",
    orient: "auto",
  });
  marker.appendChild(svgEl("path", { d: "M0,-4L10,0L0,4", fill: "#444" }));
  defs.appendChild(marker);
  svg.appendChild(defs);

  const at = new Map(view.nodes.map((n) => [n.id, n]));
  const seenPairs = new Map<string, number>();
  for (const edge of view.edges) {
    const a = at.get(edge.from);
    const b = at.get(edge.to);
    if (!a || !b) continue;
    const pairKey = `${edge.from}>${edge.to}`;
    const lane = seenPairs.get(pairKey) ?? 0;
    seenPairs.set(pairKey, lane + 1);
    // parallel edges bow outward on separate lanes
    const mx = (a.x + b.x) / 2;
    const my = (a.y + b.y) / 2;
    const dx = b.y - a.y;
    const dy = a.x - b.x;
    const norm = Math.hypot(dx, dy) || 1;
    const bend = 18 * (lane + (edge.from < edge.to ? 0.4 : 1.0));
    const cx = mx + (dx / norm) * bend;
    const cy = my + (dy / norm) * bend;
    const color = edge.negative
      ? "#b3261e"
      : edge.emphasis === "added"
        ? "#1a7f37"
        : edge.emphasis === "inactivated"
          ? "#9a6700"
          : "#444";
    const path = svgEl("path", {
      d: `M${a.x},${a.y} Q${cx},${cy} ${b.x},${b.y}`,
      fill: "none",
      stroke: color,
      "stroke-width": edge.emphasis === "none" ? "1.4" : "2.6",
      "marker-end": "url(#arrow)",
      class: `edge edge-${edge.style}${edge.negative ? " edge-negative" : ""}`,
    });
    if (edge.style === "dashed") path.setAttribute("stroke-dasharray", "6,4");
    svg.appendChild(path);
    const label = svgEl("text", {
      x: String(cx),
      y: String(cy - 4),
      "font-size": "11",
      "text-anchor": "middle",
      fill: color,
      class: "edge-label",
    });
    label.textContent = edge.label;
    svg.appendChild(label);
  }
  for (const removed of view.removed) {
    const a = at.get(removed.from);
    const b = at.get(removed.to);
    if (!a || !b) continue;
    const ghost = svgEl("line", {
      x1: String(a.x),
      y1: String(a.y),
      x2: String(b.x),
      y2: String(b.y),
      stroke: "#b3261e",
      "stroke-width": "1",
      "stroke-dasharray": "2,6",
      class: "edge-removed",
    });
    svg.appendChild(ghost);
  }
  for (const node of view.nodes) {
    const g = svgEl("g", { class: node.soa ? "node node-soa" : "node" });
    g.appendChild(
      svgEl("circle", {
        cx: String(node.x),
        cy: String(node.y),
        r: "18",
        fill: node.soa ? "#dbeafe" : "#f6f6f6",
        stroke: "#333",
        "stroke-width": node.soa ? "2.5" : "1.2",
      }),
    );
    const text = svgEl("text", {
      x: String(node.x),
      y: String(node.y + 4),
      "text-anchor": "middle",
      "font-size": "13",
    });
    text.textContent = node.id;
    g.appendChild(text);
    svg.appendChild(g);
  }
  return svg;
}

export function mount(root: HTMLElement, store: SessionStore): void {
  const graphHost = el("div", { id: "graph" });
  const loader = el("div", { id: "loader" });
  const specInput = el("textarea", {
    id: "spec-input",
    rows: "9",
    placeholder: "soa A\nprincipal B\nauth A B TT",
  });
  const loadButton = el("button", {}, "load state document");
  loader.append(specInput, loadButton);

  const actionHost = el("div", { id: "action-panel" });
  const timelineHost = el("div", { id: "timeline" });
  const planHost = el("div", { id: "plan-panel" });
  const errorHost = el("div", { id: "error", role: "alert" });
  root.append(loader, errorHost, graphHost, actionHost, timelineHost, planHost);

  loadButton.addEventListener("click", () => {
    void store.load(specInput.value);
  });

  function redraw(): void {
    const view = store.view;
    graphHost.replaceChildren();
    if (view) {
      graphHost.appendChild(drawGraph(renderGraph(view.state, view.delta)));
    }

    const action = actionPanel(store);
    actionHost.replaceChildren();
    if (action.enabled) {
      const schemeSel = el("select", { id: "scheme" });
      for (const s of action.schemes) schemeSel.appendChild(el("option", {}, s));
      const actorSel = el("select", { id: "actor" });
      const targetSel = el("select", { id: "target" });
      for (const p of action.principals) {
        actorSel.appendChild(el("option", {}, p));
        targetSel.appendChild(el("option", {}, p));
      }
      const go = el("button", {}, "apply");
      go.addEventListener("click", () => {
        if (store.wouldBranch) {
          const ok = window.confirm(
            "Acting here discards the newer history entries. Continue?",
          );
          if (!ok) return;
        }
        void store.apply({
          scheme: schemeSel.value as never,
          actor: actorSel.value,
          target: targetSel.value,
        });
      });
      actionHost.append(schemeSel, actorSel, targetSel, go);
    }
    errorHost.textContent = store.state.lastError ?? "";

    timelineHost.replaceChildren();
    for (const step of scrubber(store)) {
      const b = el(
        "button",
        { class: step.current ? "step current" : "step" },
        `${step.index}: ${step.label}`,
      );
      b.addEventListener("click", () => store.scrubTo(step.index));
      timelineHost.appendChild(b);
    }

    const plans = planPanel(store);
    planHost.replaceChildren();
    const actorIn = el("input", { id: "plan-actor", placeholder: "actor" });
    const goalIn = el("input", {
      id: "plan-goal",
      placeholder: "!access(F) & unchanged(D)",
      value: plans.goal,
    });
    const ask = el("button", {}, "plan");
    ask.addEventListener("click", () => {
      void store.requestPlan(actorIn.value, goalIn.value);
    });
    planHost.append(actorIn, goalIn, ask);
    if (plans.emptyNotice) {
      planHost.appendChild(el("p", { class: "notice" }, plans.emptyNotice));
    }
    for (const row of plans.rows) {
      const item = el(
        "button",
        { class: "plan-row" },
        `cost=${row.cost} ${row.label}`,
      );
      item.addEventListener("mouseenter", () => {
        void store.previewPlan(row.index).then((state) => {
          if (state) {
            graphHost.replaceChildren(drawGraph(renderGraph(state)));
          }
        });
      });
      item.addEventListener("mouseleave", () => redraw());
      item.addEventListener("click", () => {
        void store.applyPlan(row.index);
      });
      planHost.appendChild(item);
    }
  }

  store.subscribe(redraw);
  redraw();
}

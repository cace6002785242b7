// The secondary acceptance flow, against recorded service interactions:
// load the six-principal example, apply WLD A->B through the action-panel
// path and check the rendered edge list; then plan !access(F), confirm the
// SGD A B entry, and apply it, checking both the preview and the applied
// graph.

import { describe, expect, it } from "vitest";

import { Client } from "../src/api.js";
import { renderGraph, edgeList } from "../src/render.js";
import { SessionStore } from "../src/store.js";
import { actionPanel, planPanel, scrubber } from "../src/panels.js";
import { baseExampleDocument, recordedFetch } from "./helpers.js";

const BASE_EDGES: [string, string, string, boolean][] = [
  ["A", "B", "TT", true],
  ["A", "D", "TT", true],
  ["B", "C", "TF", true],
  ["B", "E", "TT", true],
  ["D", "B", "FF", true],
  ["D", "E", "TT", true],
  ["E", "F", "FF", true],
];

const WLD_OUTCOME: [string, string, string, boolean][] = [
  ["A", "C", "TF", true],
  ["A", "D", "TT", true],
  ["A", "E", "TT", true],
  ["D", "B", "FF", true],
  ["D", "E", "TT", true],
  ["E", "F", "FF", true],
];

const SGD_OUTCOME: [string, string, string, boolean][] = [["A", "D", "TT", true]];

function sorted(edges: [string, string, string, boolean][]) {
  return [...edges].sort((a, b) => JSON.stringify(a).localeCompare(JSON.stringify(b)));
}

async function loadedStore() {
  const { fetcher } = recordedFetch();
  const store = new SessionStore(new Client("", fetcher));
  await store.load(baseExampleDocument());
  return store;
}

describe("UI fidelity", () => {
  it("renders the loaded document's seven edges", async () => {
    const store = await loadedStore();
    const view = renderGraph(store.view!.state, store.view!.delta);
    expect(sorted(edgeList(view))).toEqual(sorted(BASE_EDGES));
    expect(view.nodes.map((n) => n.id).sort()).toEqual(["A", "B", "C", "D", "E", "F"]);
    expect(view.nodes.find((n) => n.id === "A")!.soa).toBe(true);
  });

  it("applying WLD A->B produces exactly the weak-local-delete graph", async () => {
    const store = await loadedStore();
    const panel = actionPanel(store);
    expect(panel.schemes).toContain("WLD");
    expect(panel.principals).toContain("A");
    const ok = await store.apply({ scheme: "WLD", actor: "A", target: "B" });
    expect(ok).toBe(true);
    const view = renderGraph(store.view!.state, store.view!.delta);
    expect(sorted(edgeList(view))).toEqual(sorted(WLD_OUTCOME));
    // the delta is highlighted: two added edges, three removed ghosts
    expect(view.edges.filter((e) => e.emphasis === "added").length).toBe(2);
    expect(view.removed.length).toBe(3);
  });

  it("rejected actions surface the code and change nothing", async () => {
    const store = await loadedStore();
    const ok = await store.apply({ scheme: "WLD", actor: "C", target: "B" });
    expect(ok).toBe(false);
    expect(store.state.lastError).toContain("no-authorization-to-revoke");
    expect(store.state.history.length).toBe(1);
    const view = renderGraph(store.view!.state, store.view!.delta);
    expect(sorted(edgeList(view))).toEqual(sorted(BASE_EDGES));
  });

  it("plan !access(F) lists SGD A B; applying it yields the strong-global graph", async () => {
    const store = await loadedStore();
    // build a side branch first so applying the plan result exercises the
    // confirm-then-truncate path
    await store.apply({ scheme: "WLD", actor: "A", target: "B" });
    store.scrubTo(0);
    expect(store.wouldBranch).toBe(true);

    await store.requestPlan("A", "!access(F)");
    const rows = planPanel(store).rows;
    const sgdRow = rows.find((r) => r.label === "do SGD A B");
    expect(sgdRow).toBeDefined();

    // hovering fetches the preview; its graph is the strong-global result
    const previewState = await store.previewPlan(sgdRow!.index);
    const previewEdges = sorted(edgeList(renderGraph(previewState!)));
    expect(previewEdges).toEqual(sorted(SGD_OUTCOME));

    // clicking applies it as the next action (branching off index 0)
    const ok = await store.applyPlan(sgdRow!.index);
    expect(ok).toBe(true);
    const applied = sorted(edgeList(renderGraph(store.view!.state)));
    expect(applied).toEqual(sorted(SGD_OUTCOME));
    // the applied state is identical to the preview
    expect(applied).toEqual(previewEdges);
    // and the branch replaced the WLD entry
    const labels = scrubber(store).map((s) => s.label);
    expect(labels).toEqual(["initial", "do SGD A B"]);
  });

  it("plan results arrive cost-ascending", async () => {
    const store = await loadedStore();
    await store.requestPlan("A", "!access(F)");
    const costs = planPanel(store).rows.map((r) => r.cost);
    expect(costs).toEqual([...costs].sort((a, b) => a - b));
  });

  it("every displayed edge is byte-traceable to a service response", async () => {
    const { fetcher, calls } = recordedFetch();
    const store = new SessionStore(new Client("", fetcher));
    await store.load(baseExampleDocument());
    await store.apply({ scheme: "WLD", actor: "A", target: "B" });
    // the store holds exactly what the recorded responses said, no more
    const shown = store.view!.state.auth.map(
      (a) => [a.grantor, a.grantee, a.permission, a.active] as const,
    );
    expect(sorted(shown as never)).toEqual(sorted(WLD_OUTCOME));
    expect(calls.map((c) => `${c.method} ${c.url}`)).toEqual([
      "POST /sessions",
      "GET /sessions/SID/history",
      "POST /sessions/SID/actions",
    ]);
  });
});

// Pure rendering: a state document (plus the step delta, for highlighting)
// becomes a view model of positioned nodes and styled edges.  The DOM layer
// only translates this into SVG; tests assert on the view model directly.

import { layoutState, type NodePosition } from "./layout.js";
import type { DeltaDoc, StateDoc } from "./types.js";

export interface EdgeView {
  from: string;
  to: string;
  label: string; // "+,T,T" or "-,F,F"
  style: "solid" | "dashed";
  negative: boolean;
  emphasis: "none" | "added" | "inactivated";
}

export interface GraphView {
  nodes: (NodePosition & { soa: boolean })[];
  edges: EdgeView[];
  removed: EdgeView[]; // edges of the previous state deleted by the last step
}

function permLabel(permission: string): string {
  const b1 = permission[0] === "T" ? "T" : "F";
  const b2 = permission[1] === "T" ? "T" : "F";
  return `+,${b1},${b2}`;
}

export function renderGraph(state: StateDoc, delta?: DeltaDoc | null): GraphView {
  const added = new Set(
    (delta?.added ?? []).map((t) => `${t.grantor}>${t.grantee}>${t.permission}`),
  );
  const inactivated = new Set(
    (delta?.inactivated ?? []).map(
      (t) => `${t.grantor}>${t.grantee}>${t.permission}`,
    ),
  );
  const negAdded = new Set(
    (delta?.neg_added ?? []).map((n) => `${n.grantor}>${n.grantee}`),
  );

  const edges: EdgeView[] = state.auth.map((a) => {
    const key = `${a.grantor}>${a.grantee}>${a.permission}`;
    return {
      from: a.grantor,
      to: a.grantee,
      label: permLabel(a.permission),
      style: a.active ? "solid" : "dashed",
      negative: false,
      emphasis: added.has(key)
        ? "added"
        : inactivated.has(key)
          ? "inactivated"
          : "none",
    };
  });
  for (const n of state.neg) {
    edges.push({
      from: n.grantor,
      to: n.grantee,
      label: "-,F,F",
      style: "solid",
      negative: true,
      emphasis: negAdded.has(`${n.grantor}>${n.grantee}`) ? "added" : "none",
    });
  }
  edges.sort(
    (a, b) =>
      a.from.localeCompare(b.from) ||
      a.to.localeCompare(b.to) ||
      a.label.localeCompare(b.label),
  );

  const removed: EdgeView[] = (delta?.deleted ?? []).map((t) => ({
    from: t.grantor,
    to: t.grantee,
    label: permLabel(t.permission),
    style: "solid",
    negative: false,
    emphasis: "none",
  }));

  return {
    nodes: layoutState(state).map((n) => ({ ...n, soa: n.id === state.soa })),
    edges,
    removed,
  };
}

/** The comparable (grantor, grantee, permission, active) edge list. */
export function edgeList(view: GraphView): [string, string, string, boolean][] {
  return view.edges
    .filter((e) => !e.negative)
    .map((e) => {
      const [b1, b2] = [e.label[2], e.label[4]];
      return [e.from, e.to, `${b1}${b2}`, e.style === "solid"] as [
        string,
        string,
        string,
        boolean,
      ];
    });
}

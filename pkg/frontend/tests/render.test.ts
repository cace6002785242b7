// Edge rendering conventions: solid/dashed/negative, delta emphasis.

import { describe, expect, it } from "vitest";

import { renderGraph } from "../src/render.js";
import type { DeltaDoc, StateDoc } from "../src/types.js";
import { fixture } from "./helpers.js";

function wlnLikeState(): StateDoc {
  return {
    soa: "A",
    principals: ["A", "B", "C"],
    auth: [
      { grantor: "A", grantee: "B", permission: "TT", active: false },
      { grantor: "A", grantee: "C", permission: "TF", active: true },
    ],
    neg: [{ grantor: "A", grantee: "B" }],
  };
}

describe("render", () => {
  it("labels carry the permission bits", () => {
    const view = renderGraph(wlnLikeState());
    const labels = view.edges.map((e) => e.label);
    expect(labels).toContain("+,T,T");
    expect(labels).toContain("+,T,F");
    expect(labels).toContain("-,F,F");
  });

  it("inactive edges are dashed, negatives solid", () => {
    const view = renderGraph(wlnLikeState());
    const inactive = view.edges.find((e) => e.label === "+,T,T")!;
    expect(inactive.style).toBe("dashed");
    const negative = view.edges.find((e) => e.negative)!;
    expect(negative.style).toBe("solid");
    expect(negative.label).toBe("-,F,F");
  });

  it("a state without edges renders nodes only", () => {
    const view = renderGraph({ soa: "A", principals: ["A", "B"], auth: [], neg: [] });
    expect(view.edges).toEqual([]);
    expect(view.nodes.length).toBe(2);
  });

  it("delta emphasis marks added and inactivated edges, removed become ghosts", () => {
    const state: StateDoc = {
      soa: "A",
      principals: ["A", "B", "C"],
      auth: [
        { grantor: "A", grantee: "B", permission: "TT", active: false },
        { grantor: "A", grantee: "C", permission: "TF", active: true },
      ],
      neg: [],
    };
    const delta: DeltaDoc = {
      deleted: [{ grantor: "B", grantee: "C", permission: "TF" }],
      added: [{ grantor: "A", grantee: "C", permission: "TF" }],
      inactivated: [{ grantor: "A", grantee: "B", permission: "TT" }],
      neg_added: [],
    };
    const view = renderGraph(state, delta);
    expect(view.edges.find((e) => e.to === "C")!.emphasis).toBe("added");
    expect(view.edges.find((e) => e.to === "B")!.emphasis).toBe("inactivated");
    expect(view.removed).toEqual([
      expect.objectContaining({ from: "B", to: "C", label: "+,T,F" }),
    ]);
  });

  it("edge count equals auth plus neg on the recorded example", () => {
    const state = (fixture("create_session.json").body as { state: StateDoc }).state;
    const view = renderGraph(state);
    expect(view.edges.length).toBe(state.auth.length + state.neg.length);
  });
});

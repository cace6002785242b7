// Deterministic layout: seeded by the canonical state document.

import { readFileSync } from "node:fs";
import { dirname, join } from "node:path";
import { fileURLToPath } from "node:url";
import { describe, expect, it } from "vitest";

import { canonicalStateText, layoutState, stateHash } from "../src/layout.js";
import { fixture } from "./helpers.js";
import type { StateDoc } from "../src/types.js";

const here = dirname(fileURLToPath(import.meta.url));

function baseExampleState(): StateDoc {
  return (fixture("create_session.json").body as { state: StateDoc }).state;
}

function wldOutcomeState(): StateDoc {
  return (fixture("action_wld.json").body as { state: StateDoc }).state;
}

describe("layout", () => {
  it("canonical text matches the service's own document format", () => {
    const expected = readFileSync(
      join(here, "..", "..", "tests", "data", "six_principals.spec"),
      "utf-8",
    );
    expect(canonicalStateText(baseExampleState())).toBe(expected);
  });

  it("same state, same layout", () => {
    const a = layoutState(baseExampleState());
    const b = layoutState(baseExampleState());
    expect(a).toEqual(b);
  });

  it("different states seed different rotations", () => {
    expect(stateHash(baseExampleState())).not.toBe(stateHash(wldOutcomeState()));
  });

  it("positions stay inside the viewport", () => {
    for (const n of layoutState(baseExampleState(), 640, 480)) {
      expect(n.x).toBeGreaterThanOrEqual(0);
      expect(n.x).toBeLessThanOrEqual(640);
      expect(n.y).toBeGreaterThanOrEqual(0);
      expect(n.y).toBeLessThanOrEqual(480);
    }
  });

  it("inactive flags change the canonical text and therefore the seed", () => {
    const state = baseExampleState();
    const flipped: StateDoc = {
      ...state,
      auth: state.auth.map((a, k) => (k === 0 ? { ...a, active: false } : a)),
    };
    expect(canonicalStateText(flipped)).toContain(" inactive");
    expect(stateHash(flipped)).not.toBe(stateHash(state));
  });
});

// View models for the three interaction panels.  Pure functions of the
// store state; the DOM layer renders them and routes events back into the
// store.

import type { SessionStore } from "./store.js";
import { SCHEMES, type SchemeToken } from "./types.js";

export interface ActionPanelView {
  schemes: readonly SchemeToken[];
  principals: string[];
  error: string | null;
  enabled: boolean;
}

export function actionPanel(store: SessionStore): ActionPanelView {
  const entry = store.current;
  return {
    schemes: SCHEMES,
    principals: entry ? [...entry.state.principals] : [],
    error: store.state.lastError,
    enabled: entry !== null,
  };
}

export interface ScrubberStep {
  index: number;
  label: string; // "initial" or "do WLD A B"
  current: boolean;
}

export function scrubber(store: SessionStore): ScrubberStep[] {
  return store.state.history.map((entry, k) => ({
    index: k,
    label: entry.action
      ? `do ${entry.action.scheme} ${entry.action.actor} ${entry.action.target}`
      : "initial",
    current: k === store.state.cursor,
  }));
}

export interface PlanRowView {
  index: number;
  cost: number;
  label: string;
}

export interface PlanPanelView {
  goal: string;
  rows: PlanRowView[];
  emptyNotice: string | null;
}

export function planPanel(store: SessionStore): PlanPanelView {
  const rows = store.state.plans.map((entry, k) => ({
    index: k,
    cost: entry.result.cost,
    label:
      `do ${entry.result.action.scheme} ${entry.result.action.actor} ` +
      entry.result.action.target,
  }));
  return {
    goal: store.state.planGoal,
    rows,
    emptyNotice:
      store.state.planGoal && rows.length === 0
        ? "no single action achieves this"
        : null,
  };
}

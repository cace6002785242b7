// Session store: the single source of truth for what the UI shows.
// It mirrors service responses and never derives authorization facts
// itself.  Mutations resolve only after the service confirms them; a
// rejected action leaves the store untouched and surfaces the error code.

import { ApiError, Client } from "./api.js";
import type {
  ActionDoc,
  DeltaDoc,
  HistoryEntryDoc,
  PlanResultDoc,
  StateDoc,
} from "./types.js";

export interface PlanEntry {
  result: PlanResultDoc;
  previewState: StateDoc | null; // fetched lazily on hover
}

export interface StoreState {
  session: string | null;
  history: HistoryEntryDoc[];
  cursor: number; // which history index the graph shows
  lastError: string | null;
  plans: PlanEntry[];
  planGoal: string;
}

export class SessionStore {
  state: StoreState = {
    session: null,
    history: [],
    cursor: 0,
    lastError: null,
    plans: [],
    planGoal: "",
  };

  private listeners: (() => void)[] = [];

  constructor(private client: Client) {}

  subscribe(fn: () => void): void {
    this.listeners.push(fn);
  }

  private emit(): void {
    for (const fn of this.listeners) fn();
  }

  get current(): HistoryEntryDoc | null {
    return this.state.history[this.state.cursor] ?? null;
  }

  /** State and delta the graph view should currently render. */
  get view(): { state: StateDoc; delta: DeltaDoc | null } | null {
    const entry = this.current;
    if (!entry) return null;
    return { state: entry.state, delta: entry.delta };
  }

  async load(spec: string): Promise<void> {
    const created = await this.client.createSession(spec);
    const history = await this.client.history(created.session);
    this.state = {
      session: created.session,
      history: history.entries,
      cursor: history.entries.length - 1,
      lastError: null,
      plans: [],
      planGoal: "",
    };
    this.emit();
  }

  /** Apply an action at the cursor.  Acting below the newest entry is a
   * what-if branch: forward history is truncated first (the caller is
   * responsible for having confirmed that with the user). */
  async apply(action: ActionDoc): Promise<boolean> {
    if (!this.state.session) throw new Error("no session loaded");
    const sid = this.state.session;
    try {
      if (this.state.cursor < this.state.history.length - 1) {
        await this.client.truncate(sid, this.state.cursor);
        this.state.history = this.state.history.slice(0, this.state.cursor + 1);
      }
      const applied = await this.client.applyAction(sid, action);
      this.state.history = [
        ...this.state.history,
        { index: applied.index, action, state: applied.state, delta: applied.delta },
      ];
      this.state.cursor = applied.index;
      this.state.lastError = null;
      this.state.plans = [];
      this.emit();
      return true;
    } catch (err) {
      if (err instanceof ApiError) {
        this.state.lastError = `${err.code}: ${err.message}`;
        this.emit();
        return false;
      }
      throw err;
    }
  }

  scrubTo(index: number): void {
    if (index < 0 || index >= this.state.history.length) return;
    this.state.cursor = index;
    this.state.lastError = null;
    this.emit();
  }

  get wouldBranch(): boolean {
    return this.state.cursor < this.state.history.length - 1;
  }

  async requestPlan(actor: string, goal: string): Promise<void> {
    if (!this.state.session) throw new Error("no session loaded");
    try {
      const response = await this.client.plan(this.state.session, actor, goal);
      this.state.plans = response.results.map((result) => ({
        result,
        previewState: null,
      }));
      this.state.planGoal = goal;
      this.state.lastError = null;
    } catch (err) {
      if (err instanceof ApiError) {
        this.state.plans = [];
        this.state.lastError = `${err.code}: ${err.message}`;
      } else {
        throw err;
      }
    }
    this.emit();
  }

  async previewPlan(k: number): Promise<StateDoc | null> {
    const entry = this.state.plans[k];
    if (!entry) return null;
    if (!entry.previewState) {
      const fetched = await this.client.preview(entry.result.preview);
      entry.previewState = fetched.state;
      this.emit();
    }
    return entry.previewState;
  }

  /** Clicking a plan result applies its action as the next step. */
  async applyPlan(k: number): Promise<boolean> {
    const entry = this.state.plans[k];
    if (!entry) return false;
    return this.apply(entry.result.action);
  }
}

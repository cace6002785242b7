// A fetch stub serving the recorded service fixtures, keyed by method,
// path and (for actions) the request body.  The store under test talks to
// it exactly as it would to the live service.

import { readFileSync } from "node:fs";
import { dirname, join } from "node:path";
import { fileURLToPath } from "node:url";

import type { FetchLike } from "../src/api.js";

const here = dirname(fileURLToPath(import.meta.url));
const FIXTURES = join(here, "..", "fixtures");

export function fixture(name: string): { status: number; body: unknown } {
  const body = JSON.parse(readFileSync(join(FIXTURES, name), "utf-8"));
  return { status: statusOf(name), body };
}

function statusOf(name: string): number {
  if (name === "create_session.json") return 201;
  if (name === "action_invalid.json") return 422;
  return 200;
}

export function baseExampleDocument(): string {
  return readFileSync(join(here, "..", "..", "tests", "data", "six_principals.spec"), "utf-8");
}

export interface RecordedCall {
  method: string;
  url: string;
  body: unknown;
}

export function recordedFetch(): { fetcher: FetchLike; calls: RecordedCall[] } {
  const calls: RecordedCall[] = [];

  const route = (method: string, url: string, body: unknown): string => {
    if (method === "POST" && url === "/sessions") return "create_session.json";
    if (method === "GET" && url === "/sessions/SID/history")
      return "history_initial.json";
    if (method === "POST" && url === "/sessions/SID/actions") {
      const a = body as { scheme: string; actor: string; target: string };
      if (a.scheme === "WLD" && a.actor === "C") return "action_invalid.json";
      if (a.scheme === "WLD") return "action_wld.json";
      if (a.scheme === "SGD") return "action_sgd.json";
    }
    if (method === "POST" && url === "/sessions/SID/truncate")
      return "truncate_0.json";
    if (method === "POST" && url === "/sessions/SID/plan")
      return "plan_not_access_f.json";
    if (method === "GET" && url === "/previews/PREVIEW-SGD-B")
      return "preview_sgd_b.json";
    throw new Error(`no fixture for ${method} ${url} ${JSON.stringify(body)}`);
  };

  const fetcher: FetchLike = (url, init) => {
    const method = init?.method ?? "GET";
    const body = init?.body ? JSON.parse(init.body) : undefined;
    calls.push({ method, url, body });
    const { status, body: payload } = fixture(route(method, url, body));
    return Promise.resolve({
      status,
      json: () => Promise.resolve(payload),
    });
  };
  return { fetcher, calls };
}

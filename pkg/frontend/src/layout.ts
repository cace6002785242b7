// Deterministic graph layout: principals on a circle, with the rotation
// seeded by a hash of the canonical state document so that the same state
// always renders identically (screenshots are reproducible) and different
// states are visually distinguishable.

import type { StateDoc } from "./types.js";

export interface NodePosition {
  id: string;
  x: number;
  y: number;
}

/** Canonical, byte-stable rendering of a state document (for hashing). */
export function canonicalStateText(state: StateDoc): string {
  const lines = [`soa ${state.soa}`];
  for (const p of [...state.principals].sort()) {
    if (p !== state.soa) lines.push(`principal ${p}`);
  }
  const permOrder: Record<string, number> = { TT: 0, TF: 1, FT: 2, FF: 3 };
  const auth = [...state.auth].sort(
    (a, b) =>
      a.grantor.localeCompare(b.grantor) ||
      a.grantee.localeCompare(b.grantee) ||
      permOrder[a.permission] - permOrder[b.permission],
  );
  for (const a of auth) {
    lines.push(
      `auth ${a.grantor} ${a.grantee} ${a.permission}${a.active ? "" : " inactive"}`,
    );
  }
  const neg = [...state.neg].sort(
    (a, b) => a.grantor.localeCompare(b.grantor) || a.grantee.localeCompare(b.grantee),
  );
  for (const n of neg) lines.push(`neg ${n.grantor} ${n.grantee}`);
  return lines.join("\n") + "\n";
}

/** FNV-1a over the canonical text; the layout seed. */
export function stateHash(state: StateDoc): number {
  const text = canonicalStateText(state);
  let h = 0x811c9dc5;
  for (let i = 0; i < text.length; i++) {
    h ^= text.charCodeAt(i);
    h = Math.imul(h, 0x01000193) >>> 0;
  }
  return h >>> 0;
}

export function layoutState(
  state: StateDoc,
  width = 640,
  height = 480,
): NodePosition[] {
  const names = [...state.principals].sort();
  const cx = width / 2;
  const cy = height / 2;
  const r = Math.min(width, height) / 2 - 60;
  const offset = ((stateHash(state) % 360) * Math.PI) / 180;
  return names.map((id, k) => {
    const angle = offset + (2 * Math.PI * k) / names.length;
    return {
      id,
      x: Math.round(cx + r * Math.cos(angle)),
      y: Math.round(cy + r * Math.sin(angle)),
    };
  });
}

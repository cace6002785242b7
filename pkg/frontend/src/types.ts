// Wire types mirroring the service's structured schema ("revograph/v1").
// The frontend never derives authorization semantics from these: every
// displayed fact comes out of a service response verbatim.

export type PermissionToken = "TT" | "TF" | "FT" | "FF";

export const SCHEMES = [
  "grantTT",
  "grantTF",
  "grantFT",
  "grantFF",
  "WLD",
  "WGD",
  "SLD",
  "SGD",
  "WLN",
  "WGN",
  "SLN",
  "SGN",
] as const;

export type SchemeToken = (typeof SCHEMES)[number];

export interface AuthEdgeDoc {
  grantor: string;
  grantee: string;
  permission: PermissionToken;
  active: boolean;
}

export interface NegEdgeDoc {
  grantor: string;
  grantee: string;
}

export interface StateDoc {
  soa: string;
  principals: string[];
  auth: AuthEdgeDoc[];
  neg: NegEdgeDoc[];
}

export interface TripleDoc {
  grantor: string;
  grantee: string;
  permission: PermissionToken;
}

export interface DeltaDoc {
  deleted: TripleDoc[];
  added: TripleDoc[];
  inactivated: TripleDoc[];
  neg_added: NegEdgeDoc[];
}

export interface ActionDoc {
  scheme: SchemeToken;
  actor: string;
  target: string;
}

export interface HistoryEntryDoc {
  index: number;
  action: ActionDoc | null;
  state: StateDoc;
  delta: DeltaDoc | null;
}

export interface PlanResultDoc {
  action: ActionDoc;
  cost: number;
  preview: string;
}

export interface VerifyReportDoc {
  invariant: string;
  mode: string;
  result: "HOLDS" | "COUNTEREXAMPLE";
  states_checked: number;
  steps_checked: number;
  undefined_steps: number;
}

export interface ServiceError {
  error: string;
  message: string;
}

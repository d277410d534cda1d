// Wire types for the workshop service JSON API.
// Everything displayed by the client originates from these server payloads;
// in particular quadrant labels, pedigree strengths and disagreement values
// are never recomputed client-side.

export type Quadrant = "Q1" | "Q2" | "Q3" | "Q4";

export interface DiagramPoint {
  assumption: string;
  pedigree: number;
  influence: number;
  quadrant: Quadrant;
  source: string;
}

export interface DiagramJson {
  thresholds: { pedigree: number; influence: number };
  points: DiagramPoint[];
  labels?: Record<string, string>;
  gaps?: Record<string, string[]>;
  provenance?: Record<string, unknown>;
}

export interface AssumptionMeta {
  id: string;
  title: string;
  statement: string;
  category?: string;
}

export interface CriterionMeta {
  id: string;
  name: string;
  description: string;
  scale_anchors: string[];
}

export interface SessionMetadata {
  id: string;
  state: "draft" | "scoring_open" | "closed";
  roster: string[];
  assumptions: AssumptionMeta[];
  criteria: { name: string; criteria: CriterionMeta[] };
  thresholds: { pedigree: number; influence: number };
  version: number;
}

export interface CriterionStats {
  median: number;
  iqr: number;
  experts: number;
}

export interface PedigreeResultJson {
  assumption: string;
  strength: number;
  band: string;
  criteria: Record<string, CriterionStats>;
  gaps: string[];
}

export interface Snapshot {
  session: string;
  version: number;
  state: string;
  results: PedigreeResultJson[];
  diagram: DiagramJson;
}

export interface MyScore {
  assumption: string;
  criterion: string;
  score: number;
}

export interface JoinViewPayload {
  metadata: SessionMetadata;
  snapshot: Snapshot;
  expert: string;
  my_scores: MyScore[];
  read_only: boolean;
}

export interface ScoreSubmission {
  expert: string;
  assumption: string;
  criterion: string;
  score: number;
  rationale?: string;
}

export interface SubmitAck {
  record_id: number;
  version: number;
}

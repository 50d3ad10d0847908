// Payload shapes of the elicitation service. The client performs no
// consistency arithmetic of its own: everything numeric displayed in the
// UI is formatted straight from these fields.

export interface Question {
  context: string;
  row: string;
  col: string;
  prompt: string;
}

export interface Questionnaire {
  session_id: string;
  experts: string[];
  questions: Question[];
  total: number;
  expected_per_expert: number;
  model: ModelDoc;
}

export interface ModelDoc {
  goal: string;
  goal_label?: string;
  clusters: { id: string; label?: string; elements: { id: string; label?: string; definition?: string }[] }[];
  links: { source: string; target: string; kind: string }[];
}

export interface WorstTriad {
  row: string;
  col: string;
  severity: number;
}

export interface ConsistencyReport {
  ci: number;
  ri: number;
  cr: number;
  pass: boolean;
  worst_triad: WorstTriad | null;
}

export interface SubmissionResult {
  stored: boolean;
  expert: string;
  context: string;
  row: string;
  col: string;
  value: string;
  context_filled: number;
  context_expected: number;
  total_filled: number;
  total_expected: number;
  status: "incomplete" | "context-complete";
  consistency: ConsistencyReport | null;
}

export interface ConsistencySnapshot {
  session_id: string;
  status: string;
  progress: {
    expected_total: number;
    stored_total: number;
    per_expert: Record<string, { stored: number; expected: number }>;
  };
  contexts: {
    context: string;
    size: number;
    aggregate: ConsistencyReport | null;
    experts: Record<string, ConsistencyReport | null>;
  }[];
}

export interface RankedCriterion {
  id: string;
  weight: number;
  rank: number;
}

export interface RankedElement {
  id: string;
  cluster: string;
  weight: number;
  rank: number;
}

export interface Report {
  criteria: RankedCriterion[];
  elements: RankedElement[];
  consistency: { context: string; ci: number; ri: number; cr: number; pass: boolean }[];
  convergence: { mode: "power" | "cesaro"; iterations: number };
}

export interface ApiErrorBody {
  error: string;
  detail: unknown;
}

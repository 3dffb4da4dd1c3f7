/** DTO types mirroring the session-service JSON payloads. */

export interface Design {
  D: number;
  k: number;
  G: number;
  A: number;
}

export interface Evaluation {
  design: Design;
  mean_time_ms: number;
  mean_error_cm: number;
  speed: number;
  accuracy: number;
  trial_count: number;
}

export type SessionMode = "designer_led" | "optimizer_driven";
export type SessionStage = "design" | "decision" | "complete";

export interface SessionView {
  id: string;
  mode: SessionMode;
  stage: SessionStage;
  cfg: { n_init: number; n_total: number; seed: number } & Record<string, unknown>;
  skill: Record<string, number>;
  created_at: string;
  evaluations: Evaluation[];
  informal_tests: Design[];
  pending_proposal: Design | null;
  pending_tag: string | null;
  picks: number[] | null;
}

export interface Proposal {
  design: Design;
  tag: string;
}

export interface ParetoView {
  front: number[];
  points: { speed: number; accuracy: number }[];
}

export interface SessionReport {
  session_id: string;
  mode: string;
  evaluation_count: number;
  visited_count: number;
  pareto_indices: number[];
  coverage: Record<string, { covered: number; total: number }>;
  total_successive_distance: number;
  normalized_successive_distance: number;
  picks:
    | {
        index: number;
        design: Design;
        mean_time_ms: number;
        mean_error_cm: number;
        speed: number;
        accuracy: number;
      }[]
    | null;
}

export interface ManualMetrics {
  mean_time_ms: number;
  mean_error_cm: number;
}

/** Slider/axis metadata for the four design parameters (display only: the
 *  server re-validates every value). */
export interface ParamSpec {
  key: keyof Design;
  label: string;
  min: number;
  max: number;
  step: number;
}

export const PARAM_SPECS: ParamSpec[] = [
  { key: "D", label: "Threshold D", min: 0, max: 1, step: 0.01 },
  { key: "k", label: "Coefficient k", min: 0, max: 0.5, step: 0.005 },
  { key: "G", label: "Feedback gap G (cm)", min: -5, max: 15, step: 0.1 },
  { key: "A", label: "Feedback amplitude A", min: 0, max: 2.6, step: 0.01 },
];

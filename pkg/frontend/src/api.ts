// Typed client for the annotation service HTTP API.

export interface TaskView {
  id: string;
  premise: string;
  hypothesis: string;
}

export interface PairProgress {
  pair_id: string;
  n_annotations: number;
}

export interface Progress {
  pairs: PairProgress[];
  total_pairs: number;
  total_annotations: number;
  fully_annotated: number;
}

export interface Decision {
  pair_id: string;
  kept: boolean;
  n_annotations: number;
  n_qualifying: number;
  incomplete: boolean;
}

export interface DecisionSummary {
  decisions: Decision[];
  kept_count: number;
}

export type Label = "entailment" | "non-entailment";

export interface AnnotationSubmission {
  pair_id: string;
  annotator_id: string;
  makes_sense: boolean;
  label: Label;
}

export class ApiError extends Error {
  constructor(message: string, readonly code?: string, readonly status?: number) {
    super(message);
    this.name = "ApiError";
  }
}

async function errorFromResponse(response: Response): Promise<ApiError> {
  try {
    const body = (await response.json()) as { code?: string; message?: string };
    return new ApiError(body.message ?? response.statusText, body.code, response.status);
  } catch {
    return new ApiError(response.statusText, undefined, response.status);
  }
}

export class ApiClient {
  constructor(private readonly base: string = "") {}

  /** Next unjudged pair for this annotator, or null when the queue is drained (204). */
  async fetchNextTask(annotatorId: string): Promise<TaskView | null> {
    const url = `${this.base}/api/tasks/next?annotator=${encodeURIComponent(annotatorId)}`;
    const response = await fetch(url);
    if (response.status === 204) return null;
    if (!response.ok) throw await errorFromResponse(response);
    const body = (await response.json()) as TaskView;
    return { id: body.id, premise: body.premise, hypothesis: body.hypothesis };
  }

  async submitAnnotation(submission: AnnotationSubmission): Promise<void> {
    const response = await fetch(`${this.base}/api/annotations`, {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify(submission),
    });
    if (response.status !== 201) throw await errorFromResponse(response);
  }

  async fetchProgress(): Promise<Progress> {
    const response = await fetch(`${this.base}/api/progress`);
    if (!response.ok) throw await errorFromResponse(response);
    return (await response.json()) as Progress;
  }

  async fetchDecisions(): Promise<DecisionSummary> {
    const response = await fetch(`${this.base}/api/decisions`);
    if (!response.ok) throw await errorFromResponse(response);
    return (await response.json()) as DecisionSummary;
  }
}

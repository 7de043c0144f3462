// Pure state for one judgment form: both questions must be answered to submit.

import type { Label } from "./api.js";

export interface Judgment {
  makesSense: boolean | null;
  label: Label | null;
}

export function freshJudgment(): Judgment {
  return { makesSense: null, label: null };
}

export function canSubmit(judgment: Judgment): boolean {
  return judgment.makesSense !== null && judgment.label !== null;
}

export const KEY_BINDINGS: Record<string, { field: "makesSense" | "label"; value: boolean | Label }> = {
  y: { field: "makesSense", value: true },
  n: { field: "makesSense", value: false },
  e: { field: "label", value: "entailment" },
  x: { field: "label", value: "non-entailment" },
};

export function applyKey(judgment: Judgment, key: string): Judgment {
  const binding = KEY_BINDINGS[key.toLowerCase()];
  if (!binding) return judgment;
  if (binding.field === "makesSense") {
    return { ...judgment, makesSense: binding.value as boolean };
  }
  return { ...judgment, label: binding.value as Label };
}

// @vitest-environment jsdom
//
// End-to-end UI flow against a real annotation service on the toy pair set:
// enter id -> fetch -> answer both questions -> submit -> auto-advance,
// with double-click submission producing exactly one stored record.

import { spawn, spawnSync, type ChildProcess } from "node:child_process";
import { mkdtempSync, readFileSync, rmSync } from "node:fs";
import { tmpdir } from "node:os";
import { join, resolve } from "node:path";
import { afterAll, beforeAll, describe, expect, it } from "vitest";

import { ApiClient } from "../src/api.js";
import { AnnotatorApp } from "../src/app.js";

const PYTHON = process.env.PYTHON ?? "python3";
const REPO_ROOT = resolve(__dirname, "..", "..");
const TOY_CORPUS = join(REPO_ROOT, "tests", "data", "toy_6abc.conllu");
const PORT = 8930 + (process.pid % 500);
const BASE = `http://127.0.0.1:${PORT}`;

let server: ChildProcess | null = null;
let workDir = "";
let journalPath = "";

async function waitForServer(timeoutMs = 20_000): Promise<void> {
  const start = Date.now();
  for (;;) {
    try {
      const response = await fetch(`${BASE}/api/progress`);
      if (response.ok) return;
    } catch {
      // not up yet
    }
    if (Date.now() - start > timeoutMs) throw new Error("annotation service never came up");
    await new Promise((r) => setTimeout(r, 150));
  }
}

async function waitFor(check: () => boolean, what: string, timeoutMs = 5000): Promise<void> {
  const start = Date.now();
  while (!check()) {
    if (Date.now() - start > timeoutMs) throw new Error(`timed out waiting for ${what}`);
    await new Promise((r) => setTimeout(r, 25));
  }
}

beforeAll(async () => {
  workDir = mkdtempSync(join(tmpdir(), "npschal-e2e-"));
  const pairsPath = join(workDir, "pairs.jsonl");
  journalPath = join(workDir, "journal.jsonl");
  const generate = spawnSync(
    PYTHON,
    ["-m", "npschallenge.cli", "generate", "--corpus", TOY_CORPUS, "--verbs", "believed",
     "--out", pairsPath],
    { encoding: "utf-8" },
  );
  if (generate.status !== 0) {
    throw new Error(`generate failed: ${generate.stderr}`);
  }
  server = spawn(
    PYTHON,
    ["-m", "npschallenge.cli", "serve", "--pairs", pairsPath, "--store", journalPath,
     "--host", "127.0.0.1", "--port", String(PORT)],
    { stdio: ["ignore", "pipe", "pipe"] },
  );
  await waitForServer();
}, 40_000);

afterAll(() => {
  server?.kill("SIGTERM");
  if (workDir) rmSync(workDir, { recursive: true, force: true });
});

describe("annotation UI against the live service", () => {
  it("completes the full annotate-and-advance flow with one stored record", async () => {
    document.body.innerHTML = '<main id="app"></main>';
    const root = document.getElementById("app") as HTMLElement;
    const app = new AnnotatorApp(root, new ApiClient(BASE));
    app.renderLogin();

    // enter id
    const input = document.getElementById("annotator-input") as HTMLInputElement;
    input.value = "worker-1";
    (document.getElementById("start-button") as HTMLElement).click();

    // fetch: the toy corpus yields exactly the worked example, shown verbatim
    await waitFor(() => document.getElementById("task-screen") !== null, "task screen");
    expect(document.getElementById("premise")?.textContent).toBe(
      "The Knights believed the story was awful.",
    );
    expect(document.getElementById("hypothesis")?.textContent).toBe(
      "The Knights believed the story.",
    );

    // answer both questions
    (document.getElementById("sense-yes") as HTMLElement).click();
    (document.getElementById("label-non-entailment") as HTMLElement).click();
    const submit = document.getElementById("submit-button") as HTMLButtonElement;
    await waitFor(() => !submit.disabled, "submit enabled");

    // double-click: the second click must not create a second record
    submit.click();
    submit.click();

    // auto-advance: the only pair is judged, so the done screen appears
    await waitFor(() => document.getElementById("done-screen") !== null, "done screen");

    const progress = await new ApiClient(BASE).fetchProgress();
    expect(progress.total_annotations).toBe(1);
    expect(progress.pairs).toEqual([{ pair_id: "nps-0001", n_annotations: 1 }]);

    const journal = readFileSync(journalPath, "utf-8").trim().split("\n");
    expect(journal).toHaveLength(1);
    const record = JSON.parse(journal[0] as string);
    expect(record).toMatchObject({
      pair_id: "nps-0001",
      annotator_id: "worker-1",
      makes_sense: true,
      label: "non-entailment",
    });
  }, 30_000);

  it("drains the queue for a second annotator and reports decisions", async () => {
    const api = new ApiClient(BASE);
    const task = await api.fetchNextTask("worker-2");
    expect(task?.id).toBe("nps-0001");
    await api.submitAnnotation({
      pair_id: "nps-0001",
      annotator_id: "worker-2",
      makes_sense: true,
      label: "non-entailment",
    });
    expect(await api.fetchNextTask("worker-2")).toBeNull();

    // two qualifying judgments: the pair is now kept
    const decisions = await api.fetchDecisions();
    expect(decisions.kept_count).toBe(1);
    expect(decisions.decisions[0]).toMatchObject({
      pair_id: "nps-0001",
      kept: true,
      n_qualifying: 2,
      incomplete: true,
    });
  }, 30_000);
});

// Single-page annotation flow: enter an id, judge pairs one at a time,
// auto-advance on submit. A researcher dashboard polls live progress and
// agreement decisions. Pair text is rendered verbatim via textContent.

import { ApiClient, type Label, type TaskView } from "./api.js";
import { applyKey, canSubmit, freshJudgment, type Judgment } from "./state.js";

const POLL_INTERVAL_MS = 2000;

function el<K extends keyof HTMLElementTagNameMap>(
  doc: Document,
  tag: K,
  attrs: Record<string, string> = {},
  text?: string,
): HTMLElementTagNameMap[K] {
  const node = doc.createElement(tag);
  for (const [key, value] of Object.entries(attrs)) node.setAttribute(key, value);
  if (text !== undefined) node.textContent = text;
  return node;
}

export class AnnotatorApp {
  private judgment: Judgment = freshJudgment();
  private task: TaskView | null = null;
  private annotatorId = "";
  private submitting = false;
  private pollTimer: ReturnType<typeof setInterval> | null = null;
  private readonly doc: Document;

  constructor(
    private readonly root: HTMLElement,
    private readonly api: ApiClient,
  ) {
    this.doc = root.ownerDocument;
    this.doc.addEventListener("keydown", (event) => this.handleKey(event));
  }

  get currentTask(): TaskView | null {
    return this.task;
  }

  get currentJudgment(): Judgment {
    return this.judgment;
  }

  // --- screens ---------------------------------------------------------------

  renderLogin(): void {
    this.task = null;
    this.root.replaceChildren();
    const box = el(this.doc, "section", { class: "card", id: "login-screen" });
    box.append(
      el(this.doc, "h1", {}, "NP/S pair annotation"),
      el(this.doc, "p", {}, "Enter an annotator id to begin."),
    );
    const input = el(this.doc, "input", { id: "annotator-input", placeholder: "annotator id" });
    const button = el(this.doc, "button", { id: "start-button" }, "Start");
    button.addEventListener("click", () => {
      if (input.value.trim()) void this.start(input.value.trim());
    });
    input.addEventListener("keydown", (event) => {
      if (event.key === "Enter" && input.value.trim()) void this.start(input.value.trim());
    });
    box.append(input, button);
    this.root.append(box);
  }

  private renderTask(task: TaskView): void {
    this.task = task;
    this.judgment = freshJudgment();
    this.root.replaceChildren();
    const box = el(this.doc, "section", { class: "card", id: "task-screen" });
    box.append(
      el(this.doc, "p", { class: "muted" }, `annotating as ${this.annotatorId}`),
      el(this.doc, "h2", {}, "Premise"),
      el(this.doc, "p", { id: "premise", class: "pair-text" }, task.premise),
      el(this.doc, "h2", {}, "Hypothesis"),
      el(this.doc, "p", { id: "hypothesis", class: "pair-text" }, task.hypothesis),
    );

    const senseRow = el(this.doc, "div", { class: "question" });
    senseRow.append(el(this.doc, "span", {}, "Does this pair make sense? "));
    senseRow.append(
      this.answerButton("sense-yes", "Yes (y)", () => this.setSense(true)),
      this.answerButton("sense-no", "No (n)", () => this.setSense(false)),
    );
    const labelRow = el(this.doc, "div", { class: "question" });
    labelRow.append(el(this.doc, "span", {}, "Is the hypothesis entailed by the premise? "));
    labelRow.append(
      this.answerButton("label-entailment", "Entailed (e)", () => this.setLabel("entailment")),
      this.answerButton("label-non-entailment", "Not entailed (x)", () =>
        this.setLabel("non-entailment"),
      ),
    );

    const submit = el(this.doc, "button", { id: "submit-button", disabled: "" }, "Submit (Enter)");
    submit.addEventListener("click", () => void this.submit());
    const progress = el(this.doc, "p", { id: "task-progress", class: "muted" }, "");

    box.append(senseRow, labelRow, submit, progress, this.dashboardToggle());
    this.root.append(box);
    void this.refreshTaskProgress();
  }

  private renderDone(): void {
    this.task = null;
    this.root.replaceChildren();
    const box = el(this.doc, "section", { class: "card", id: "done-screen" });
    box.append(
      el(this.doc, "h1", {}, "All done"),
      el(
        this.doc,
        "p",
        { id: "done-message" },
        "No pairs left for you: everything is judged or fully annotated.",
      ),
      this.dashboardToggle(),
    );
    this.root.append(box);
  }

  private renderError(message: string, retry: () => Promise<void>): void {
    const existing = this.doc.getElementById("error-banner");
    existing?.remove();
    const banner = el(this.doc, "div", { id: "error-banner", class: "error" });
    banner.append(el(this.doc, "span", {}, `Request failed: ${message} `));
    const button = el(this.doc, "button", { id: "retry-button" }, "Retry");
    button.addEventListener("click", () => {
      banner.remove();
      void retry();
    });
    banner.append(button);
    this.root.prepend(banner);
  }

  private answerButton(id: string, label: string, onClick: () => void): HTMLButtonElement {
    const button = el(this.doc, "button", { id, class: "answer" }, label);
    button.addEventListener("click", onClick);
    return button;
  }

  private dashboardToggle(): HTMLElement {
    const wrap = el(this.doc, "div", {});
    const toggle = el(this.doc, "button", { id: "toggle-dashboard", class: "muted" },
      "Researcher view");
    const panel = el(this.doc, "div", { id: "dashboard", hidden: "" });
    toggle.addEventListener("click", () => {
      if (panel.hasAttribute("hidden")) {
        panel.removeAttribute("hidden");
        void this.refreshDashboard();
        this.pollTimer ??= setInterval(() => void this.refreshDashboard(), POLL_INTERVAL_MS);
      } else {
        panel.setAttribute("hidden", "");
        if (this.pollTimer !== null) {
          clearInterval(this.pollTimer);
          this.pollTimer = null;
        }
      }
    });
    wrap.append(toggle, panel);
    return wrap;
  }

  // --- actions ---------------------------------------------------------------

  async start(annotatorId: string): Promise<void> {
    this.annotatorId = annotatorId;
    await this.loadNext();
  }

  async loadNext(): Promise<void> {
    try {
      const task = await this.api.fetchNextTask(this.annotatorId);
      if (task === null) {
        this.renderDone();
      } else {
        this.renderTask(task);
      }
    } catch (err) {
      this.renderError(String((err as Error).message ?? err), () => this.loadNext());
    }
  }

  setSense(value: boolean): void {
    this.judgment = { ...this.judgment, makesSense: value };
    this.reflectAnswers();
  }

  setLabel(value: Label): void {
    this.judgment = { ...this.judgment, label: value };
    this.reflectAnswers();
  }

  private reflectAnswers(): void {
    const mark = (id: string, on: boolean) => {
      const button = this.doc.getElementById(id);
      if (button) button.classList.toggle("selected", on);
    };
    mark("sense-yes", this.judgment.makesSense === true);
    mark("sense-no", this.judgment.makesSense === false);
    mark("label-entailment", this.judgment.label === "entailment");
    mark("label-non-entailment", this.judgment.label === "non-entailment");
    const submit = this.doc.getElementById("submit-button") as HTMLButtonElement | null;
    if (submit) submit.disabled = !canSubmit(this.judgment) || this.submitting;
  }

  async submit(): Promise<void> {
    if (!this.task || this.submitting || !canSubmit(this.judgment)) return;
    this.submitting = true;
    this.reflectAnswers();
    const submission = {
      pair_id: this.task.id,
      annotator_id: this.annotatorId,
      makes_sense: this.judgment.makesSense as boolean,
      label: this.judgment.label as Label,
    };
    try {
      await this.api.submitAnnotation(submission);
      this.submitting = false;
      await this.loadNext();
    } catch (err) {
      this.submitting = false;
      this.reflectAnswers();
      this.renderError(String((err as Error).message ?? err), () => this.submit());
    }
  }

  private handleKey(event: KeyboardEvent): void {
    if (!this.task) return;
    const target = event.target as HTMLElement | null;
    if (target && target.tagName === "INPUT") return;
    if (event.key === "Enter") {
      void this.submit();
      return;
    }
    const next = applyKey(this.judgment, event.key);
    if (next !== this.judgment) {
      this.judgment = next;
      this.reflectAnswers();
    }
  }

  async refreshTaskProgress(): Promise<void> {
    try {
      const progress = await this.api.fetchProgress();
      const line = this.doc.getElementById("task-progress");
      if (line) {
        line.textContent =
          `${progress.total_annotations} judgments so far; ` +
          `${progress.fully_annotated} of ${progress.total_pairs} pairs fully annotated`;
      }
    } catch {
      // progress is decorative on the task screen; the next submit will surface errors
    }
  }

  async refreshDashboard(): Promise<void> {
    const panel = this.doc.getElementById("dashboard");
    if (!panel) return;
    try {
      const [progress, decisions] = await Promise.all([
        this.api.fetchProgress(),
        this.api.fetchDecisions(),
      ]);
      panel.replaceChildren();
      panel.append(
        el(this.doc, "p", { id: "kept-count" }, `kept so far: ${decisions.kept_count}`),
        el(
          this.doc,
          "p",
          { id: "total-annotations" },
          `${progress.total_annotations} judgments across ${progress.total_pairs} pairs`,
        ),
      );
      const list = el(this.doc, "ul", { id: "pair-counts" });
      for (const row of progress.pairs) {
        list.append(el(this.doc, "li", {}, `${row.pair_id}: ${row.n_annotations}`));
      }
      panel.append(list);
    } catch (err) {
      panel.replaceChildren(
        el(this.doc, "p", { class: "error" }, `dashboard unavailable: ${(err as Error).message}`),
      );
    }
  }
}

export function mountApp(root: HTMLElement, baseUrl = ""): AnnotatorApp {
  const app = new AnnotatorApp(root, new ApiClient(baseUrl));
  app.renderLogin();
  return app;
}

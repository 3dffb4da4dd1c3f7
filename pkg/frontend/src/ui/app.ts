/** Top-level controller: binds one session to the stage views and the two
 *  interlinked charts. The server is the single source of truth — every
 *  mutation is followed by a full session refresh. */

import { SessionApi } from "../api";
import { ParallelCoordinatesChart } from "../charts/parallel";
import { ScatterChart } from "../charts/scatter";
import { SelectionStore } from "../selection";
import type { Design, SessionReport, SessionView } from "../types";
import { DecisionPanel } from "./decision";
import { SliderPanel } from "./sliders";

const DEFAULT_DESIGN: Design = { D: 0.5, k: 0.25, G: 5, A: 1.3 };

export class App {
  private sessionId: string | null = null;
  private errorBox: HTMLElement;
  private content: HTMLElement;
  private lastAction: (() => Promise<void>) | null = null;

  constructor(
    private root: HTMLElement,
    private api: SessionApi,
  ) {
    this.errorBox = document.createElement("div");
    this.errorBox.className = "error-box";
    this.errorBox.hidden = true;
    this.content = document.createElement("div");
    this.content.className = "app-content";
    this.root.append(this.errorBox, this.content);
    this.renderStart();
  }

  private renderStart(): void {
    this.content.replaceChildren();
    const form = document.createElement("form");
    form.className = "start-form";

    const modeSelect = document.createElement("select");
    for (const mode of ["optimizer_driven", "designer_led"]) {
      const option = document.createElement("option");
      option.value = mode;
      option.textContent = mode.replace("_", " ");
      modeSelect.appendChild(option);
    }
    const seedInput = document.createElement("input");
    seedInput.type = "number";
    seedInput.value = "0";

    const createButton = document.createElement("button");
    createButton.type = "submit";
    createButton.textContent = "Create session";

    form.append(modeSelect, seedInput, createButton);
    form.addEventListener("submit", (ev) => {
      ev.preventDefault();
      void this.runAction(async () => {
        const { id } = await this.api.createSession(
          modeSelect.value as SessionView["mode"],
          Number(seedInput.value),
        );
        this.sessionId = id;
        await this.refresh();
      });
    });
    this.content.appendChild(form);
  }

  async refresh(): Promise<void> {
    if (!this.sessionId) return;
    const session = await this.api.getSession(this.sessionId);
    this.content.replaceChildren();
    const header = document.createElement("p");
    header.className = "session-header";
    header.textContent = `Session ${session.id} — ${session.mode}, ${session.stage} stage, ${session.evaluations.length} evaluations`;
    this.content.appendChild(header);

    if (session.stage === "design") {
      this.renderDesignStage(session);
    } else if (session.stage === "decision") {
      await this.renderDecisionStage(session);
    } else {
      this.renderCompleteView(session);
    }
    if (session.evaluations.length > 0 && session.stage !== "complete") {
      await this.renderCharts(session);
    }
  }

  private renderDesignStage(session: SessionView): void {
    const stage = document.createElement("section");
    stage.className = "design-stage";
    this.content.appendChild(stage);

    if (session.mode === "designer_led") {
      const sliders = new SliderPanel(stage, DEFAULT_DESIGN);
      this.sliderPanel = sliders;

      const testButton = document.createElement("button");
      testButton.textContent = "Test informally";
      testButton.className = "test-button";
      testButton.addEventListener("click", () =>
        void this.runAction(async () => {
          await this.api.recordTest(session.id, sliders.design);
          await this.refresh();
        }),
      );

      const evalButton = document.createElement("button");
      evalButton.textContent = "Evaluate (36-trial block)";
      evalButton.className = "evaluate-button";
      evalButton.addEventListener("click", () =>
        void this.runAction(async () => {
          await this.api.evaluate(session.id, sliders.design);
          await this.refresh();
        }),
      );

      const manual = this.buildManualEntry(session, sliders);
      stage.append(testButton, evalButton, manual);
    } else {
      this.sliderPanel = null; // optimizer mode: the server proposes, no sliders
      const card = document.createElement("div");
      card.className = "proposal-card";
      if (session.pending_proposal) {
        const d = session.pending_proposal;
        card.textContent =
          `Proposal (${session.pending_tag}): D ${d.D.toFixed(3)}, k ${d.k.toFixed(3)}, ` +
          `G ${d.G.toFixed(2)}, A ${d.A.toFixed(2)}`;
        const evalButton = document.createElement("button");
        evalButton.textContent = "Evaluate proposal";
        evalButton.className = "evaluate-button";
        evalButton.addEventListener("click", () =>
          void this.runAction(async () => {
            await this.api.evaluate(session.id, d);
            await this.refresh();
          }),
        );
        card.appendChild(evalButton);
      } else {
        const proposeButton = document.createElement("button");
        proposeButton.textContent = "Request proposal";
        proposeButton.className = "propose-button";
        proposeButton.addEventListener("click", () =>
          void this.runAction(async () => {
            await this.api.getProposal(session.id);
            await this.refresh();
          }),
        );
        card.appendChild(proposeButton);
      }
      stage.appendChild(card);
    }
  }

  private sliderPanel: SliderPanel | null = null;

  private buildManualEntry(session: SessionView, sliders: SliderPanel): HTMLElement {
    const details = document.createElement("details");
    details.className = "manual-entry";
    const summary = document.createElement("summary");
    summary.textContent = "Manual measurement entry";
    const timeInput = document.createElement("input");
    timeInput.type = "number";
    timeInput.placeholder = "mean time (ms)";
    const errorInput = document.createElement("input");
    errorInput.type = "number";
    errorInput.placeholder = "mean error (cm)";
    const submit = document.createElement("button");
    submit.textContent = "Record manual evaluation";
    submit.addEventListener("click", () =>
      void this.runAction(async () => {
        await this.api.evaluate(session.id, sliders.design, {
          mean_time_ms: Number(timeInput.value),
          mean_error_cm: Number(errorInput.value),
        });
        await this.refresh();
      }),
    );
    details.append(summary, timeInput, errorInput, submit);
    return details;
  }

  private async renderCharts(session: SessionView): Promise<void> {
    const pareto = await this.api.getPareto(session.id);
    const charts = document.createElement("section");
    charts.className = "charts";
    this.content.appendChild(charts);

    const store = new SelectionStore(session.evaluations.length);
    const parallel = new ParallelCoordinatesChart(charts, store);
    const scatter = new ScatterChart(charts, store);
    parallel.render(session.evaluations);
    scatter.render(session.evaluations, pareto.front);

    // Selecting a point loads its design into the sliders (designer-led).
    store.subscribe((sel) => {
      if (sel.selectedEvaluationIndex !== null && this.sliderPanel) {
        this.sliderPanel.setDesign(
          session.evaluations[sel.selectedEvaluationIndex].design,
        );
      }
    });
  }

  private async renderDecisionStage(session: SessionView): Promise<void> {
    const pareto = await this.api.getPareto(session.id);
    new DecisionPanel(
      this.content,
      pareto.front,
      session.evaluations,
      async (picks) => {
        const report = await this.api.decide(session.id, picks);
        await this.refresh();
        return report;
      },
    );
  }

  private renderCompleteView(session: SessionView): void {
    const done = document.createElement("section");
    done.className = "complete-view";
    const heading = document.createElement("h2");
    heading.textContent = "Session complete";
    done.appendChild(heading);
    const list = document.createElement("ul");
    for (const i of session.picks ?? []) {
      const e = session.evaluations[i];
      const item = document.createElement("li");
      item.textContent =
        `Pick #${i}: D ${e.design.D.toFixed(2)} k ${e.design.k.toFixed(2)} ` +
        `G ${e.design.G.toFixed(1)} A ${e.design.A.toFixed(2)} — ` +
        `${e.mean_time_ms.toFixed(0)} ms, ${e.mean_error_cm.toFixed(2)} cm`;
      list.appendChild(item);
    }
    done.appendChild(list);
    this.content.appendChild(done);
  }

  private async runAction(action: () => Promise<void>): Promise<void> {
    this.lastAction = action;
    try {
      await action();
      this.errorBox.hidden = true;
    } catch (err) {
      this.errorBox.replaceChildren();
      this.errorBox.hidden = false;
      const message = document.createElement("span");
      message.textContent = (err as Error).message;
      const retry = document.createElement("button");
      retry.textContent = "Retry";
      retry.addEventListener("click", () => {
        if (this.lastAction) void this.runAction(this.lastAction);
      });
      this.errorBox.append(message, retry);
    }
  }
}

export { SessionApi };

export function reportSummary(report: SessionReport): string {
  return (
    `${report.evaluation_count} evaluations, ` +
    `${report.pareto_indices.length} on the front, ` +
    `coverage m=2: ${report.coverage["2"]?.covered ?? "?"}`
  );
}

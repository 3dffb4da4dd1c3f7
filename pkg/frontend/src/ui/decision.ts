/** Decision stage: list the Pareto-optimal designs, let the user inspect
 *  each one, and collect exactly three picks (repeats allowed) before the
 *  decision is submitted. Which designs are eligible comes entirely from the
 *  server's Pareto endpoint. */

import type { Evaluation, SessionReport } from "../types";

export const REQUIRED_PICKS = 3;

export class DecisionPanel {
  readonly root: HTMLElement;
  readonly picks: number[] = [];
  private picksLine: HTMLElement;
  private preview: HTMLElement;
  private submitButton: HTMLButtonElement;

  constructor(
    parent: HTMLElement,
    private frontIndices: number[],
    private evaluations: Evaluation[],
    private onSubmit: (picks: number[]) => Promise<SessionReport>,
  ) {
    this.root = document.createElement("section");
    this.root.className = "decision-panel";

    const heading = document.createElement("h2");
    heading.textContent = `Decision: pick ${REQUIRED_PICKS} of the ${frontIndices.length} Pareto-optimal designs`;
    this.root.appendChild(heading);

    const list = document.createElement("ul");
    list.className = "front-list";
    for (const i of frontIndices) {
      const e = evaluations[i];
      const item = document.createElement("li");
      const label = document.createElement("span");
      label.textContent =
        `#${i}  D ${e.design.D.toFixed(2)} k ${e.design.k.toFixed(2)} ` +
        `G ${e.design.G.toFixed(1)} A ${e.design.A.toFixed(2)}  ` +
        `${e.mean_time_ms.toFixed(0)} ms / ${e.mean_error_cm.toFixed(2)} cm`;

      const tryButton = document.createElement("button");
      tryButton.textContent = "Try";
      tryButton.className = "try-button";
      tryButton.dataset.index = String(i);
      tryButton.addEventListener("click", () => this.showPreview(i));

      const pickButton = document.createElement("button");
      pickButton.textContent = "Pick";
      pickButton.className = "pick-button";
      pickButton.dataset.index = String(i);
      pickButton.addEventListener("click", () => this.addPick(i));

      item.append(label, tryButton, pickButton);
      list.appendChild(item);
    }
    this.root.appendChild(list);

    this.preview = document.createElement("div");
    this.preview.className = "try-preview";
    this.preview.hidden = true;
    this.root.appendChild(this.preview);

    this.picksLine = document.createElement("p");
    this.picksLine.className = "picks-line";
    this.root.appendChild(this.picksLine);

    const clearButton = document.createElement("button");
    clearButton.textContent = "Clear picks";
    clearButton.className = "clear-button";
    clearButton.addEventListener("click", () => this.clearPicks());

    this.submitButton = document.createElement("button");
    this.submitButton.textContent = "Submit decision";
    this.submitButton.className = "submit-button";
    this.submitButton.addEventListener("click", () => void this.submit());

    this.root.append(clearButton, this.submitButton);
    this.refresh();
    parent.appendChild(this.root);
  }

  addPick(index: number): void {
    if (!this.frontIndices.includes(index)) return;
    if (this.picks.length >= REQUIRED_PICKS) return;
    this.picks.push(index); // repeats allowed: a front of one can fill all 3
    this.refresh();
  }

  clearPicks(): void {
    this.picks.length = 0;
    this.refresh();
  }

  private showPreview(index: number): void {
    const e = this.evaluations[index];
    this.preview.hidden = false;
    this.preview.textContent =
      `Design #${index}: mean time ${e.mean_time_ms.toFixed(1)} ms ` +
      `(speed ${e.speed.toFixed(3)}), mean error ${e.mean_error_cm.toFixed(3)} cm ` +
      `(accuracy ${e.accuracy.toFixed(3)}) over ${e.trial_count} trials`;
  }

  private refresh(): void {
    this.picksLine.textContent = `Picks (${this.picks.length}/${REQUIRED_PICKS}): ${
      this.picks.length ? this.picks.map((i) => `#${i}`).join(", ") : "none"
    }`;
    this.submitButton.disabled = this.picks.length !== REQUIRED_PICKS;
  }

  private async submit(): Promise<void> {
    if (this.picks.length !== REQUIRED_PICKS) return;
    this.submitButton.disabled = true;
    try {
      await this.onSubmit([...this.picks]);
    } catch (err) {
      // Invalid picks are the server's call; show its explanation and let
      // the user adjust.
      this.preview.hidden = false;
      this.preview.textContent = `Decision rejected: ${(err as Error).message}`;
      this.submitButton.disabled = false;
    }
  }
}

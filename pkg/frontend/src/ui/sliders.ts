/** Parameter slider group for designer-led sessions. Values are clamped to
 *  the displayed ranges with a visible warning; the server re-validates. */

import { PARAM_SPECS, type Design } from "../types";

export class SliderPanel {
  readonly root: HTMLElement;
  private inputs = new Map<keyof Design, HTMLInputElement>();
  private readouts = new Map<keyof Design, HTMLElement>();
  private warning: HTMLElement;

  constructor(parent: HTMLElement, initial: Design) {
    this.root = document.createElement("div");
    this.root.className = "slider-panel";
    for (const spec of PARAM_SPECS) {
      const row = document.createElement("label");
      row.className = "slider-row";

      const caption = document.createElement("span");
      caption.className = "slider-label";
      caption.textContent = spec.label;

      const input = document.createElement("input");
      input.type = "range";
      input.min = String(spec.min);
      input.max = String(spec.max);
      input.step = String(spec.step);
      input.value = String(initial[spec.key]);
      input.dataset.param = spec.key;
      input.addEventListener("input", () => this.onInput(spec.key));

      const readout = document.createElement("span");
      readout.className = "slider-value";
      readout.textContent = input.value;

      row.append(caption, input, readout);
      this.root.appendChild(row);
      this.inputs.set(spec.key, input);
      this.readouts.set(spec.key, readout);
    }
    this.warning = document.createElement("p");
    this.warning.className = "slider-warning";
    this.warning.hidden = true;
    this.root.appendChild(this.warning);
    parent.appendChild(this.root);
  }

  get design(): Design {
    const out = {} as Design;
    for (const spec of PARAM_SPECS) {
      out[spec.key] = Number(this.inputs.get(spec.key)!.value);
    }
    return out;
  }

  /** Programmatic load (e.g. applying a chart selection to the sliders). */
  setDesign(design: Design): void {
    for (const spec of PARAM_SPECS) {
      this.setValue(spec.key, design[spec.key]);
    }
  }

  /** Clamp into range; show a warning when the requested value was outside. */
  setValue(key: keyof Design, value: number): void {
    const spec = PARAM_SPECS.find((s) => s.key === key)!;
    const clamped = Math.min(spec.max, Math.max(spec.min, value));
    if (clamped !== value) {
      this.warning.textContent = `${key} = ${value} is outside [${spec.min}, ${spec.max}]; clamped to ${clamped}`;
      this.warning.hidden = false;
    } else {
      this.warning.hidden = true;
    }
    const input = this.inputs.get(key)!;
    input.value = String(clamped);
    this.readouts.get(key)!.textContent = input.value;
  }

  private onInput(key: keyof Design): void {
    this.readouts.get(key)!.textContent = this.inputs.get(key)!.value;
    this.warning.hidden = true;
  }
}

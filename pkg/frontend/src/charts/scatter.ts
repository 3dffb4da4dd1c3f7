/** Objective-space scatter: one circle per evaluation at (speed, accuracy),
 *  Pareto-front members joined by a red line. Clicking a point updates the
 *  shared selection, which also drives the parallel-coordinates chart. */

import type { Evaluation } from "../types";
import type { ChartSelection, SelectionStore } from "../selection";
import { COLORS, extent, linearScale, svgElement } from "./svg";

const WIDTH = 360;
const HEIGHT = 300;
const MARGIN = 36;

export class ScatterChart {
  private svg: SVGSVGElement;
  private evaluations: Evaluation[] = [];
  private frontIndices: number[] = [];

  constructor(
    parent: HTMLElement,
    private store: SelectionStore,
  ) {
    this.svg = svgElement("svg", {
      width: WIDTH,
      height: HEIGHT,
      class: "scatter-chart",
      viewBox: `0 0 ${WIDTH} ${HEIGHT}`,
    });
    parent.appendChild(this.svg);
    this.store.subscribe((sel) => this.applySelection(sel));
  }

  render(evaluations: Evaluation[], frontIndices: number[]): void {
    this.evaluations = evaluations;
    this.frontIndices = frontIndices;
    this.svg.replaceChildren();
    if (evaluations.length === 0) return;

    const x = linearScale(extent(evaluations.map((e) => e.speed)), [
      MARGIN,
      WIDTH - MARGIN,
    ]);
    const y = linearScale(extent(evaluations.map((e) => e.accuracy)), [
      HEIGHT - MARGIN,
      MARGIN,
    ]);

    this.svg.appendChild(
      svgElement("line", {
        x1: MARGIN, y1: HEIGHT - MARGIN, x2: WIDTH - MARGIN, y2: HEIGHT - MARGIN,
        stroke: COLORS.axis, class: "axis axis-x",
      }),
    );
    this.svg.appendChild(
      svgElement("line", {
        x1: MARGIN, y1: MARGIN, x2: MARGIN, y2: HEIGHT - MARGIN,
        stroke: COLORS.axis, class: "axis axis-y",
      }),
    );

    // Pareto front, ordered along the speed axis and joined in red.
    const front = [...this.frontIndices].sort(
      (a, b) => evaluations[a].speed - evaluations[b].speed,
    );
    if (front.length > 1) {
      this.svg.appendChild(
        svgElement("polyline", {
          class: "front-line",
          fill: "none",
          stroke: COLORS.frontLine,
          "stroke-width": 1.5,
          points: front
            .map((i) => `${x(evaluations[i].speed)},${y(evaluations[i].accuracy)}`)
            .join(" "),
        }),
      );
    }

    const newest = evaluations.length - 1;
    evaluations.forEach((e, i) => {
      const circle = svgElement("circle", {
        class: i === newest ? "pt newest" : "pt",
        "data-index": i,
        cx: x(e.speed),
        cy: y(e.accuracy),
        r: i === newest ? 6 : 4,
        fill: i === newest ? COLORS.newest : COLORS.point,
      });
      const title = svgElement("title");
      title.textContent =
        `#${i}  time ${e.mean_time_ms.toFixed(1)} ms (speed ${e.speed.toFixed(3)})` +
        `  error ${e.mean_error_cm.toFixed(3)} cm (accuracy ${e.accuracy.toFixed(3)})`;
      circle.appendChild(title);
      circle.addEventListener("click", () => this.store.select(i));
      circle.addEventListener("mouseenter", () => this.store.hover(i));
      circle.addEventListener("mouseleave", () => this.store.hover(null));
      this.svg.appendChild(circle);
    });
    this.applySelection(this.store.current);
  }

  private applySelection(sel: ChartSelection): void {
    for (const node of this.svg.querySelectorAll(".pt")) {
      const i = Number(node.getAttribute("data-index"));
      const selected = sel.selectedEvaluationIndex === i;
      node.classList.toggle("selected", selected);
      node.classList.toggle("hovered", sel.hoverIndex === i);
      if (selected) {
        node.setAttribute("fill", COLORS.selected);
      } else {
        node.setAttribute(
          "fill",
          i === this.evaluations.length - 1 ? COLORS.newest : COLORS.point,
        );
      }
    }
  }
}

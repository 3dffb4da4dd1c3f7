/** Parallel-coordinates view of the evaluated designs: one vertical axis per
 *  parameter (D, k, G, A), one poly-line per evaluation. Shares the selection
 *  store with the scatter chart so selecting on either side highlights both. */

import { PARAM_SPECS, type Evaluation } from "../types";
import type { ChartSelection, SelectionStore } from "../selection";
import { COLORS, linearScale, svgElement } from "./svg";

const WIDTH = 420;
const HEIGHT = 300;
const MARGIN = 36;

export class ParallelCoordinatesChart {
  private svg: SVGSVGElement;

  constructor(
    parent: HTMLElement,
    private store: SelectionStore,
  ) {
    this.svg = svgElement("svg", {
      width: WIDTH,
      height: HEIGHT,
      class: "parallel-chart",
      viewBox: `0 0 ${WIDTH} ${HEIGHT}`,
    });
    parent.appendChild(this.svg);
    this.store.subscribe((sel) => this.applySelection(sel));
  }

  render(evaluations: Evaluation[]): void {
    this.svg.replaceChildren();
    if (evaluations.length === 0) return;

    const axisX = linearScale([0, PARAM_SPECS.length - 1], [MARGIN, WIDTH - MARGIN]);
    const axisY = PARAM_SPECS.map((spec) =>
      linearScale([spec.min, spec.max], [HEIGHT - MARGIN, MARGIN]),
    );

    PARAM_SPECS.forEach((spec, a) => {
      this.svg.appendChild(
        svgElement("line", {
          class: "axis",
          x1: axisX(a), y1: MARGIN, x2: axisX(a), y2: HEIGHT - MARGIN,
          stroke: COLORS.axis,
        }),
      );
      const label = svgElement("text", {
        class: "axis-label",
        x: axisX(a),
        y: HEIGHT - MARGIN + 16,
        "text-anchor": "middle",
        "font-size": 11,
      });
      label.textContent = spec.key;
      this.svg.appendChild(label);
    });

    const newest = evaluations.length - 1;
    evaluations.forEach((e, i) => {
      const points = PARAM_SPECS.map(
        (spec, a) => `${axisX(a)},${axisY[a](e.design[spec.key])}`,
      ).join(" ");
      const line = svgElement("polyline", {
        class: i === newest ? "line newest" : "line",
        "data-index": i,
        points,
        fill: "none",
        stroke: i === newest ? COLORS.newest : COLORS.point,
        "stroke-width": i === newest ? 2.5 : 1.5,
      });
      const title = svgElement("title");
      title.textContent = `#${i}  D ${e.design.D.toFixed(3)}  k ${e.design.k.toFixed(3)}  G ${e.design.G.toFixed(2)}  A ${e.design.A.toFixed(2)}`;
      line.appendChild(title);
      line.addEventListener("click", () => this.store.select(i));
      line.addEventListener("mouseenter", () => this.store.hover(i));
      line.addEventListener("mouseleave", () => this.store.hover(null));
      this.svg.appendChild(line);
    });
    this.applySelection(this.store.current);
  }

  private applySelection(sel: ChartSelection): void {
    for (const node of this.svg.querySelectorAll(".line")) {
      const i = Number(node.getAttribute("data-index"));
      const selected = sel.selectedEvaluationIndex === i;
      node.classList.toggle("selected", selected);
      node.classList.toggle("hovered", sel.hoverIndex === i);
      if (selected) {
        node.setAttribute("stroke", COLORS.selected);
        node.setAttribute("stroke-width", "3");
      } else if (node.classList.contains("newest")) {
        node.setAttribute("stroke", COLORS.newest);
        node.setAttribute("stroke-width", "2.5");
      } else {
        node.setAttribute("stroke", COLORS.point);
        node.setAttribute("stroke-width", "1.5");
      }
    }
  }
}

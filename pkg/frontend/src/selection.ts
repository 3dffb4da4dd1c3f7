/** Shared selection state linking the scatter and parallel-coordinates
 *  charts: both render from the same ChartSelection and both may update it. */

export interface ChartSelection {
  selectedEvaluationIndex: number | null;
  hoverIndex: number | null;
}

export const EMPTY_SELECTION: ChartSelection = {
  selectedEvaluationIndex: null,
  hoverIndex: null,
};

function valid(index: number | null, count: number): number | null {
  if (index === null || !Number.isInteger(index)) return null;
  return index >= 0 && index < count ? index : null;
}

/** Drop any index that no longer references an existing evaluation. */
export function clampSelection(sel: ChartSelection, count: number): ChartSelection {
  return {
    selectedEvaluationIndex: valid(sel.selectedEvaluationIndex, count),
    hoverIndex: valid(sel.hoverIndex, count),
  };
}

export type SelectionListener = (sel: ChartSelection) => void;

/** Tiny observable store so every chart stays in sync from either side. */
export class SelectionStore {
  private sel: ChartSelection = EMPTY_SELECTION;
  private listeners: SelectionListener[] = [];

  constructor(private evaluationCount = 0) {}

  get current(): ChartSelection {
    return this.sel;
  }

  setEvaluationCount(count: number): void {
    this.evaluationCount = count;
    this.update(this.sel);
  }

  select(index: number | null): void {
    this.update({ ...this.sel, selectedEvaluationIndex: index });
  }

  hover(index: number | null): void {
    this.update({ ...this.sel, hoverIndex: index });
  }

  subscribe(listener: SelectionListener): void {
    this.listeners.push(listener);
    listener(this.sel);
  }

  private update(next: ChartSelection): void {
    this.sel = clampSelection(next, this.evaluationCount);
    for (const listener of this.listeners) listener(this.sel);
  }
}

// Panel view-models and grid geometry. Everything here is pure: captions
// format numbers straight out of API payloads, and the geometry helpers
// only translate data coordinates to pixels.

import type { BoundaryResponse, FitResponse } from "./api.js";
import type { PanelConfig } from "./state.js";

export type PanelView =
  | { kind: "placeholder"; title: string }
  | { kind: "error"; title: string; message: string }
  | {
      kind: "model";
      title: string;
      caption: string;
      fit: FitResponse;
      grid: BoundaryResponse;
    };

export function panelTitle(cfg: PanelConfig): string {
  if (cfg.variant === "axis") return "axis baseline";
  if (cfg.variant === "mod2") {
    return `mod2 (n_s ${cfg.minNodeSize}, ent_s ${cfg.entropyThreshold})`;
  }
  return `${cfg.variant} (rule ${cfg.rule})`;
}

export function formatPercent(x: number): string {
  return `${(100 * x).toFixed(2)}%`;
}

export function placeholderView(cfg: PanelConfig): PanelView {
  return { kind: "placeholder", title: panelTitle(cfg) };
}

export function errorView(cfg: PanelConfig, message: string): PanelView {
  return { kind: "error", title: panelTitle(cfg), message };
}

export function modelView(
  cfg: PanelConfig,
  fit: FitResponse,
  grid: BoundaryResponse,
): PanelView {
  return {
    kind: "model",
    title: panelTitle(cfg),
    caption: `training error ${formatPercent(fit.training_error)}`,
    fit,
    grid,
  };
}

// ------------------------------------------------------------ grid geometry

/** Grids arrive flattened with x1 as the slow axis. */
export function gridLabel(grid: BoundaryResponse, i: number, j: number): number {
  return grid.labels[i * grid.resolution + j];
}

export function gridBorder(grid: BoundaryResponse, i: number, j: number): boolean {
  return grid.border[i * grid.resolution + j] === 1;
}

export function nearestIndex(axis: number[], value: number): number {
  let best = 0;
  for (let i = 1; i < axis.length; i++) {
    if (Math.abs(axis[i] - value) < Math.abs(axis[best] - value)) best = i;
  }
  return best;
}

export interface Scale {
  px(x1: number): number;
  py(x2: number): number;
  cellW: number;
  cellH: number;
}

/** Map data coordinates into a width x height pixel box, x2 pointing up. */
export function makeScale(
  bbox: number[][],
  width: number,
  height: number,
  resolution = 1,
): Scale {
  const [x1lo, x1hi] = bbox[0];
  const [x2lo, x2hi] = bbox[1];
  return {
    px: (x1) => ((x1 - x1lo) / (x1hi - x1lo)) * width,
    py: (x2) => height - ((x2 - x2lo) / (x2hi - x2lo)) * height,
    cellW: width / resolution,
    cellH: height / resolution,
  };
}

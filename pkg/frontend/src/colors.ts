// Fixed per-class colors, identical across panels and tabs so boundaries
// can be compared side by side. Matches the backend's report palette.

export const PALETTE = [
  "#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd",
  "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf",
] as const;

export function classColor(classId: number): string {
  return PALETTE[(classId - 1) % PALETTE.length];
}

/** Washed-out version used for boundary region fills so the scatter stays
 * readable on top. */
export function regionColor(classId: number, alpha = 0.28): string {
  const hex = classColor(classId);
  const r = parseInt(hex.slice(1, 3), 16);
  const g = parseInt(hex.slice(3, 5), 16);
  const b = parseInt(hex.slice(5, 7), 16);
  return `rgba(${r},${g},${b},${alpha})`;
}

// Explorer state: one tab per scenario, three model panels per tab, and a
// URL-hash codec so a view can be shared and reloaded. Decoding is
// tolerant: anything missing or out of range falls back to the default, so
// an old or mangled link still produces a working view.

import type { Scenario, Variant } from "./api.js";

export type TabId = Scenario;

export const TAB_IDS: readonly TabId[] = ["basic", "outlier", "mixture"];

export const TAB_LABELS: Record<TabId, string> = {
  basic: "Basic-Sim",
  outlier: "Sim-Outlier",
  mixture: "MixSim",
};

export interface SimControls {
  n: number;
  k: number;
  seed: number;
  separation: number;
  elongation: number;
  outlierFraction: number;
  overlap: number;
}

export interface PanelConfig {
  variant: Variant;
  rule: number;
  minNodeSize: number;
  entropyThreshold: number;
}

export interface TabState {
  controls: SimControls;
  panels: PanelConfig[];
}

export interface ExplorerState {
  tab: TabId;
  tabs: Record<TabId, TabState>;
}

// Fields that are actually shown, validated, encoded in the URL and sent
// to the API for each tab; the rest of SimControls is dormant there.
export const TAB_FIELDS: Record<TabId, readonly (keyof SimControls)[]> = {
  basic: ["n", "k", "seed", "separation", "elongation"],
  outlier: ["n", "k", "seed", "separation", "outlierFraction"],
  mixture: ["n", "k", "seed", "overlap"],
};

const API_NAMES: Record<keyof SimControls, string> = {
  n: "n",
  k: "k",
  seed: "seed",
  separation: "separation",
  elongation: "elongation",
  outlierFraction: "outlier_fraction",
  overlap: "overlap",
};

export function defaultControls(tab: TabId): SimControls {
  const base = {
    n: 300, k: 3, seed: 1,
    separation: 6, elongation: 1, outlierFraction: 0.15, overlap: 0.3,
  };
  if (tab === "basic") return { ...base, separation: 5, elongation: 3 };
  if (tab === "outlier") return { ...base, n: 600, k: 2, seed: 3 };
  return { ...base, seed: 6 };
}

export function defaultPanels(): PanelConfig[] {
  const variants: Variant[] = ["axis", "original", "mod2"];
  return variants.map((variant) => ({
    variant, rule: 1, minNodeSize: 10, entropyThreshold: 0.01,
  }));
}

export function defaultState(): ExplorerState {
  const tabs = {} as Record<TabId, TabState>;
  for (const tab of TAB_IDS) {
    tabs[tab] = { controls: defaultControls(tab), panels: defaultPanels() };
  }
  return { tab: "basic", tabs };
}

export function simBody(tab: TabId, c: SimControls): Record<string, unknown> {
  const body: Record<string, unknown> = { scenario: tab };
  for (const field of TAB_FIELDS[tab]) body[API_NAMES[field]] = c[field];
  return body;
}

export function fitBody(datasetId: string, cfg: PanelConfig): Record<string, unknown> {
  const body: Record<string, unknown> = { dataset_id: datasetId, variant: cfg.variant };
  if (cfg.variant === "original" || cfg.variant === "mod1") {
    body.rule = cfg.rule;
  } else if (cfg.variant === "mod2") {
    body.min_node_size = cfg.minNodeSize;
    body.entropy_threshold = cfg.entropyThreshold;
  }
  return body;
}

// ---------------------------------------------------------------- validation

const MAX_POINTS = 50000;

export function validateControls(
  tab: TabId,
  c: SimControls,
): Partial<Record<keyof SimControls, string>> {
  const errors: Partial<Record<keyof SimControls, string>> = {};
  const fields = TAB_FIELDS[tab];
  if (!Number.isInteger(c.k) || c.k < 2 || c.k > 10) {
    errors.k = "2 to 10 classes";
  }
  if (!Number.isInteger(c.n) || c.n < c.k || c.n > MAX_POINTS) {
    errors.n = `need ${Math.max(c.k, 2)} to ${MAX_POINTS} points`;
  }
  if (!Number.isInteger(c.seed) || c.seed < 0) errors.seed = "non-negative integer";
  if (fields.includes("separation") && !(c.separation > 0)) {
    errors.separation = "must be positive";
  }
  if (fields.includes("elongation") && !(c.elongation > 0)) {
    errors.elongation = "must be positive";
  }
  if (fields.includes("outlierFraction")
      && !(c.outlierFraction > 0 && c.outlierFraction < 0.5)) {
    errors.outlierFraction = "must lie in (0, 0.5)";
  }
  if (fields.includes("overlap") && !(c.overlap >= 0 && c.overlap < 1)) {
    errors.overlap = "must lie in [0, 1)";
  }
  for (const key of Object.keys(errors) as (keyof SimControls)[]) {
    if (!fields.includes(key)) delete errors[key];
  }
  return errors;
}

export function validatePanel(cfg: PanelConfig): Partial<Record<string, string>> {
  const errors: Partial<Record<string, string>> = {};
  if (cfg.variant === "original" || cfg.variant === "mod1") {
    if (!Number.isInteger(cfg.rule) || cfg.rule < 1 || cfg.rule > 8) {
      errors.rule = "rule is 1 to 8";
    }
  }
  if (cfg.variant === "mod2") {
    if (!Number.isInteger(cfg.minNodeSize) || cfg.minNodeSize < 1) {
      errors.minNodeSize = "positive integer";
    }
    if (!(cfg.entropyThreshold >= 0)) errors.entropyThreshold = "must be >= 0";
  }
  return errors;
}

// ----------------------------------------------------------------- URL codec

const SHORT: Partial<Record<keyof SimControls, string>> = {
  separation: "sep",
  elongation: "elo",
  outlierFraction: "frac",
  overlap: "ov",
};

function encodePanel(cfg: PanelConfig): string {
  if (cfg.variant === "original" || cfg.variant === "mod1") {
    return `${cfg.variant}:${cfg.rule}`;
  }
  if (cfg.variant === "mod2") {
    return `mod2:${cfg.minNodeSize}:${cfg.entropyThreshold}`;
  }
  return cfg.variant;
}

function decodePanel(token: string, fallback: PanelConfig): PanelConfig {
  const parts = token.split(":");
  const cfg = { ...fallback };
  const variant = parts[0];
  if (variant !== "axis" && variant !== "original"
      && variant !== "mod1" && variant !== "mod2") {
    return cfg;
  }
  cfg.variant = variant;
  if (variant === "original" || variant === "mod1") {
    const rule = Number(parts[1]);
    if (Number.isInteger(rule) && rule >= 1 && rule <= 8) cfg.rule = rule;
  } else if (variant === "mod2") {
    const ns = Number(parts[1]);
    const ent = Number(parts[2]);
    if (Number.isInteger(ns) && ns >= 1) cfg.minNodeSize = ns;
    if (Number.isFinite(ent) && ent >= 0) cfg.entropyThreshold = ent;
  }
  return cfg;
}

/** Encode the active tab's view as a URL hash fragment (no leading '#'). */
export function encodeState(state: ExplorerState): string {
  const params = new URLSearchParams();
  params.set("tab", state.tab);
  const { controls, panels } = state.tabs[state.tab];
  for (const field of TAB_FIELDS[state.tab]) {
    params.set(SHORT[field] ?? field, String(controls[field]));
  }
  panels.forEach((cfg, i) => params.set(`p${i + 1}`, encodePanel(cfg)));
  return params.toString();
}

/** Rebuild a state from a hash fragment; unknown or invalid pieces fall
 * back to defaults, so this never throws. */
export function decodeState(hash: string): ExplorerState {
  const state = defaultState();
  const params = new URLSearchParams(hash.replace(/^#/, ""));
  const tab = params.get("tab");
  if (tab === "basic" || tab === "outlier" || tab === "mixture") state.tab = tab;
  const target = state.tabs[state.tab];
  for (const field of TAB_FIELDS[state.tab]) {
    const raw = params.get(SHORT[field] ?? field);
    if (raw === null) continue;
    const value = Number(raw);
    if (!Number.isFinite(value)) continue;
    const probe = { ...target.controls, [field]: value };
    if (!(field in validateControls(state.tab, probe))) {
      target.controls = probe;
    }
  }
  target.panels = target.panels.map((fallback, i) => {
    const token = params.get(`p${i + 1}`);
    return token === null ? fallback : decodePanel(token, fallback);
  });
  return state;
}

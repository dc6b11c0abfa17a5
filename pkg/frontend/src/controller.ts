// Orchestrates the simulate -> fit -> boundary flow behind the view. The
// controller owns the explorer state, the per-tab dataset, and one view
// per panel; concurrent requests are allowed and stale responses are
// discarded through per-slot sequence gates.

import { ApiClient, ApiHttpError } from "./api.js";
import type { SimulateResponse } from "./api.js";
import {
  ExplorerState,
  PanelConfig,
  SimControls,
  TAB_IDS,
  TabId,
  defaultState,
  encodeState,
  fitBody,
  simBody,
  validateControls,
  validatePanel,
} from "./state.js";
import {
  PanelView,
  errorView,
  modelView,
  placeholderView,
} from "./panels.js";
import { SequenceGate } from "./seq.js";

export const DEFAULT_RESOLUTION = 61;

function describe(err: unknown): string {
  if (err instanceof ApiHttpError) return `${err.code}: ${err.message}`;
  return err instanceof Error ? err.message : String(err);
}

export class ExplorerController {
  state: ExplorerState;
  datasets: Partial<Record<TabId, SimulateResponse>> = {};
  views: Record<TabId, PanelView[]>;
  banner: string | null = null;
  fieldErrors: Partial<Record<string, string>> = {};
  onChange: (() => void) | null = null;

  private resolution: number;
  private simGates: Record<TabId, SequenceGate>;
  private panelGates: Record<TabId, SequenceGate[]>;

  constructor(
    private api: ApiClient,
    state?: ExplorerState,
    options?: { resolution?: number },
  ) {
    this.state = state ?? defaultState();
    this.resolution = options?.resolution ?? DEFAULT_RESOLUTION;
    this.views = {} as Record<TabId, PanelView[]>;
    this.simGates = {} as Record<TabId, SequenceGate>;
    this.panelGates = {} as Record<TabId, SequenceGate[]>;
    for (const tab of TAB_IDS) {
      this.views[tab] = this.state.tabs[tab].panels.map(placeholderView);
      this.simGates[tab] = new SequenceGate();
      this.panelGates[tab] = this.state.tabs[tab].panels.map(
        () => new SequenceGate(),
      );
    }
  }

  private notify(): void {
    this.onChange?.();
  }

  encodeUrl(): string {
    return encodeState(this.state);
  }

  /** Switch tabs; the first visit simulates and fits automatically. */
  async activate(tab: TabId): Promise<void> {
    this.state.tab = tab;
    this.notify();
    if (!this.datasets[tab]) await this.runTab(tab);
  }

  setControls(tab: TabId, patch: Partial<SimControls>): void {
    const t = this.state.tabs[tab];
    t.controls = { ...t.controls, ...patch };
    this.notify();
  }

  setPanelConfig(tab: TabId, idx: number, patch: Partial<PanelConfig>): void {
    const panels = this.state.tabs[tab].panels;
    panels[idx] = { ...panels[idx], ...patch };
    this.notify();
  }

  /** Validate, simulate, then fit every panel. Invalid controls produce
   * field errors and no API call at all. */
  async runTab(tab: TabId): Promise<void> {
    const controls = this.state.tabs[tab].controls;
    const errors = validateControls(tab, controls);
    this.fieldErrors = errors;
    if (Object.keys(errors).length > 0) {
      this.notify();
      return;
    }
    const seq = this.simGates[tab].issue();
    let sim: SimulateResponse;
    try {
      sim = await this.api.simulate(simBody(tab, controls));
    } catch (err) {
      if (this.simGates[tab].accept(seq)) {
        this.banner = describe(err);
        this.notify();
      }
      return;
    }
    if (!this.simGates[tab].accept(seq)) return;
    this.banner = null;
    this.datasets[tab] = sim;
    this.notify();
    await Promise.all(
      this.state.tabs[tab].panels.map((_, i) => this.refitPanel(tab, i)),
    );
  }

  /** Fit and rasterize one panel; the other panels' views are untouched. */
  async refitPanel(tab: TabId, idx: number): Promise<void> {
    const sim = this.datasets[tab];
    if (!sim) return;
    const cfg = this.state.tabs[tab].panels[idx];
    const panelErrors = validatePanel(cfg);
    if (Object.keys(panelErrors).length > 0) {
      this.fieldErrors = { ...this.fieldErrors, ...panelErrors };
      this.notify();
      return;
    }
    const seq = this.panelGates[tab][idx].issue();
    try {
      const fit = await this.api.fit(fitBody(sim.dataset_id, cfg));
      const grid = await this.api.boundary({
        model_id: fit.model_id,
        resolution: this.resolution,
      });
      if (!this.panelGates[tab][idx].accept(seq)) return;
      this.views[tab][idx] = modelView(cfg, fit, grid);
    } catch (err) {
      if (!this.panelGates[tab][idx].accept(seq)) return;
      this.views[tab][idx] = errorView(cfg, describe(err));
    }
    this.notify();
  }
}

// DOM wiring. All logic lives in controller.ts / state.ts / panels.ts;
// this file only builds elements, forwards events, and paints canvases.

import { ApiClient } from "./api.js";
import { classColor, regionColor } from "./colors.js";
import { ExplorerController } from "./controller.js";
import {
  PanelView,
  gridBorder,
  gridLabel,
  makeScale,
  panelTitle,
} from "./panels.js";
import {
  SimControls,
  TAB_FIELDS,
  TAB_IDS,
  TAB_LABELS,
  TabId,
  decodeState,
} from "./state.js";

const PANEL_W = 360;
const PANEL_H = 320;

const CONTROL_LABELS: Record<keyof SimControls, string> = {
  n: "n",
  k: "K",
  seed: "seed",
  separation: "separation",
  elongation: "elongation",
  outlierFraction: "outlier fraction",
  overlap: "overlap",
};

function apiBase(): string {
  const param = new URLSearchParams(window.location.search).get("api");
  if (param) return param.replace(/\/$/, "");
  if (window.location.port === "8000") return "";
  return "http://127.0.0.1:8000";
}

const controller = new ExplorerController(
  new ApiClient(apiBase()),
  decodeState(window.location.hash),
);

const root = document.getElementById("app")!;
const tabBar = el("div", "tabs");
const banner = el("div", "banner");
const controlsForm = el("div", "controls");
const panelRow = el("div", "panels");
root.append(tabBar, banner, controlsForm, panelRow);

function el(tag: string, cls?: string, text?: string): HTMLElement {
  const node = document.createElement(tag);
  if (cls) node.className = cls;
  if (text !== undefined) node.textContent = text;
  return node;
}

function renderTabs(): void {
  tabBar.replaceChildren();
  for (const tab of TAB_IDS) {
    const btn = el("button", tab === controller.state.tab ? "tab active" : "tab",
                   TAB_LABELS[tab]);
    btn.onclick = () => void controller.activate(tab);
    tabBar.append(btn);
  }
}

function numberInput(field: keyof SimControls, value: number): HTMLElement {
  const wrap = el("label", "field");
  wrap.append(el("span", "name", CONTROL_LABELS[field]));
  const input = document.createElement("input");
  input.type = "number";
  input.step = "any";
  input.value = String(value);
  input.onchange = () => {
    controller.setControls(controller.state.tab, {
      [field]: Number(input.value),
    } as Partial<SimControls>);
  };
  wrap.append(input);
  const err = controller.fieldErrors[field];
  if (err) wrap.append(el("span", "error", err));
  return wrap;
}

function renderControls(): void {
  controlsForm.replaceChildren();
  const tab = controller.state.tab;
  const controls = controller.state.tabs[tab].controls;
  for (const field of TAB_FIELDS[tab]) {
    controlsForm.append(numberInput(field, controls[field]));
  }
  const resim = el("button", "action", "Re-simulate") as HTMLButtonElement;
  resim.onclick = () => void controller.runTab(tab);
  controlsForm.append(resim);
}

function panelConfigControls(tab: TabId, idx: number): HTMLElement {
  const cfg = controller.state.tabs[tab].panels[idx];
  const box = el("div", "panel-config");

  const variant = document.createElement("select");
  for (const v of ["axis", "original", "mod1", "mod2"]) {
    const opt = document.createElement("option");
    opt.value = v;
    opt.textContent = v;
    opt.selected = v === cfg.variant;
    variant.append(opt);
  }
  variant.onchange = () => {
    controller.setPanelConfig(tab, idx, {
      variant: variant.value as typeof cfg.variant,
    });
  };
  box.append(variant);

  if (cfg.variant === "original" || cfg.variant === "mod1") {
    const rule = document.createElement("select");
    for (let r = 1; r <= 8; r++) {
      const opt = document.createElement("option");
      opt.value = String(r);
      opt.textContent = `rule ${r}`;
      opt.selected = r === cfg.rule;
      rule.append(opt);
    }
    rule.onchange = () => {
      controller.setPanelConfig(tab, idx, { rule: Number(rule.value) });
    };
    box.append(rule);
  } else if (cfg.variant === "mod2") {
    const ns = document.createElement("input");
    ns.type = "number";
    ns.value = String(cfg.minNodeSize);
    ns.title = "min node size";
    ns.onchange = () => {
      controller.setPanelConfig(tab, idx, { minNodeSize: Number(ns.value) });
    };
    const ent = document.createElement("input");
    ent.type = "number";
    ent.step = "any";
    ent.value = String(cfg.entropyThreshold);
    ent.title = "entropy threshold";
    ent.onchange = () => {
      controller.setPanelConfig(tab, idx, {
        entropyThreshold: Number(ent.value),
      });
    };
    box.append(ns, ent);
  }

  const fit = el("button", "action", "Fit") as HTMLButtonElement;
  fit.onclick = () => void controller.refitPanel(tab, idx);
  box.append(fit);
  return box;
}

function paint(canvas: HTMLCanvasElement, view: PanelView, tab: TabId): void {
  const ctx = canvas.getContext("2d")!;
  ctx.clearRect(0, 0, canvas.width, canvas.height);
  if (view.kind !== "model") {
    ctx.fillStyle = "#f4f4f4";
    ctx.fillRect(0, 0, canvas.width, canvas.height);
    ctx.fillStyle = "#888";
    ctx.font = "13px sans-serif";
    ctx.textAlign = "center";
    ctx.fillText(
      view.kind === "error" ? view.message : "no model fitted yet",
      canvas.width / 2, canvas.height / 2, canvas.width - 20,
    );
    return;
  }
  const grid = view.grid;
  const res = grid.resolution;
  const scale = makeScale(grid.bbox, canvas.width, canvas.height, res);
  for (let i = 0; i < res; i++) {
    for (let j = 0; j < res; j++) {
      ctx.fillStyle = regionColor(gridLabel(grid, i, j));
      const x = scale.px(grid.x1[i]) - scale.cellW / 2;
      const y = scale.py(grid.x2[j]) - scale.cellH / 2;
      ctx.fillRect(x, y, scale.cellW + 1, scale.cellH + 1);
    }
  }
  ctx.fillStyle = "rgba(40,40,40,0.55)";
  for (let i = 0; i < res; i++) {
    for (let j = 0; j < res; j++) {
      if (gridBorder(grid, i, j)) {
        ctx.fillRect(scale.px(grid.x1[i]) - 1, scale.py(grid.x2[j]) - 1, 2, 2);
      }
    }
  }
  const sim = controller.datasets[tab];
  if (sim) {
    for (let m = 0; m < sim.points.length; m++) {
      const [x1, x2] = sim.points[m];
      ctx.beginPath();
      ctx.arc(scale.px(x1), scale.py(x2), 2.4, 0, 2 * Math.PI);
      ctx.fillStyle = classColor(sim.labels[m]);
      ctx.fill();
      ctx.strokeStyle = "rgba(255,255,255,0.8)";
      ctx.lineWidth = 0.7;
      ctx.stroke();
    }
  }
}

function renderPanels(): void {
  panelRow.replaceChildren();
  const tab = controller.state.tab;
  controller.views[tab].forEach((view, idx) => {
    const card = el("div", "panel");
    const cfg = controller.state.tabs[tab].panels[idx];
    card.append(el("h3", "title", panelTitle(cfg)));
    card.append(panelConfigControls(tab, idx));
    const canvas = document.createElement("canvas");
    canvas.width = PANEL_W;
    canvas.height = PANEL_H;
    card.append(canvas);
    paint(canvas, view, tab);
    const caption = view.kind === "model" ? view.caption : "";
    card.append(el("div", "caption", caption));
    panelRow.append(card);
  });
}

function render(): void {
  renderTabs();
  banner.textContent = controller.banner ?? "";
  banner.style.display = controller.banner ? "block" : "none";
  renderControls();
  renderPanels();
  const hash = `#${controller.encodeUrl()}`;
  if (window.location.hash !== hash) history.replaceState(null, "", hash);
}

controller.onChange = render;
window.addEventListener("hashchange", () => {
  const next = decodeState(window.location.hash);
  controller.state.tabs[next.tab] = next.tabs[next.tab];
  void controller.activate(next.tab);
});

render();
void controller.activate(controller.state.tab);

/** Browser bootstrap: wires the DOM shell to the pure scene builders.
 *
 * With a reachable engine every payload comes from /api; without one
 * (file:// or server gone) the app falls back to client-side display
 * scaffolding over the loaded document.  All interaction funnels into
 * one state object and a single render pass.
 */

import { ApiClient } from "./api.js";
import { downloadName, renderPng } from "./export.js";
import { localGeo, localLayerGraph, localMetaUnion, localStack, localUnion } from "./fallback.js";
import { localView } from "./localview.js";
import { buildDashboardScene } from "./modes/dashboard.js";
import { buildDataScene, TableKind } from "./modes/data.js";
import { buildGridScene } from "./modes/grid.js";
import { buildLayerScene } from "./modes/layerview.js";
import { buildMapScene } from "./modes/map.js";
import { buildMetaScene } from "./modes/meta.js";
import { buildNetworkScene } from "./modes/network.js";
import { constantStyles, NodeStyles, stylesFromBundle } from "./modes/styles.js";
import { paint } from "./painter.js";
import { Scene } from "./scene.js";
import { SAMPLE_NETWORK } from "./sample.js";
import {
  initialState,
  LatestWins,
  Mode,
  MODES,
  ModeState,
  Selection,
  setFilters,
  setMode,
  setSelection,
  viewStateBody,
} from "./state.js";
import {
  ComparePayload,
  FilteredView,
  LayerGraphLayout,
  MetaPayload,
  MetricsBundle,
  NetworkDocument,
  SessionEnvelope,
  StackPayload,
  UnionLayout,
} from "./types.js";

const MODE_LABELS: Record<Mode, string> = {
  network: "Network",
  map: "Map",
  layer: "Layers",
  grid: "Grid",
  meta: "Aggregate",
  dashboard: "Statistics",
  data: "Data",
};

interface Payloads {
  doc: NetworkDocument | null;
  view: FilteredView | null;
  metrics: MetricsBundle | null;
  stack: StackPayload | null;
  union: UnionLayout | null;
  layerGraph: LayerGraphLayout | null;
  geo: LayerGraphLayout | null;
  meta: MetaPayload | null;
  compare: ComparePayload | null;
}

function el<T extends HTMLElement>(id: string): T {
  const found = document.getElementById(id);
  if (!found) throw new Error(`missing element #${id}`);
  return found as T;
}

class App {
  state: ModeState = initialState();
  client: ApiClient | null = null;
  gate = new LatestWins();
  tableKind: TableKind = "state_nodes";
  scrollRow = 0;
  lastScene: Scene | null = null;
  payloads: Payloads = {
    doc: null,
    view: null,
    metrics: null,
    stack: null,
    union: null,
    layerGraph: null,
    geo: null,
    meta: null,
    compare: null,
  };

  private canvas = el<HTMLCanvasElement>("canvas");
  private statusEl = el<HTMLElement>("status");
  private connectionEl = el<HTMLElement>("connection");
  private legendEl = el<HTMLElement>("legend");

  async start(): Promise<void> {
    this.buildTabs();
    this.wireControls();
    await this.connect();
    if (this.payloads.doc === null) {
      await this.adoptDocument(SAMPLE_NETWORK, "bundled sample");
    }
    window.addEventListener("resize", () => this.render());
    this.render();
  }

  // -- connection ------------------------------------------------------------

  private async connect(): Promise<void> {
    const client = new ApiClient("");
    try {
      await client.health();
      this.client = client;
      this.connectionEl.textContent = "engine connected";
      this.connectionEl.className = "ok";
      try {
        this.payloads.doc = await client.network();
        await this.refreshAll();
      } catch {
        // connected but empty; the sample upload in start() fills it
        this.payloads.doc = null;
      }
    } catch {
      this.client = null;
      this.connectionEl.textContent = "file mode (no engine)";
      this.connectionEl.className = "warn";
    }
  }

  /** Make `doc` the live network, engine-side when connected. */
  async adoptDocument(doc: NetworkDocument, label: string): Promise<void> {
    if (this.client !== null) {
      try {
        const report = await this.client.uploadNetwork(doc);
        if (!report.valid) {
          this.setStatus(`rejected: ${report.errors.map((e) => `${e.code} at ${e.path}`).join("; ")}`);
          return;
        }
        this.payloads.doc = await this.client.network();
        this.setStatus(
          `${label}: loaded (${report.warnings.length} warning${report.warnings.length === 1 ? "" : "s"})`,
        );
      } catch (err) {
        this.setStatus(`upload failed: ${String(err)}`);
        return;
      }
    } else {
      this.payloads.doc = doc;
      this.setStatus(`${label}: loaded locally`);
    }
    this.state = setSelection(this.state, null);
    this.updateSliderBounds();
    await this.refreshAll();
    this.render();
  }

  // -- payload refresh ---------------------------------------------------------

  private async refreshAll(): Promise<void> {
    await Promise.all([this.refreshView(), this.refreshLayouts(), this.refreshMetrics(), this.refreshMeta()]);
    await this.refreshCompare();
  }

  private async refreshView(): Promise<void> {
    const doc = this.payloads.doc;
    if (doc === null) return;
    if (this.client === null) {
      this.payloads.view = localView(doc, this.state.filters, this.state.selection);
      return;
    }
    const stamp = this.gate.issue("view");
    try {
      const view = await this.client.view(viewStateBody(this.state));
      if (this.gate.isCurrent("view", stamp)) this.payloads.view = view;
    } catch (err) {
      if (this.gate.isCurrent("view", stamp)) this.setStatus(`view failed: ${String(err)}`);
    }
  }

  private async refreshLayouts(): Promise<void> {
    const doc = this.payloads.doc;
    if (doc === null) return;
    if (this.client === null) {
      const stack = localStack(doc);
      this.payloads.stack = stack;
      this.payloads.union = stack.union;
      this.payloads.layerGraph = localLayerGraph(doc);
      this.payloads.geo = localGeo(doc);
      return;
    }
    const stamp = this.gate.issue("layout");
    const seed = this.state.layoutSeed;
    const [stack, layerGraph, geo] = await Promise.all([
      this.client.layoutStack(seed).catch(() => null),
      this.client.layoutLayerGraph(seed).catch(() => null),
      this.client.layoutGeographic().catch(() => null),
    ]);
    if (!this.gate.isCurrent("layout", stamp)) return;
    this.payloads.stack = stack;
    this.payloads.union = stack?.union ?? (this.payloads.doc ? localUnion(this.payloads.doc) : null);
    this.payloads.layerGraph = layerGraph;
    this.payloads.geo = geo;
  }

  private async refreshMetrics(): Promise<void> {
    if (this.client === null) {
      this.payloads.metrics = null;
      return;
    }
    const stamp = this.gate.issue("metrics");
    const metrics = await this.client.metrics().catch(() => null);
    if (this.gate.isCurrent("metrics", stamp)) this.payloads.metrics = metrics;
  }

  private async refreshMeta(): Promise<void> {
    const doc = this.payloads.doc;
    if (doc === null) return;
    if (this.client === null) {
      this.payloads.meta = this.state.metaMode === "union" ? localMetaUnion(doc) : null;
      return;
    }
    const stamp = this.gate.issue("meta");
    const meta = await this.client.meta(this.state.metaMode).catch(() => null);
    if (this.gate.isCurrent("meta", stamp)) this.payloads.meta = meta;
  }

  private async refreshCompare(): Promise<void> {
    const pair = this.state.comparePair;
    if (pair === null || this.client === null) {
      this.payloads.compare = null;
      return;
    }
    const stamp = this.gate.issue("compare");
    const compare = await this.client.compare(pair[0], pair[1]).catch(() => null);
    if (this.gate.isCurrent("compare", stamp)) this.payloads.compare = compare;
  }

  // -- rendering ---------------------------------------------------------------

  render(): void {
    const holder = this.canvas.parentElement!;
    const width = Math.max(holder.clientWidth, 320);
    const height = Math.max(holder.clientHeight, 240);
    const dpr = window.devicePixelRatio || 1;
    this.canvas.width = Math.round(width * dpr);
    this.canvas.height = Math.round(height * dpr);
    this.canvas.style.width = `${width}px`;
    this.canvas.style.height = `${height}px`;

    const scene = this.buildScene(width, height);
    this.lastScene = scene;
    const ctx = this.canvas.getContext("2d");
    if (ctx) paint(ctx, scene, dpr);
    this.updateLegend();
    this.updateCounts();
  }

  private styles(): NodeStyles {
    const { metrics, doc } = this.payloads;
    if (metrics === null) return constantStyles();
    return stylesFromBundle(metrics, this.state.legend, doc);
  }

  buildScene(width: number, height: number): Scene {
    const p = this.payloads;
    const emptyView: FilteredView = {
      state_nodes: [],
      intralayer_edges: [],
      interlayer_edges: [],
      counts: { state_nodes: 0, intralayer_edges: 0, interlayer_edges: 0 },
    };
    const view = p.view ?? emptyView;
    switch (this.state.mode) {
      case "network":
        return buildNetworkScene(view, p.stack, this.state, width, height, this.styles());
      case "map":
        return buildMapScene(p.geo, view, p.union, this.state, width, height);
      case "layer":
        return buildLayerScene(p.layerGraph, view, p.union, this.state, p.compare, width, height);
      case "grid":
        return buildGridScene(view, p.union, p.doc?.layers.map((l) => l.layer_id) ?? [], this.state, width, height, this.styles());
      case "meta":
        return buildMetaScene(p.meta, p.union, this.state, width, height);
      case "dashboard":
        return buildDashboardScene(p.metrics, width, height);
      case "data":
        return buildDataScene(p.metrics, this.state, this.tableKind, this.scrollRow, width, height);
    }
  }

  // -- DOM wiring ----------------------------------------------------------------

  private buildTabs(): void {
    const tabs = el<HTMLElement>("tabs");
    for (const mode of MODES) {
      const button = document.createElement("button");
      button.textContent = MODE_LABELS[mode];
      button.dataset.mode = mode;
      button.addEventListener("click", () => {
        this.state = setMode(this.state, mode);
        this.markActiveTab();
        void this.afterViewStateChange({ layouts: false });
      });
      tabs.appendChild(button);
    }
    this.markActiveTab();
  }

  private markActiveTab(): void {
    for (const button of el<HTMLElement>("tabs").querySelectorAll("button")) {
      button.classList.toggle("active", button.dataset.mode === this.state.mode);
    }
  }

  private async afterViewStateChange(opts: { layouts: boolean }): Promise<void> {
    await this.refreshView();
    if (opts.layouts) await this.refreshLayouts();
    await this.refreshMeta();
    await this.refreshCompare();
    this.render();
  }

  private wireControls(): void {
    const intra = el<HTMLInputElement>("intra-threshold");
    const inter = el<HTMLInputElement>("inter-threshold");
    intra.addEventListener("input", () => {
      el<HTMLElement>("intra-value").textContent = intra.value;
      this.state = setFilters(this.state, { min_weight_intra: Number(intra.value) });
      void this.afterViewStateChange({ layouts: false });
    });
    inter.addEventListener("input", () => {
      el<HTMLElement>("inter-value").textContent = inter.value;
      this.state = setFilters(this.state, { min_weight_inter: Number(inter.value) });
      void this.afterViewStateChange({ layouts: false });
    });
    const query = el<HTMLInputElement>("node-query");
    query.addEventListener("input", () => {
      this.state = setFilters(this.state, { node_query: query.value });
      void this.afterViewStateChange({ layouts: false });
    });
    const couplings = el<HTMLInputElement>("show-couplings");
    couplings.addEventListener("change", () => {
      this.state = setFilters(this.state, { show_interlayer: couplings.checked });
      void this.afterViewStateChange({ layouts: false });
    });
    const seed = el<HTMLInputElement>("layout-seed");
    seed.addEventListener("change", () => {
      this.state = { ...this.state, layoutSeed: Number(seed.value) || 0 };
      void this.afterViewStateChange({ layouts: true });
    });
    const metaMode = el<HTMLSelectElement>("meta-mode");
    metaMode.addEventListener("change", () => {
      this.state = { ...this.state, metaMode: metaMode.value as ModeState["metaMode"] };
      void this.afterViewStateChange({ layouts: false });
    });
    const metaThreshold = el<HTMLInputElement>("meta-threshold");
    metaThreshold.addEventListener("input", () => {
      el<HTMLElement>("meta-threshold-value").textContent = metaThreshold.value;
      this.state = { ...this.state, metaThreshold: Number(metaThreshold.value) };
      this.render(); // display-side filter; no refetch
    });
    const tableKind = el<HTMLSelectElement>("table-kind");
    tableKind.addEventListener("change", () => {
      this.tableKind = tableKind.value as TableKind;
      this.scrollRow = 0;
      this.render();
    });

    el<HTMLInputElement>("file-input").addEventListener("change", (event) => {
      const input = event.target as HTMLInputElement;
      const file = input.files?.[0];
      if (file) void this.loadFile(file);
      input.value = "";
    });
    el<HTMLInputElement>("session-input").addEventListener("change", (event) => {
      const input = event.target as HTMLInputElement;
      const file = input.files?.[0];
      if (file) void this.loadSessionFile(file);
      input.value = "";
    });
    el<HTMLButtonElement>("load-sample").addEventListener("click", () => {
      void this.adoptDocument(SAMPLE_NETWORK, "bundled sample");
    });
    el<HTMLButtonElement>("save-session").addEventListener("click", () => {
      void this.saveSession();
    });
    el<HTMLButtonElement>("export-png").addEventListener("click", () => this.exportPng());

    this.canvas.addEventListener("click", (event) => this.onCanvasClick(event));
    this.canvas.addEventListener("dblclick", (event) => this.onCanvasDoubleClick(event));
    this.canvas.addEventListener("wheel", (event) => {
      if (this.state.mode !== "data") return;
      event.preventDefault();
      this.scrollRow = Math.max(0, this.scrollRow + Math.sign(event.deltaY) * 3);
      this.render();
    });
  }

  private updateSliderBounds(): void {
    const doc = this.payloads.doc;
    if (doc === null) return;
    let maxIntra = 0;
    let maxInter = 0;
    for (const e of doc.extended) {
      const w = e.weight ?? 1.0;
      if (e.layer_from === e.layer_to) maxIntra = Math.max(maxIntra, w);
      else maxInter = Math.max(maxInter, w);
    }
    const intra = el<HTMLInputElement>("intra-threshold");
    const inter = el<HTMLInputElement>("inter-threshold");
    intra.max = String(Math.max(1, Math.ceil(maxIntra * 100) / 100));
    inter.max = String(Math.max(1, Math.ceil(maxInter * 100) / 100));
    intra.step = inter.step = "0.01";
    intra.value = String(this.state.filters.min_weight_intra);
    inter.value = String(this.state.filters.min_weight_inter);

    const metaThreshold = el<HTMLInputElement>("meta-threshold");
    metaThreshold.max = String(Math.max(1, doc.layers.length * Math.max(1, maxIntra)));
    metaThreshold.step = "0.1";
  }

  // -- interaction --------------------------------------------------------------

  private hitTest(px: number, py: number): string | null {
    const scene = this.lastScene;
    if (scene === null) return null;
    for (let i = scene.ops.length - 1; i >= 0; i--) {
      const op = scene.ops[i];
      if (op.kind !== "circle" || op.tag === undefined) continue;
      const dx = px - op.x;
      const dy = py - op.y;
      if (dx * dx + dy * dy <= (op.r + 3) * (op.r + 3)) return op.tag;
    }
    return null;
  }

  private canvasPoint(event: MouseEvent): [number, number] {
    const box = this.canvas.getBoundingClientRect();
    return [event.clientX - box.left, event.clientY - box.top];
  }

  private onCanvasClick(event: MouseEvent): void {
    const [px, py] = this.canvasPoint(event);
    const tag = this.hitTest(px, py);
    if (tag === null) {
      if (this.state.selection !== null) {
        this.state = setSelection(this.state, null);
        void this.afterViewStateChange({ layouts: false });
      }
      return;
    }
    const parts = tag.split(":");
    if (parts[0] === "state" || parts[0] === "node") {
      const nodeId = parts[0] === "state" ? parts.slice(2).join(":") : parts.slice(1).join(":");
      const next: Selection = { node_id: nodeId };
      this.state = setSelection(this.state, next);
      void this.afterViewStateChange({ layouts: false });
      return;
    }
    if (parts[0] === "layer") {
      const layerId = parts.slice(1).join(":");
      if (this.state.mode === "layer" && (event.metaKey || event.ctrlKey)) {
        const pair = this.state.comparePair;
        if (pair === null) {
          this.state = { ...this.state, comparePair: [layerId, layerId] };
        } else if (pair[0] === pair[1]) {
          this.state = { ...this.state, comparePair: [pair[0], layerId] };
        } else {
          this.state = { ...this.state, comparePair: [layerId, layerId] };
        }
        void this.afterViewStateChange({ layouts: false });
      }
    }
  }

  private onCanvasDoubleClick(event: MouseEvent): void {
    if (this.state.mode !== "map") return;
    const [px, py] = this.canvasPoint(event);
    const tag = this.hitTest(px, py);
    if (tag === null || !tag.startsWith("layer:")) return;
    const layerId = tag.slice("layer:".length);
    const popped = this.state.poppedOut.includes(layerId)
      ? this.state.poppedOut.filter((lid) => lid !== layerId)
      : [...this.state.poppedOut, layerId];
    this.state = { ...this.state, poppedOut: popped };
    this.render();
  }

  // -- files, sessions, export -----------------------------------------------------

  private async loadFile(file: File): Promise<void> {
    try {
      const text = await file.text();
      const parsed = JSON.parse(text) as NetworkDocument | SessionEnvelope;
      if ("network" in parsed && "view_state" in parsed) {
        await this.adoptSession(parsed as SessionEnvelope, file.name);
        return;
      }
      await this.adoptDocument(parsed as NetworkDocument, file.name);
    } catch (err) {
      this.setStatus(`cannot load ${file.name}: ${String(err)}`);
    }
  }

  private async loadSessionFile(file: File): Promise<void> {
    try {
      const envelope = JSON.parse(await file.text()) as SessionEnvelope;
      await this.adoptSession(envelope, file.name);
    } catch (err) {
      this.setStatus(`cannot restore ${file.name}: ${String(err)}`);
    }
  }

  private async adoptSession(envelope: SessionEnvelope, label: string): Promise<void> {
    if (this.client !== null) {
      try {
        await this.client.loadSession(envelope);
        this.payloads.doc = await this.client.network();
      } catch (err) {
        this.setStatus(`session rejected: ${String(err)}`);
        return;
      }
    } else {
      this.payloads.doc = envelope.network;
    }
    this.applyViewState(envelope.view_state);
    this.updateSliderBounds();
    this.syncControls();
    this.markActiveTab();
    await this.refreshAll();
    this.render();
    this.setStatus(`${label}: session restored`);
  }

  /** Copy a saved view_state payload onto the UI state object. */
  private applyViewState(raw: Record<string, unknown>): void {
    const next = initialState();
    const mode = raw.active_mode;
    if (typeof mode === "string" && (MODES as readonly string[]).includes(mode)) next.mode = mode as Mode;
    const filters = raw.filters as Record<string, unknown> | undefined;
    if (filters) {
      if (typeof filters.min_weight_intra === "number") next.filters.min_weight_intra = filters.min_weight_intra;
      if (typeof filters.min_weight_inter === "number") next.filters.min_weight_inter = filters.min_weight_inter;
      if (Array.isArray(filters.visible_layers)) next.filters.visible_layers = filters.visible_layers.map(String);
      if (typeof filters.node_query === "string") next.filters.node_query = filters.node_query;
      if (typeof filters.show_interlayer === "boolean") next.filters.show_interlayer = filters.show_interlayer;
    }
    const selection = raw.selection as Selection | null | undefined;
    next.selection = selection ?? null;
    if (raw.meta_mode === "union" || raw.meta_mode === "count" || raw.meta_mode === "sum") {
      next.metaMode = raw.meta_mode;
    }
    const layout = raw.layout as Record<string, unknown> | undefined;
    if (layout && typeof layout.seed === "number") next.layoutSeed = layout.seed;
    this.state = next;
  }

  private async saveSession(): Promise<void> {
    let payload: string;
    if (this.client !== null) {
      try {
        payload = JSON.stringify(await this.client.session());
      } catch (err) {
        this.setStatus(`session save failed: ${String(err)}`);
        return;
      }
    } else {
      const doc = this.payloads.doc;
      if (doc === null) return;
      const envelope: SessionEnvelope = {
        format_version: 1,
        network: doc,
        view_state: viewStateBody(this.state),
      };
      payload = JSON.stringify(envelope);
    }
    this.download(new Blob([payload], { type: "application/json" }), "session.json");
    this.setStatus("session saved");
  }

  private exportPng(): void {
    if (this.lastScene === null) return;
    const dataUrl = renderPng(this.lastScene, (w, h) => {
      const canvas = document.createElement("canvas");
      canvas.width = w;
      canvas.height = h;
      return canvas;
    });
    const anchor = document.createElement("a");
    anchor.href = dataUrl;
    anchor.download = downloadName(this.state.mode);
    anchor.click();
    this.setStatus("frame exported");
  }

  private download(blob: Blob, name: string): void {
    const anchor = document.createElement("a");
    anchor.href = URL.createObjectURL(blob);
    anchor.download = name;
    anchor.click();
    URL.revokeObjectURL(anchor.href);
  }

  // -- status line ----------------------------------------------------------------

  private syncControls(): void {
    el<HTMLInputElement>("intra-threshold").value = String(this.state.filters.min_weight_intra);
    el<HTMLElement>("intra-value").textContent = String(this.state.filters.min_weight_intra);
    el<HTMLInputElement>("inter-threshold").value = String(this.state.filters.min_weight_inter);
    el<HTMLElement>("inter-value").textContent = String(this.state.filters.min_weight_inter);
    el<HTMLInputElement>("node-query").value = this.state.filters.node_query;
    el<HTMLInputElement>("show-couplings").checked = this.state.filters.show_interlayer;
    el<HTMLInputElement>("layout-seed").value = String(this.state.layoutSeed);
    el<HTMLSelectElement>("meta-mode").value = this.state.metaMode;
  }

  private updateLegend(): void {
    const legend = this.styles().legend;
    if (legend === null) {
      this.legendEl.innerHTML = "";
      return;
    }
    const parts = legend.entries
      .map(
        (entry) =>
          `<span class="legend-entry"><span class="swatch" style="background:${entry.color}"></span>${entry.label}</span>`,
      )
      .join("");
    this.legendEl.innerHTML = `<span class="legend-title">${legend.title}</span>${parts}`;
  }

  private updateCounts(): void {
    const view = this.payloads.view;
    if (view === null) return;
    const sel =
      this.state.selection !== null && "node_id" in this.state.selection
        ? ` · selected ${this.state.selection.node_id}`
        : "";
    el<HTMLElement>("counts").textContent =
      `${view.counts.state_nodes} nodes · ${view.counts.intralayer_edges} links · ${view.counts.interlayer_edges} couplings${sel}`;
  }

  private setStatus(text: string): void {
    this.statusEl.textContent = text;
  }
}

if (typeof document !== "undefined" && document.getElementById("canvas") !== null) {
  const app = new App();
  void app.start();
  (window as unknown as { app: App }).app = app;
}

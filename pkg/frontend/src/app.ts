/** DOM wiring for the cell designer.
 *
 * Interaction model: click a machine line or part dot to select it, then
 * click a target cell button to move it (cell identity is the thing being
 * edited, so there is no drag geometry). Every change re-renders the
 * scatter immediately and refreshes metrics from the server; the metrics
 * panel is the server's answer, never client math.
 */

import { postScore } from "./api.js";
import { formatAssignment } from "./assignment.js";
import { buildScene, cellColor, Scene } from "./scene.js";
import { DesignerStore, ElementKind } from "./store.js";
import { MetricsReport, SolutionExport } from "./types.js";

const SVG_NS = "http://www.w3.org/2000/svg";

interface Selection {
  kind: ElementKind;
  label: string;
}

export class DesignerApp {
  private readonly store: DesignerStore;
  private selection: Selection | null = null;
  private readonly root: HTMLElement;
  private readonly apiBase: string;

  constructor(root: HTMLElement, solution: SolutionExport, apiBase = "") {
    this.root = root;
    this.apiBase = apiBase;
    this.store = new DesignerStore(solution);
    this.buildSkeleton();
    this.render();
  }

  private buildSkeleton(): void {
    this.root.innerHTML = `
      <header>
        <h1>cellform designer</h1>
        <div id="banner" class="banner hidden"></div>
      </header>
      <main>
        <section id="plot"></section>
        <aside>
          <div id="metrics" class="card"></div>
          <div id="selection" class="card"></div>
          <div id="cells" class="card"></div>
          <div class="card actions">
            <button id="undo">undo</button>
            <button id="redo">redo</button>
            <button id="reset">reset</button>
            <button id="export">export assignment</button>
          </div>
        </aside>
      </main>
      <div id="toast" class="toast hidden"></div>
    `;
    this.query("#undo").addEventListener("click", () => this.applyHistory("undo"));
    this.query("#redo").addEventListener("click", () => this.applyHistory("redo"));
    this.query("#reset").addEventListener("click", () => {
      this.store.reset();
      this.selection = null;
      this.render();
    });
    this.query("#export").addEventListener("click", () => this.exportAssignment());
  }

  private query<T extends HTMLElement = HTMLElement>(selector: string): T {
    const el = this.root.querySelector<T>(selector);
    if (!el) throw new Error(`missing element ${selector}`);
    return el;
  }

  private render(): void {
    const scene = buildScene(this.store.solution, this.store.assignment());
    this.renderBanner(scene);
    this.renderPlot(scene);
    this.renderMetrics(this.store.metrics());
    this.renderSelection();
    this.renderCellButtons();
    (this.query("#undo") as HTMLButtonElement).disabled = !this.store.canUndo();
    (this.query("#redo") as HTMLButtonElement).disabled = !this.store.canRedo();
  }

  private renderBanner(scene: Scene): void {
    const banner = this.query("#banner");
    const warnings = [...this.store.solution.warnings];
    if (scene.degenerate) {
      warnings.unshift(
        "principal plane is degenerate: the second component carries no variance, angles are unreliable",
      );
    }
    banner.textContent = warnings.join(" — ");
    banner.classList.toggle("hidden", warnings.length === 0);
  }

  private renderPlot(scene: Scene): void {
    const svg = document.createElementNS(SVG_NS, "svg");
    svg.setAttribute("viewBox", `0 0 ${scene.size} ${scene.size}`);
    svg.setAttribute("role", "img");

    const axes = document.createElementNS(SVG_NS, "g");
    axes.setAttribute("class", "axes");
    for (const [x1, y1, x2, y2] of [
      [0, scene.size / 2, scene.size, scene.size / 2],
      [scene.size / 2, 0, scene.size / 2, scene.size],
    ] as const) {
      const axis = document.createElementNS(SVG_NS, "line");
      axis.setAttribute("x1", String(x1));
      axis.setAttribute("y1", String(y1));
      axis.setAttribute("x2", String(x2));
      axis.setAttribute("y2", String(y2));
      axes.appendChild(axis);
    }
    svg.appendChild(axes);

    for (const line of scene.lines) {
      const group = document.createElementNS(SVG_NS, "g");
      group.setAttribute(
        "class",
        "machine" + (line.exceptional ? " exceptional" : "") + (this.isSelected("machine", line.label) ? " selected" : ""),
      );
      const visible = document.createElementNS(SVG_NS, "line");
      visible.setAttribute("x1", line.x1.toFixed(1));
      visible.setAttribute("y1", line.y1.toFixed(1));
      visible.setAttribute("x2", line.x2.toFixed(1));
      visible.setAttribute("y2", line.y2.toFixed(1));
      visible.setAttribute("stroke", cellColor(line.colorIndex));
      visible.setAttribute("class", "machine-line");
      const hit = visible.cloneNode() as SVGLineElement;
      hit.setAttribute("class", "hit-line");
      hit.setAttribute("stroke", "transparent");
      const title = document.createElementNS(SVG_NS, "title");
      title.textContent =
        `${line.label} — cell ${line.cell} — ${line.angleDeg.toFixed(1)}°` +
        (line.exceptional ? " — exceptional machine" : "");
      const tip = document.createElementNS(SVG_NS, "text");
      tip.setAttribute("x", line.x2.toFixed(1));
      tip.setAttribute("y", line.y2.toFixed(1));
      tip.setAttribute("class", "machine-label");
      tip.setAttribute("fill", cellColor(line.colorIndex));
      tip.textContent = line.label;
      group.append(title, visible, hit, tip);
      group.addEventListener("click", () => this.select("machine", line.label));
      svg.appendChild(group);
    }

    for (const dot of scene.dots) {
      const group = document.createElementNS(SVG_NS, "g");
      group.setAttribute(
        "class",
        "part" + (dot.exceptional ? " exceptional" : "") + (this.isSelected("part", dot.label) ? " selected" : ""),
      );
      const circle = document.createElementNS(SVG_NS, "circle");
      circle.setAttribute("cx", dot.x.toFixed(1));
      circle.setAttribute("cy", dot.y.toFixed(1));
      circle.setAttribute("r", dot.radius.toFixed(1));
      circle.setAttribute("fill", cellColor(dot.colorIndex));
      circle.setAttribute("class", "part-dot");
      const title = document.createElementNS(SVG_NS, "title");
      title.textContent =
        `${dot.label} — family ${dot.family} — ${dot.angleDeg.toFixed(1)}° — ` +
        `uses ${dot.usedMachines.join(", ")}` +
        (dot.exceptional ? " — exceptional part" : "");
      group.append(title, circle);
      group.addEventListener("click", () => this.select("part", dot.label));
      svg.appendChild(group);
    }

    const plot = this.query("#plot");
    plot.innerHTML = "";
    plot.appendChild(svg);
  }

  private renderMetrics(report: MetricsReport): void {
    const stale = this.store.metricsFresh() ? "" : `<p class="muted">scoring…</p>`;
    const dirty = this.store.dirty() ? `<span class="badge">edited</span>` : "";
    this.query("#metrics").innerHTML = `
      <h2>grouping quality ${dirty}</h2>
      <dl>
        <div><dt>PE</dt><dd id="pe">${report.pe.toFixed(2)}%</dd></div>
        <div><dt>MU</dt><dd id="mu">${report.mu.toFixed(2)}%</dd></div>
        <div><dt>GE</dt><dd id="ge">${report.ge.toFixed(2)}%</dd></div>
      </dl>
      <p class="muted">UE ${report.ue} · EE ${report.ee} · VE ${report.ve}</p>
      ${stale}
    `;
  }

  private renderSelection(): void {
    const box = this.query("#selection");
    if (!this.selection) {
      box.innerHTML = `<h2>selection</h2><p class="muted">click a machine line or part dot</p>`;
      return;
    }
    const { kind, label } = this.selection;
    const index = this.store.currentIndex(kind, label);
    box.innerHTML = `
      <h2>selection</h2>
      <p><strong>${label}</strong> (${kind}) — ${kind === "machine" ? "cell" : "family"} ${index}</p>
      <p class="muted">pick a target cell below</p>
    `;
  }

  private renderCellButtons(): void {
    const box = this.query("#cells");
    box.innerHTML = `<h2>cells</h2>`;
    const row = document.createElement("div");
    row.className = "cell-buttons";
    const count = this.store.cellCount();
    for (let cell = 1; cell <= count + 1; cell += 1) {
      const button = document.createElement("button");
      button.dataset.cell = String(cell);
      button.textContent = cell <= count ? `cell ${cell}` : "new cell";
      button.style.borderColor = cellColor(cell - 1);
      button.disabled = this.selection === null;
      button.addEventListener("click", () => this.reassignSelected(cell));
      row.appendChild(button);
    }
    box.appendChild(row);
  }

  private isSelected(kind: ElementKind, label: string): boolean {
    return this.selection?.kind === kind && this.selection?.label === label;
  }

  private select(kind: ElementKind, label: string): void {
    this.selection = this.isSelected(kind, label) ? null : { kind, label };
    this.render();
  }

  private reassignSelected(target: number): void {
    if (!this.selection) return;
    const move = this.store.reassign(this.selection.kind, this.selection.label, target);
    if (move) this.refreshMetrics();
    this.render();
  }

  private applyHistory(direction: "undo" | "redo"): void {
    const move = direction === "undo" ? this.store.undo() : this.store.redo();
    if (move) this.refreshMetrics();
    this.render();
  }

  /** One in-flight request per edit; stale answers are dropped by the store. */
  private refreshMetrics(): void {
    if (this.store.hasEmbeddedMetrics()) return;
    const seq = this.store.beginScore();
    postScore(this.store.assignment(), this.apiBase)
      .then((report) => {
        if (this.store.acceptMetrics(seq, report)) {
          this.renderMetrics(report);
        }
      })
      .catch((error: Error) => {
        if (this.store.failScore(seq)) {
          this.toast(error.message);
          this.renderMetrics(this.store.metrics());
        }
      });
  }

  private exportAssignment(): void {
    const blob = new Blob([formatAssignment(this.store.assignment())], {
      type: "text/plain",
    });
    const url = URL.createObjectURL(blob);
    const anchor = document.createElement("a");
    anchor.href = url;
    anchor.download = "assignment.txt";
    anchor.click();
    URL.revokeObjectURL(url);
  }

  private toast(message: string): void {
    const toast = this.query("#toast");
    toast.textContent = message;
    toast.classList.remove("hidden");
    window.setTimeout(() => toast.classList.add("hidden"), 4000);
  }
}

export function initApp(root: HTMLElement, solution: SolutionExport, apiBase = ""): DesignerApp {
  return new DesignerApp(root, solution, apiBase);
}

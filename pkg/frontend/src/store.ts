/** Designer session state: the working assignment, its undo history, and
 * the request sequencing that keeps displayed metrics honest.
 *
 * Metrics are never computed here; the store only remembers the last
 * server report that matches the latest issued request. Stale responses
 * (an earlier request resolving after a later one) are refused.
 */

import { Assignment, assignmentsEqual, cloneAssignment } from "./assignment.js";
import { MetricsReport, SolutionExport } from "./types.js";

export type ElementKind = "machine" | "part";

export interface Move {
  kind: ElementKind;
  label: string;
  from: number;
  to: number;
}

export class DesignerStore {
  readonly solution: SolutionExport;
  private readonly baseline: Assignment;
  private working: Assignment;
  private undoStack: Move[] = [];
  private redoStack: Move[] = [];
  private lastMetrics: MetricsReport;
  private fresh = true;
  private issuedSeq = 0;

  constructor(solution: SolutionExport) {
    this.solution = solution;
    this.baseline = {
      machineCell: { ...solution.machine_cell },
      partFamily: { ...solution.part_family },
    };
    this.working = cloneAssignment(this.baseline);
    this.lastMetrics = solution.metrics;
  }

  assignment(): Assignment {
    return cloneAssignment(this.working);
  }

  metrics(): MetricsReport {
    return this.lastMetrics;
  }

  /** False while a newer assignment has no accepted server report yet. */
  metricsFresh(): boolean {
    return this.fresh;
  }

  dirty(): boolean {
    return !assignmentsEqual(this.working, this.baseline);
  }

  cellCount(): number {
    const indices = [
      ...Object.values(this.working.machineCell),
      ...Object.values(this.working.partFamily),
    ];
    return Math.max(...indices);
  }

  canUndo(): boolean {
    return this.undoStack.length > 0;
  }

  canRedo(): boolean {
    return this.redoStack.length > 0;
  }

  currentIndex(kind: ElementKind, label: string): number {
    const map = kind === "machine" ? this.working.machineCell : this.working.partFamily;
    if (!(label in map)) throw new Error(`unknown ${kind} ${label}`);
    return map[label];
  }

  /** Reassign one element; a move to its current cell is a no-op. */
  reassign(kind: ElementKind, label: string, target: number): Move | null {
    if (!Number.isInteger(target) || target < 1 || target > this.cellCount() + 1) {
      throw new Error(`target cell ${target} out of range`);
    }
    const from = this.currentIndex(kind, label);
    if (from === target) return null;
    const move: Move = { kind, label, from, to: target };
    this.apply(move);
    this.undoStack.push(move);
    this.redoStack = [];
    return move;
  }

  undo(): Move | null {
    const move = this.undoStack.pop();
    if (!move) return null;
    this.apply({ ...move, from: move.to, to: move.from });
    this.redoStack.push(move);
    return move;
  }

  redo(): Move | null {
    const move = this.redoStack.pop();
    if (!move) return null;
    this.apply(move);
    this.undoStack.push(move);
    return move;
  }

  /** Restore the automated solution exactly, clearing history. */
  reset(): void {
    this.working = cloneAssignment(this.baseline);
    this.undoStack = [];
    this.redoStack = [];
    this.lastMetrics = this.solution.metrics;
    this.fresh = true;
  }

  private apply(move: Move): void {
    const map = move.kind === "machine" ? this.working.machineCell : this.working.partFamily;
    map[move.label] = move.to;
    if (assignmentsEqual(this.working, this.baseline)) {
      // back on the automated solution: its server report is embedded
      this.lastMetrics = this.solution.metrics;
      this.fresh = true;
    } else {
      this.fresh = false;
    }
  }

  /** Sequence number for the score request matching the current state. */
  beginScore(): number {
    this.issuedSeq += 1;
    return this.issuedSeq;
  }

  /** Accept a server report unless a newer request was issued since. */
  acceptMetrics(seq: number, report: MetricsReport): boolean {
    if (seq !== this.issuedSeq) return false;
    this.lastMetrics = report;
    this.fresh = true;
    return true;
  }

  /** A failed score keeps the previous metrics; the edit itself stands. */
  failScore(seq: number): boolean {
    return seq === this.issuedSeq;
  }

  /** True when the displayed state needs no server round-trip. */
  hasEmbeddedMetrics(): boolean {
    return assignmentsEqual(this.working, this.baseline);
  }
}

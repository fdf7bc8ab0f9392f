/** Pure scatter-plot geometry: the scene is a plain data structure so the
 * drawing (and the tests) never depend on live DOM state.
 *
 * Machines are rays from the origin in their loading direction; parts are
 * dots at their scaled component scores, radius growing with operation
 * count. Colors follow the *working* assignment, not the automated one,
 * and a part is marked exceptional when its machines currently span more
 * than one cell.
 */

import { Assignment } from "./assignment.js";
import { SolutionExport } from "./types.js";

export const VIEW_SIZE = 640;
const MARGIN = 40;
const DOT_BASE_RADIUS = 5;
const DOT_RADIUS_PER_OP = 1.5;
const DEGENERATE_EIGENVALUE = 1e-9;

export interface MachineLine {
  label: string;
  cell: number;
  colorIndex: number;
  angleDeg: number;
  x1: number;
  y1: number;
  x2: number;
  y2: number;
  exceptional: boolean;
}

export interface PartDot {
  label: string;
  family: number;
  colorIndex: number;
  angleDeg: number;
  x: number;
  y: number;
  radius: number;
  opCount: number;
  usedMachines: string[];
  exceptional: boolean;
}

export interface Scene {
  size: number;
  lines: MachineLine[];
  dots: PartDot[];
  colorCount: number;
  degenerate: boolean;
}

function angleDeg(x: number, y: number): number {
  const a = (Math.atan2(y, x) * 180) / Math.PI;
  return (a + 360) % 360;
}

/** Screen coordinates: origin at the center, y axis flipped for SVG. */
function toScreen(x: number, y: number, scale: number): [number, number] {
  const c = VIEW_SIZE / 2;
  return [c + x * scale, c - y * scale];
}

export function buildScene(solution: SolutionExport, assignment: Assignment): Scene {
  const { instance } = solution;
  const radius = VIEW_SIZE / 2 - MARGIN;

  const usedBy = new Map<string, string[]>();
  instance.part_labels.forEach((part, i) => {
    usedBy.set(
      part,
      instance.machine_labels.filter((_, j) => instance.incidence[i][j] === 1),
    );
  });

  const lines: MachineLine[] = instance.machine_labels.map((label) => {
    const [lx, ly] = solution.machine_loadings[label];
    const norm = Math.hypot(lx, ly) || 1;
    const [x2, y2] = toScreen((lx / norm) * radius, (ly / norm) * radius, 1);
    const cell = assignment.machineCell[label];
    return {
      label,
      cell,
      colorIndex: cell - 1,
      angleDeg: angleDeg(lx, ly),
      x1: VIEW_SIZE / 2,
      y1: VIEW_SIZE / 2,
      x2,
      y2,
      exceptional: solution.exceptional_machines.includes(label),
    };
  });

  const maxScore = Math.max(
    1e-12,
    ...instance.part_labels.map((p) => {
      const [sx, sy] = solution.part_scores[p];
      return Math.hypot(sx, sy);
    }),
  );
  const scale = radius / maxScore;

  const dots: PartDot[] = instance.part_labels.map((label) => {
    const [sx, sy] = solution.part_scores[label];
    const [x, y] = toScreen(sx, sy, scale);
    const used = usedBy.get(label) ?? [];
    const cellsSpanned = new Set(used.map((m) => assignment.machineCell[m]));
    const family = assignment.partFamily[label];
    return {
      label,
      family,
      colorIndex: family - 1,
      angleDeg: angleDeg(sx, sy),
      x,
      y,
      radius: DOT_BASE_RADIUS + DOT_RADIUS_PER_OP * used.length,
      opCount: used.length,
      usedMachines: used,
      exceptional: cellsSpanned.size > 1,
    };
  });

  const indices = new Set<number>([
    ...Object.values(assignment.machineCell),
    ...Object.values(assignment.partFamily),
  ]);
  return {
    size: VIEW_SIZE,
    lines,
    dots,
    colorCount: indices.size,
    degenerate: solution.eigenvalues.length > 1 && solution.eigenvalues[1] < DEGENERATE_EIGENVALUE,
  };
}

/** Distinct, stable colors per cell index (golden-angle hue walk). */
export function cellColor(colorIndex: number): string {
  const hue = (colorIndex * 137.508) % 360;
  return `hsl(${hue.toFixed(1)}, 70%, 45%)`;
}

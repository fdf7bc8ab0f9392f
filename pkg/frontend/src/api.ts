/** Thin wrappers over the scoring service endpoints. */

import { Assignment } from "./assignment.js";
import { MetricsReport, SolutionExport } from "./types.js";

export async function fetchSolution(base = ""): Promise<SolutionExport> {
  const response = await fetch(`${base}/api/solution`);
  if (!response.ok) {
    throw new Error(`GET /api/solution failed: ${response.status}`);
  }
  return (await response.json()) as SolutionExport;
}

export async function postScore(
  assignment: Assignment,
  base = "",
): Promise<MetricsReport> {
  const response = await fetch(`${base}/api/score`, {
    method: "POST",
    headers: { "Content-Type": "application/json" },
    body: JSON.stringify({
      machine_cell: assignment.machineCell,
      part_family: assignment.partFamily,
    }),
  });
  if (!response.ok) {
    let detail = `${response.status}`;
    try {
      const body = await response.json();
      if (body && body.detail) detail = String(body.detail);
    } catch {
      // non-JSON error body; keep the status text
    }
    throw new Error(`score request failed: ${detail}`);
  }
  return (await response.json()) as MetricsReport;
}

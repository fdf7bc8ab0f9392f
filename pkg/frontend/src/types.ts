/** Shapes of the documents served by the scoring service. */

export interface MetricsReport {
  ue: number;
  ee: number;
  ve: number;
  denominator_mu: number;
  pe: number;
  mu: number;
  ge: number;
  warnings: string[];
}

export interface InstanceBlock {
  machine_labels: string[];
  part_labels: string[];
  incidence: number[][]; // rows are parts, columns are machines
}

export interface SolutionExport {
  schema: string;
  instance: InstanceBlock;
  similarity: number[][];
  eigenvalues: number[];
  explained_variance: number;
  machine_loadings: Record<string, [number, number]>;
  part_scores: Record<string, [number, number]>;
  machine_cell: Record<string, number>;
  part_family: Record<string, number>;
  exceptional_machines: string[];
  exceptional_parts: string[];
  n_cells: number;
  metrics: MetricsReport;
  warnings: string[];
  config: {
    n_cells: number | null;
    gap_threshold_deg: number;
    independence_deg: number;
  };
}

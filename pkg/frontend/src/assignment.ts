/** The editable machine->cell / part->family maps and their file format.
 *
 * The text format is the solver's assignment format: one
 * `machine <label> <cell>` or `part <label> <family>` line per element,
 * `#` comments allowed, so a download re-scores byte-identically through
 * the command-line `score` subcommand.
 */

export interface Assignment {
  machineCell: Record<string, number>;
  partFamily: Record<string, number>;
}

export function cloneAssignment(a: Assignment): Assignment {
  return {
    machineCell: { ...a.machineCell },
    partFamily: { ...a.partFamily },
  };
}

export function assignmentsEqual(a: Assignment, b: Assignment): boolean {
  const sameMap = (x: Record<string, number>, y: Record<string, number>) => {
    const keys = Object.keys(x);
    if (keys.length !== Object.keys(y).length) return false;
    return keys.every((k) => y[k] === x[k]);
  };
  return sameMap(a.machineCell, b.machineCell) && sameMap(a.partFamily, b.partFamily);
}

export function formatAssignment(a: Assignment): string {
  const lines: string[] = [];
  for (const [label, cell] of Object.entries(a.machineCell)) {
    lines.push(`machine ${label} ${cell}`);
  }
  for (const [label, family] of Object.entries(a.partFamily)) {
    lines.push(`part ${label} ${family}`);
  }
  return lines.join("\n") + "\n";
}

export function parseAssignment(text: string): Assignment {
  const machineCell: Record<string, number> = {};
  const partFamily: Record<string, number> = {};
  text.split(/\r?\n/).forEach((raw, index) => {
    const line = raw.trim();
    if (!line || line.startsWith("#")) return;
    const fields = line.split(/\s+/);
    if (fields.length !== 3 || (fields[0] !== "machine" && fields[0] !== "part")) {
      throw new Error(`line ${index + 1}: expected 'machine|part <label> <index>'`);
    }
    const value = Number(fields[2]);
    if (!Number.isInteger(value) || value < 1) {
      throw new Error(`line ${index + 1}: bad index ${fields[2]}`);
    }
    const target = fields[0] === "machine" ? machineCell : partFamily;
    if (fields[1] in target) {
      throw new Error(`line ${index + 1}: ${fields[1]} assigned twice`);
    }
    target[fields[1]] = value;
  });
  return { machineCell, partFamily };
}

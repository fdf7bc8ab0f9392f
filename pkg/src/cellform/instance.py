"""Binary machine-part incidence matrices: validation, file I/O, built-in data.

The canonical in-memory orientation is part-rows: ``incidence[i, j] == 1``
means part ``i`` requires machine ``j``. Files may declare either
orientation; machine-rows bodies are transposed on load.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


class InstanceError(ValueError):
    """Malformed instance file or violated incidence-matrix invariant."""


@dataclass(frozen=True)
class Instance:
    """A validated machine-part incidence matrix with labels.

    Invariants enforced on construction: binary entries, at least two
    machines and two parts, no part without operations, and no machine
    column that is all zeros or all ones (a constant column has zero
    standard deviation and cannot be standardized).
    """

    machine_labels: tuple[str, ...]
    part_labels: tuple[str, ...]
    incidence: np.ndarray  # shape (p, m), dtype int8, rows are parts

    def __post_init__(self):
        matrix = np.asarray(self.incidence)
        if matrix.ndim != 2:
            raise InstanceError("incidence must be a 2-D matrix")
        bad = np.argwhere((matrix != 0) & (matrix != 1))
        if bad.size:
            i, j = bad[0]
            raise InstanceError(
                f"incidence entry at part row {i + 1}, machine column {j + 1} "
                f"is {matrix[i, j]!r}, expected 0 or 1"
            )
        matrix = matrix.astype(np.int8)
        matrix.flags.writeable = False
        object.__setattr__(self, "incidence", matrix)
        object.__setattr__(self, "machine_labels", tuple(self.machine_labels))
        object.__setattr__(self, "part_labels", tuple(self.part_labels))

        p, m = matrix.shape
        if m < 2:
            raise InstanceError(f"need at least 2 machines, got {m}")
        if p < 2:
            raise InstanceError(f"need at least 2 parts, got {p}")
        if len(self.machine_labels) != m:
            raise InstanceError(
                f"{len(self.machine_labels)} machine labels for {m} columns"
            )
        if len(self.part_labels) != p:
            raise InstanceError(
                f"{len(self.part_labels)} part labels for {p} rows"
            )
        _check_labels(self.machine_labels, "machine", "column")
        _check_labels(self.part_labels, "part", "row")

        row_sums = matrix.sum(axis=0)
        for i, s in enumerate(matrix.sum(axis=1)):
            if s == 0:
                raise InstanceError(
                    f"part {self.part_labels[i]!r} (row {i + 1}) has no operations"
                )
        for j, s in enumerate(row_sums):
            if s == 0:
                raise InstanceError(
                    f"machine {self.machine_labels[j]!r} (column {j + 1}) "
                    "is used by no part"
                )
            if s == p:
                raise InstanceError(
                    f"machine {self.machine_labels[j]!r} (column {j + 1}) "
                    "is used by every part"
                )

    @property
    def n_machines(self) -> int:
        return self.incidence.shape[1]

    @property
    def n_parts(self) -> int:
        return self.incidence.shape[0]

    def machine_index(self, label: str) -> int:
        try:
            return self.machine_labels.index(label)
        except ValueError:
            raise InstanceError(f"unknown machine label {label!r}") from None

    def part_index(self, label: str) -> int:
        try:
            return self.part_labels.index(label)
        except ValueError:
            raise InstanceError(f"unknown part label {label!r}") from None

    def __eq__(self, other) -> bool:
        if not isinstance(other, Instance):
            return NotImplemented
        return (
            self.machine_labels == other.machine_labels
            and self.part_labels == other.part_labels
            and np.array_equal(self.incidence, other.incidence)
        )

    def __hash__(self):
        return hash((self.machine_labels, self.part_labels, self.incidence.tobytes()))


def _check_labels(labels: tuple[str, ...], kind: str, axis: str) -> None:
    seen: dict[str, int] = {}
    for pos, label in enumerate(labels):
        if not isinstance(label, str) or not label.strip():
            raise InstanceError(f"empty {kind} label at {axis} {pos + 1}")
        if label in seen:
            raise InstanceError(
                f"duplicate {kind} label {label!r} at {axis}s "
                f"{seen[label] + 1} and {pos + 1}"
            )
        seen[label] = pos


def default_labels(prefix: str, n: int) -> tuple[str, ...]:
    return tuple(f"{prefix}{i + 1}" for i in range(n))


def parse_instance(text: str) -> Instance:
    """Parse instance-file content into a validated part-rows Instance.

    File format: a header line ``machines=<m> parts=<p>
    orientation=<part-rows|machine-rows>``, optional ``machine-labels=`` and
    ``part-labels=`` lines, then the 0/1 matrix body (one row per line,
    single spaces between entries allowed). ``#`` lines are comments.
    """
    header: dict[str, str] | None = None
    machine_labels: tuple[str, ...] | None = None
    part_labels: tuple[str, ...] | None = None
    body: list[list[int]] = []

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if header is None:
            header = _parse_header(line, lineno)
            continue
        if line.startswith("machine-labels=") and not body:
            if machine_labels is not None:
                raise InstanceError(f"line {lineno}: machine-labels given twice")
            machine_labels = _split_labels(line.partition("=")[2])
            continue
        if line.startswith("part-labels=") and not body:
            if part_labels is not None:
                raise InstanceError(f"line {lineno}: part-labels given twice")
            part_labels = _split_labels(line.partition("=")[2])
            continue
        body.append(_parse_body_row(line, lineno, len(body) + 1))

    if header is None:
        raise InstanceError("malformed header: file has no header line")
    m = int(header["machines"])
    p = int(header["parts"])
    part_rows = header["orientation"] == "part-rows"
    n_rows, n_cols = (p, m) if part_rows else (m, p)

    if len(body) != n_rows:
        raise InstanceError(
            f"expected {n_rows} matrix rows for orientation "
            f"{header['orientation']}, got {len(body)}"
        )
    for i, row in enumerate(body):
        if len(row) != n_cols:
            raise InstanceError(
                f"matrix row {i + 1} has {len(row)} entries, expected {n_cols}"
            )

    matrix = np.array(body, dtype=np.int8)
    if not part_rows:
        matrix = matrix.T
    if machine_labels is None:
        machine_labels = default_labels("M", m)
    if part_labels is None:
        part_labels = default_labels("P", p)
    return Instance(machine_labels, part_labels, matrix)


def _parse_header(line: str, lineno: int) -> dict[str, str]:
    fields: dict[str, str] = {}
    for token in line.split():
        key, sep, value = token.partition("=")
        if not sep or key not in ("machines", "parts", "orientation"):
            raise InstanceError(
                f"malformed header (line {lineno}): unexpected token {token!r}"
            )
        fields[key] = value
    missing = {"machines", "parts", "orientation"} - fields.keys()
    if missing:
        raise InstanceError(
            f"malformed header (line {lineno}): missing {', '.join(sorted(missing))}"
        )
    for key in ("machines", "parts"):
        if not fields[key].isdigit() or int(fields[key]) == 0:
            raise InstanceError(
                f"malformed header (line {lineno}): {key}={fields[key]!r} "
                "is not a positive integer"
            )
    if fields["orientation"] not in ("part-rows", "machine-rows"):
        raise InstanceError(
            f"malformed header (line {lineno}): orientation must be "
            f"part-rows or machine-rows, got {fields['orientation']!r}"
        )
    return fields


def _split_labels(raw: str) -> tuple[str, ...]:
    return tuple(label.strip() for label in raw.split(","))


def _parse_body_row(line: str, lineno: int, row_number: int) -> list[int]:
    row: list[int] = []
    for col, ch in enumerate(line.replace(" ", ""), start=1):
        if ch not in "01":
            raise InstanceError(
                f"non-binary character {ch!r} in matrix row {row_number}, "
                f"column {col} (line {lineno})"
            )
        row.append(int(ch))
    return row


def serialize_instance(inst: Instance) -> str:
    """Render an Instance in the part-rows file format; parses back equal."""
    lines = [
        f"machines={inst.n_machines} parts={inst.n_parts} orientation=part-rows",
        "machine-labels=" + ",".join(inst.machine_labels),
        "part-labels=" + ",".join(inst.part_labels),
    ]
    for row in inst.incidence:
        lines.append(" ".join(str(int(v)) for v in row))
    return "\n".join(lines) + "\n"


# Worked 7-machine / 11-part example used throughout the test suite
# (21 operations in total).
_BOCTOR_7X11 = """\
machines=7 parts=11 orientation=part-rows
machine-labels=M1,M2,M3,M4,M5,M6,M7
part-labels=P1,P2,P3,P4,P5,P6,P7,P8,P9,P10,P11
1 1 0 0 0 0 0
0 1 1 0 0 0 0
1 0 0 0 1 1 0
0 0 0 1 0 1 0
0 0 0 1 0 0 1
0 1 1 0 0 0 0
1 0 0 0 1 0 0
0 0 0 0 0 0 1
0 0 1 0 0 0 0
0 0 0 1 0 0 1
1 0 0 0 0 1 0
"""


def builtin_instances() -> dict[str, Instance]:
    """Embedded instances by stable name; missing names are simply absent."""
    return {"boctor-7x11": parse_instance(_BOCTOR_7X11)}

"""Alignment data structures: ordered columns of identical symbols.

An alignment holds one New pattern plus any number of old-pattern instances.
Every symbol of every participating row occupies exactly one column, columns
are totally ordered, and a column never holds two cells from the same row.
Rows are addressed as NEW_ROW (-1) or the instance index (0, 1, ...).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Optional

from .core import Grammar, Pattern, Status

NEW_ROW = -1


class MergeOrderConflict(ValueError):
    """A hit set cannot be merged without breaking some row's order."""


@dataclass(frozen=True)
class Cell:
    row: int  # NEW_ROW or instance index
    index: int  # symbol index within that row's pattern


@dataclass(frozen=True)
class AlignmentColumn:
    symbol: int
    cells: tuple[Cell, ...]  # sorted by row

    @property
    def is_hit(self) -> bool:
        return len(self.cells) >= 2


@dataclass(frozen=True)
class Instance:
    instance_id: int
    pattern_id: str


@dataclass(frozen=True)
class Alignment:
    new_pattern: Pattern
    instances: tuple[Instance, ...]
    columns: tuple[AlignmentColumn, ...]

    def row_pattern(self, row: int, grammar: Grammar) -> Pattern:
        if row == NEW_ROW:
            return self.new_pattern
        return grammar.pattern(self.instances[row].pattern_id)

    def iter_cells(self) -> Iterator[tuple[int, AlignmentColumn, Cell]]:
        for ci, col in enumerate(self.columns):
            for cell in col.cells:
                yield ci, col, cell


@dataclass(frozen=True)
class Violation:
    rule: str
    column: Optional[int] = None
    row: Optional[int] = None

    def __str__(self) -> str:
        where = []
        if self.column is not None:
            where.append(f"column {self.column}")
        if self.row is not None:
            where.append(f"row {self.row}")
        suffix = f" ({', '.join(where)})" if where else ""
        return f"{self.rule}{suffix}"


def bare_alignment(new: Pattern) -> Alignment:
    """One single-cell column per New symbol, no instances."""
    cols = tuple(
        AlignmentColumn(sym, (Cell(NEW_ROW, i),)) for i, sym in enumerate(new.symbols)
    )
    return Alignment(new, (), cols)


def projection(a: Alignment) -> tuple[tuple[int, int], ...]:
    """One (column index, symbol) entry per column, in column order."""
    return tuple((i, col.symbol) for i, col in enumerate(a.columns))


def validate_alignment(a: Alignment, grammar: Grammar) -> Optional[Violation]:
    """Return None when every structural invariant holds, else the first
    violation found.  Violations are data, not exceptions."""
    rows: dict[int, Pattern] = {NEW_ROW: a.new_pattern}
    for inst in a.instances:
        if inst.pattern_id not in grammar.by_id:
            return Violation("unknown pattern id", row=inst.instance_id)
        rows[inst.instance_id] = grammar.pattern(inst.pattern_id)

    seen_cells: dict[int, list[tuple[int, int]]] = {r: [] for r in rows}
    for ci, col in enumerate(a.columns):
        if not col.cells:
            return Violation("empty column", column=ci)
        rows_in_col = set()
        for cell in col.cells:
            if cell.row not in rows:
                return Violation("cell for unknown row", column=ci, row=cell.row)
            if cell.row in rows_in_col:
                return Violation("two cells from one row", column=ci, row=cell.row)
            rows_in_col.add(cell.row)
            pat = rows[cell.row]
            if not 0 <= cell.index < len(pat.symbols):
                return Violation("cell index out of range", column=ci, row=cell.row)
            if pat.symbols[cell.index] != col.symbol:
                return Violation("mixed symbols in column", column=ci, row=cell.row)
            seen_cells[cell.row].append((ci, cell.index))

    for row, cells in seen_cells.items():
        pat = rows[row]
        indices = [idx for _, idx in cells]
        if sorted(indices) != list(range(len(pat.symbols))):
            return Violation("row does not cover its symbols exactly once", row=row)
        last = (-1, -1)
        for ci, idx in cells:  # cells were appended in column order
            if idx <= last[1]:
                return Violation("order preservation", column=ci, row=row)
            last = (ci, idx)

    for inst in a.instances:
        shared = any(
            any(c.row == inst.instance_id for c in col.cells) and len(col.cells) >= 2
            for col in a.columns
        )
        if not shared:
            return Violation("free-floating instance", row=inst.instance_id)

    # Two instances of one pattern may coexist (repeated words) but may not
    # share a column: stacking a pattern onto itself predicts nothing and
    # would make redundant instances cost-free.
    for ci, col in enumerate(a.columns):
        pids = [
            a.instances[c.row].pattern_id for c in col.cells if c.row != NEW_ROW
        ]
        if len(pids) != len(set(pids)):
            return Violation("same-pattern instances share a column", column=ci)
    return None


def merge(
    a: Alignment,
    pattern: Pattern,
    hits: tuple[tuple[int, int], ...],
    grammar: Grammar,
) -> Alignment:
    """Add a fresh instance of ``pattern``, placing hit symbols into existing
    columns and unhit symbols into new single-cell columns.

    ``hits`` pairs (column position, symbol index) must be strictly
    increasing in both coordinates and symbol-identical; anything else raises
    MergeOrderConflict.  Unhit runs are placed against their nearest hit
    anchor: a run before the first hit goes directly before that column, any
    other run goes directly after the hit column on its left.
    """
    if not hits:
        raise MergeOrderConflict("a merge needs at least one hit")
    last_pos, last_idx = -1, -1
    for pos, idx in hits:
        if pos <= last_pos or idx <= last_idx:
            raise MergeOrderConflict(f"hits not strictly increasing at ({pos}, {idx})")
        if not 0 <= pos < len(a.columns):
            raise MergeOrderConflict(f"hit column {pos} out of range")
        if not 0 <= idx < len(pattern.symbols):
            raise MergeOrderConflict(f"hit index {idx} out of range")
        if a.columns[pos].symbol != pattern.symbols[idx]:
            raise MergeOrderConflict(f"symbol mismatch at ({pos}, {idx})")
        if any(
            c.row != NEW_ROW and a.instances[c.row].pattern_id == pattern.pattern_id
            for c in a.columns[pos].cells
        ):
            raise MergeOrderConflict(
                f"column {pos} already holds a cell of pattern {pattern.pattern_id}"
            )
        last_pos, last_idx = pos, idx

    row = len(a.instances)
    inserts_before: dict[int, list[int]] = {}
    inserts_after: dict[int, list[int]] = {}
    hit_at: dict[int, int] = {pos: idx for pos, idx in hits}

    first_pos, first_idx = hits[0]
    if first_idx > 0:
        inserts_before[first_pos] = list(range(first_idx))
    for (p1, i1), (_, i2) in zip(hits, hits[1:]):
        if i2 - i1 > 1:
            inserts_after[p1] = list(range(i1 + 1, i2))
    last_pos, last_idx = hits[-1]
    if last_idx < len(pattern.symbols) - 1:
        inserts_after[last_pos] = list(range(last_idx + 1, len(pattern.symbols)))

    def single(idx: int) -> AlignmentColumn:
        return AlignmentColumn(pattern.symbols[idx], (Cell(row, idx),))

    new_cols: list[AlignmentColumn] = []
    for pos, col in enumerate(a.columns):
        for idx in inserts_before.get(pos, ()):
            new_cols.append(single(idx))
        if pos in hit_at:
            cells = tuple(sorted(col.cells + (Cell(row, hit_at[pos]),), key=lambda c: c.row))
            new_cols.append(AlignmentColumn(col.symbol, cells))
        else:
            new_cols.append(col)
        for idx in inserts_after.get(pos, ()):
            new_cols.append(single(idx))

    merged = Alignment(
        a.new_pattern,
        a.instances + (Instance(row, pattern.pattern_id),),
        tuple(new_cols),
    )
    return merged


def canonical_key(a: Alignment) -> tuple:
    """Merge-order independent identity of an alignment's structure.

    Instances are relabelled by (first own-cell column, pattern id) so that
    the same final arrangement reached through different merge sequences maps
    to one key.
    """
    first_cell: dict[int, int] = {}
    for ci, col in enumerate(a.columns):
        for cell in col.cells:
            if cell.row != NEW_ROW and cell.row not in first_cell:
                first_cell[cell.row] = ci
    order = sorted(
        (inst.instance_id for inst in a.instances),
        key=lambda r: (first_cell.get(r, -1), a.instances[r].pattern_id, r),
    )
    relabel = {r: i for i, r in enumerate(order)}
    relabel[NEW_ROW] = NEW_ROW
    return tuple(
        (
            col.symbol,
            tuple(sorted((relabel[c.row], c.index) for c in col.cells)),
        )
        for col in a.columns
    )

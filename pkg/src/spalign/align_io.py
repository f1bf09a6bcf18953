"""Serialized alignment format used by the ``score`` CLI command.

Line-oriented, LF endings::

    new <symbol> <symbol> ...
    instance <n> <pattern_id>
    column <symbol> <row>:<index> <row>:<index> ...

Rows are ``new`` or instance numbers as declared by ``instance`` lines.
Column lines appear in column order and must cover every symbol of every
declared row exactly once to form a valid alignment (checked by
validate_alignment, not the parser).
"""

from __future__ import annotations

from .alignment import NEW_ROW, Alignment, AlignmentColumn, Cell, Instance
from .core import Grammar


class AlignmentFormatError(ValueError):
    def __init__(self, line_no: int, message: str) -> None:
        super().__init__(f"line {line_no}: {message}")
        self.line_no = line_no


def serialize_alignment(a: Alignment, grammar: Grammar) -> str:
    table = grammar.table
    lines = ["new " + " ".join(table.name(s) for s in a.new_pattern.symbols)]
    for inst in a.instances:
        lines.append(f"instance {inst.instance_id} {inst.pattern_id}")
    for col in a.columns:
        cells = " ".join(
            ("new" if c.row == NEW_ROW else str(c.row)) + f":{c.index}"
            for c in col.cells
        )
        lines.append(f"column {table.name(col.symbol)} {cells}")
    return "\n".join(lines) + "\n"


def parse_alignment(text: str, grammar: Grammar) -> Alignment:
    new_symbols: list[str] | None = None
    instances: list[Instance] = []
    columns: list[AlignmentColumn] = []
    declared_rows: set[int] = set()

    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        kind = parts[0]
        if kind == "new":
            if new_symbols is not None:
                raise AlignmentFormatError(line_no, "duplicate new line")
            if len(parts) < 2:
                raise AlignmentFormatError(line_no, "new line needs symbols")
            new_symbols = parts[1:]
        elif kind == "instance":
            if len(parts) != 3:
                raise AlignmentFormatError(line_no, "expected: instance <n> <pattern_id>")
            try:
                n = int(parts[1])
            except ValueError:
                raise AlignmentFormatError(line_no, f"bad instance number {parts[1]!r}")
            if n != len(instances):
                raise AlignmentFormatError(line_no, f"instances must be numbered in order, got {n}")
            if parts[2] not in grammar.by_id:
                raise AlignmentFormatError(line_no, f"unknown pattern id {parts[2]!r}")
            instances.append(Instance(n, parts[2]))
            declared_rows.add(n)
        elif kind == "column":
            if new_symbols is None:
                raise AlignmentFormatError(line_no, "column line before new line")
            if len(parts) < 3:
                raise AlignmentFormatError(line_no, "column line needs symbol and cells")
            sym_name = parts[1]
            cells = []
            for token in parts[2:]:
                try:
                    row_txt, idx_txt = token.split(":")
                    row = NEW_ROW if row_txt == "new" else int(row_txt)
                    idx = int(idx_txt)
                except ValueError:
                    raise AlignmentFormatError(line_no, f"bad cell {token!r}")
                if row != NEW_ROW and row not in declared_rows:
                    raise AlignmentFormatError(line_no, f"undeclared row {row}")
                cells.append(Cell(row, idx))
            sid = grammar.table.intern(sym_name)
            columns.append(
                AlignmentColumn(sid, tuple(sorted(cells, key=lambda c: c.row)))
            )
        else:
            raise AlignmentFormatError(line_no, f"unknown line kind {kind!r}")

    if new_symbols is None:
        raise AlignmentFormatError(0, "missing new line")
    new = grammar.make_new(new_symbols)
    return Alignment(new, tuple(instances), tuple(columns))

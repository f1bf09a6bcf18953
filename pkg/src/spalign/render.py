"""Monospace text rendering of alignments.

Each pattern (the New pattern plus one per instance) occupies a text column;
each alignment column becomes one body line.  Cells in the same line are
joined with runs of ``-`` between horizontally adjacent participating
patterns.  Index rows (0 for the New pattern, instances numbered
left-to-right by first hit position) frame the body, separated by blank
lines.  Layout is fully deterministic.
"""

from __future__ import annotations

from .alignment import NEW_ROW, Alignment
from .core import Grammar

COLUMN_GAP = 3


class WidthOverflow(ValueError):
    pass


def _instance_order(a: Alignment) -> list[int]:
    first_cell: dict[int, int] = {}
    first_hit: dict[int, int] = {}
    for ci, col in enumerate(a.columns):
        for cell in col.cells:
            if cell.row == NEW_ROW:
                continue
            first_cell.setdefault(cell.row, ci)
            if col.is_hit and cell.row not in first_hit:
                first_hit[cell.row] = ci
    return sorted(
        (inst.instance_id for inst in a.instances),
        key=lambda r: (
            first_hit.get(r, len(a.columns)),
            first_cell.get(r, len(a.columns)),
            a.instances[r].pattern_id,
            r,
        ),
    )


def render_alignment(a: Alignment, grammar: Grammar, column_width: int | None = None) -> str:
    """Render in the fixed layout pinned by the golden tests.

    ``column_width`` overrides the per-pattern width (longest symbol in that
    pattern's text column); a symbol wider than the override raises
    WidthOverflow.
    """
    table = grammar.table
    order = [NEW_ROW] + _instance_order(a)
    slot = {row: i for i, row in enumerate(order)}
    labels = [str(i) for i in range(len(order))]

    widths = [len(lbl) for lbl in labels]
    for col in a.columns:
        for cell in col.cells:
            w = len(table.name(col.symbol))
            s = slot[cell.row]
            if column_width is not None and w > column_width:
                raise WidthOverflow(
                    f"symbol {table.name(col.symbol)!r} wider than {column_width}"
                )
            widths[s] = max(widths[s], w)
    if column_width is not None:
        widths = [max(column_width, len(lbl)) for lbl in labels]

    xs = [0]
    for w in widths[:-1]:
        xs.append(xs[-1] + w + COLUMN_GAP)

    def put(line: list[str], x: int, text: str) -> None:
        need = x + len(text)
        if len(line) < need:
            line.extend(" " * (need - len(line)))
        line[x : x + len(text)] = text

    header = []
    put(header, 0, "")
    for lbl, x in zip(labels, xs):
        put(header, x, lbl)

    body_lines = []
    for col in a.columns:
        name = table.name(col.symbol)
        cells = sorted(col.cells, key=lambda c: slot[c.row])
        line: list[str] = []
        prev_x = None
        for cell in cells:
            x = xs[slot[cell.row]]
            if prev_x is not None:
                dash_from = prev_x + len(name) + 1
                dash_to = x - 2
                if dash_to >= dash_from:
                    put(line, dash_from, "-" * (dash_to - dash_from + 1))
            put(line, x, name)
            prev_x = x
        body_lines.append("".join(line))

    head = "".join(header)
    return "\n".join([head, ""] + body_lines + ["", head]) + "\n"

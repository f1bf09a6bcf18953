"""Compression scoring of alignments.

An alignment is judged by how economically it re-encodes the New pattern:

* ``bn`` -- the information in the New pattern that the alignment accounts
  for: the summed costs of New symbols sitting in hit columns.
* ``be`` -- what a receiver still has to be told to reconstruct the
  arrangement: the summed costs of code cells (a pattern's declared ID
  prefix plus its own envelope boundary) that no context predicts.
* ``cd = bn - be`` -- the compression difference; higher is better.

A code cell is predicted, and therefore free, when its column also holds a
non-code cell of some row: a New symbol, or a contents cell of another
pattern (a slot that references it).  Each predictor accounts for one code
cell, so a column pays max(0, code cells - contents cells) times the symbol
cost.  Code cells matched only to other code cells stay priced: stacking a
pattern's identity onto another instance's identity buys nothing; filling a
host's slot does.
"""

from __future__ import annotations

from dataclasses import dataclass

from .alignment import NEW_ROW, Alignment, merge, validate_alignment
from .core import Grammar, Pattern

ROUND_DIGITS = 9


class InvalidAlignment(ValueError):
    pass


class EmptyInput(ValueError):
    pass


@dataclass(frozen=True)
class Score:
    bn: float
    be: float

    @property
    def cd(self) -> float:
        return self.bn - self.be

    def rounded_cd(self) -> float:
        return round(self.cd, ROUND_DIGITS)


def score(a: Alignment, grammar: Grammar, *, validate: bool = False) -> Score:
    """Pure function of (alignment, grammar)."""
    if validate:
        violation = validate_alignment(a, grammar)
        if violation is not None:
            raise InvalidAlignment(str(violation))
    table = grammar.table
    bn = 0.0
    be = 0.0
    for col in a.columns:
        if col.is_hit:
            for cell in col.cells:
                if cell.row == NEW_ROW:
                    bn += table.cost(col.symbol)
        code_cells = 0
        noncode_cells = 0
        for cell in col.cells:
            if cell.row == NEW_ROW:
                noncode_cells += 1
                continue
            pat = grammar.pattern(a.instances[cell.row].pattern_id)
            if grammar.is_code_cell(pat, cell.index):
                code_cells += 1
            else:
                noncode_cells += 1
        if code_cells > noncode_cells:
            be += (code_cells - noncode_cells) * table.cost(col.symbol)
    return Score(bn, be)


def _column_profile(a: Alignment, pos: int, grammar: Grammar) -> tuple[int, int]:
    """(non-code cell count, code cell count) for one column."""
    col = a.columns[pos]
    noncode = 0
    code = 0
    for cell in col.cells:
        if cell.row == NEW_ROW:
            noncode += 1
            continue
        pat = grammar.pattern(a.instances[cell.row].pattern_id)
        if grammar.is_code_cell(pat, cell.index):
            code += 1
        else:
            noncode += 1
    return noncode, code


def hit_gains(
    a: Alignment, pattern: Pattern, pos: int, idx: int, grammar: Grammar
) -> tuple[float, float]:
    """(bn gain, be reduction) from pairing pattern[idx] with column pos,
    relative to leaving that symbol unhit."""
    table = grammar.table
    col = a.columns[pos]
    bn = 0.0
    be = 0.0
    if not col.is_hit and col.cells[0].row == NEW_ROW:
        bn += table.cost(col.symbol)  # newly explained New symbol
    noncode, code = _column_profile(a, pos, grammar)
    if grammar.is_code_cell(pattern, idx):
        if noncode > code:
            be += table.cost(pattern.symbols[idx])  # own code cell predicted
    else:
        if code > noncode:
            be += table.cost(col.symbol)  # newly predicts one code cell here
    return bn, be


def hit_weight(a: Alignment, pattern: Pattern, pos: int, idx: int, grammar: Grammar) -> float:
    bn, be = hit_gains(a, pattern, pos, idx, grammar)
    return bn + be


def merged_score(
    a: Alignment,
    base: Score,
    pattern: Pattern,
    hits: tuple[tuple[int, int], ...],
    grammar: Grammar,
) -> Score:
    """Score of merge(a, pattern, hits) built incrementally from ``base``.

    Equals the full recomputation up to float addition order; search results
    are re-scored from scratch before being returned.
    """
    bn = base.bn
    be = base.be + own_code_total(pattern, grammar)
    for pos, idx in hits:
        dbn, dbe = hit_gains(a, pattern, pos, idx, grammar)
        bn += dbn
        be -= dbe
    return Score(bn, be)


def own_code_total(pattern: Pattern, grammar: Grammar) -> float:
    """Cost the instance pays when none of its code cells are matched."""
    return sum(
        grammar.table.cost(sym)
        for idx, sym in enumerate(pattern.symbols)
        if grammar.is_code_cell(pattern, idx)
    )


def delta_cd(
    a: Alignment,
    pattern: Pattern,
    hits: tuple[tuple[int, int], ...],
    grammar: Grammar,
) -> float:
    """Exactly score(merge(a, pattern, hits)).cd - score(a).cd.

    Computed additively from per-hit weights; the identity with the full
    recomputation is covered by tests.
    """
    total = -own_code_total(pattern, grammar)
    for pos, idx in hits:
        total += hit_weight(a, pattern, pos, idx, grammar)
    return total


def delta_cd_recompute(
    a: Alignment,
    pattern: Pattern,
    hits: tuple[tuple[int, int], ...],
    grammar: Grammar,
) -> float:
    merged = merge(a, pattern, hits, grammar)
    return score(merged, grammar).cd - score(a, grammar).cd


def relative_probabilities(scores: list[Score]) -> list[float]:
    """p_i = 2^(-be_i) / sum_j 2^(-be_j) over the given alternatives."""
    if not scores:
        raise EmptyInput("need at least one alternative")
    m = min(s.be for s in scores)
    weights = [2.0 ** (m - s.be) for s in scores]
    z = sum(weights)
    return [w / z for w in weights]

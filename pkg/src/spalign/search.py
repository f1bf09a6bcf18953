"""Beam construction of multiple alignments.

The beam starts from the bare New pattern.  Each round, every not yet
expanded beam state is aligned pairwise against every grammar pattern; the
top hit sets per (state, pattern) produce candidate merges, and the beam
keeps the best states under the deterministic ranking.  The search stops when
a round leaves the beam unchanged or the iteration cap is reached.  States
are deduplicated by their merge-order independent structure, so the ranked
result is deterministic for fixed inputs and configuration.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

from .alignment import (
    NEW_ROW,
    Alignment,
    bare_alignment,
    canonical_key,
    merge,
    projection,
)
from .core import Grammar, Pattern, Status
from .scoring import (
    ROUND_DIGITS,
    Score,
    hit_weight,
    merged_score,
    own_code_total,
    score,
)

ENUMERATION_CAP = 10_000


@dataclass(frozen=True)
class SearchConfig:
    beam_width: int = 50
    pairwise_k: int = 10
    max_instances: int = 32
    max_iterations: int = 20

    def __post_init__(self) -> None:
        for name in ("beam_width", "pairwise_k", "max_instances", "max_iterations"):
            if getattr(self, name) < 1:
                raise ValueError(f"{name} must be >= 1")


class HitSet(NamedTuple):
    hits: tuple[tuple[int, int], ...]
    delta: float


def _pairs(
    a: Alignment, pattern: Pattern, grammar: Grammar
) -> list[tuple[int, int]]:
    """Legal (column position, symbol index) pairings.

    Columns already holding a cell of the same pattern are excluded so that
    an instance can never stack onto another instance of itself.  A code
    cell may only pair into a column with enough contents cells to predict
    it; pairings that leave the code cell priced anyway explain nothing and
    only distort the layout.
    """
    by_symbol: dict[int, list[int]] = {}
    for j, sym in enumerate(pattern.symbols):
        by_symbol.setdefault(sym, []).append(j)
    out = []
    for pos, col in enumerate(a.columns):
        indices = by_symbol.get(col.symbol)
        if not indices:
            continue
        if any(
            c.row != NEW_ROW and a.instances[c.row].pattern_id == pattern.pattern_id
            for c in col.cells
        ):
            continue
        noncode = 0
        code = 0
        for c in col.cells:
            if c.row == NEW_ROW:
                noncode += 1
            elif grammar.is_code_cell(
                grammar.pattern(a.instances[c.row].pattern_id), c.index
            ):
                code += 1
            else:
                noncode += 1
        for j in indices:
            if grammar.is_code_cell(pattern, j) and noncode <= code:
                continue
            out.append((pos, j))
    out.sort()
    return out


def count_hit_sets(a: Alignment, pattern: Pattern, grammar: Grammar) -> int:
    """Number of non-empty monotone matchings between the alignment's
    projection and the pattern."""
    pairs = _pairs(a, pattern, grammar)
    ending: list[int] = []
    total = 0
    for i, (pos, idx) in enumerate(pairs):
        n = 1
        for k in range(i):
            p2, i2 = pairs[k]
            if p2 < pos and i2 < idx:
                n += ending[k]
        ending.append(n)
        total += n
    return total


def pairwise_align(
    a: Alignment, pattern: Pattern, grammar: Grammar, k: int
) -> list[HitSet]:
    """Top-k hit sets between the alignment's projection and a pattern,
    ordered by descending score change then lexicographic hit coordinates.

    When the space of legal hit sets is small (<= 10,000) they are all
    enumerated and ranked outright; otherwise a k-best dynamic program over
    the same additive weights is used.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    pairs = _pairs(a, pattern, grammar)
    if not pairs:
        return []
    weights = {
        (pos, idx): hit_weight(a, pattern, pos, idx, grammar) for pos, idx in pairs
    }
    base = -own_code_total(pattern, grammar)

    if count_hit_sets(a, pattern, grammar) <= ENUMERATION_CAP:
        results: list[HitSet] = []
        chain: list[tuple[int, int]] = []

        def extend(start: int, acc: float) -> None:
            if chain:
                results.append(HitSet(tuple(chain), base + acc))
            for i in range(start, len(pairs)):
                pos, idx = pairs[i]
                if chain and (pos <= chain[-1][0] or idx <= chain[-1][1]):
                    continue
                chain.append((pos, idx))
                extend(i + 1, acc + weights[(pos, idx)])
                chain.pop()

        extend(0, 0.0)
        results.sort(key=lambda h: (-round(h.delta, ROUND_DIGITS), -len(h.hits), h.hits))
        return results[:k]

    # k-best chains under additive weights
    best_at: list[list[tuple[float, tuple[tuple[int, int], ...]]]] = []
    pool: list[tuple[float, tuple[tuple[int, int], ...]]] = []
    for i, (pos, idx) in enumerate(pairs):
        w = weights[(pos, idx)]
        cands = [(w, ((pos, idx),))]
        for j in range(i):
            p2, i2 = pairs[j]
            if p2 < pos and i2 < idx:
                for val, hits in best_at[j]:
                    cands.append((val + w, hits + ((pos, idx),)))
        cands.sort(key=lambda c: (-round(c[0], ROUND_DIGITS), -len(c[1]), c[1]))
        best_at.append(cands[:k])
        pool.extend(best_at[-1])
    pool.sort(key=lambda c: (-round(c[0], ROUND_DIGITS), -len(c[1]), c[1]))
    return [HitSet(hits, base + val) for val, hits in pool[:k]]


def _lexical_hits(a: Alignment, hits: tuple[tuple[int, int], ...]) -> bool:
    """True when every hit lands on a column holding only a New cell."""
    for pos, _ in hits:
        col = a.columns[pos]
        if len(col.cells) != 1 or col.cells[0].row != NEW_ROW:
            return False
    return True


@dataclass(frozen=True)
class _State:
    alignment: Alignment
    value: Score
    key: tuple


def _rank_key(st: _State) -> tuple:
    return (
        -st.value.rounded_cd(),
        len(st.alignment.instances),
        len(st.alignment.columns),
        tuple(sorted(i.pattern_id for i in st.alignment.instances)),
        tuple(i for i, col in enumerate(st.alignment.columns) if col.is_hit),
        st.key,
    )


def search(
    new: Pattern, grammar: Grammar, cfg: SearchConfig | None = None
) -> list[tuple[Alignment, Score]]:
    """Ranked distinct alignments for a New pattern over the grammar."""
    if new.status is not Status.NEW:
        raise ValueError("search drives a New pattern against old patterns")
    cfg = cfg or SearchConfig()

    start = bare_alignment(new)
    st0 = _State(start, score(start, grammar), canonical_key(start))
    beam: list[_State] = [st0]
    seen: set[tuple] = {st0.key}
    expanded: set[tuple] = set()

    for _ in range(cfg.max_iterations):
        frontier = [st for st in beam if st.key not in expanded]
        if not frontier:
            break
        floor = (
            beam[-1].value.rounded_cd() if len(beam) >= cfg.beam_width else None
        )
        new_states: list[_State] = []
        for st in frontier:
            expanded.add(st.key)
            if len(st.alignment.instances) >= cfg.max_instances:
                continue
            for pattern in grammar.patterns:
                for hs in pairwise_align(st.alignment, pattern, grammar, cfg.pairwise_k):
                    if round(hs.delta, ROUND_DIGITS) <= 0 and not _lexical_hits(
                        st.alignment, hs.hits
                    ):
                        # only strictly improving merges are worth carrying,
                        # except bare word recognitions, which seed structure
                        # whose payoff comes later
                        continue
                    value = merged_score(st.alignment, st.value, pattern, hs.hits, grammar)
                    if floor is not None and value.rounded_cd() < floor:
                        continue  # cannot enter a full beam this round
                    child = merge(st.alignment, pattern, hs.hits, grammar)
                    key = canonical_key(child)
                    if key in seen:
                        continue
                    seen.add(key)
                    new_states.append(_State(child, value, key))
        if not new_states:
            break
        pool = beam + new_states
        pool.sort(key=_rank_key)
        # keep one representative per (score, instance count) class so the
        # beam holds genuinely different partial parses instead of tie
        # variants of the same one; the representative is the ranking-best
        # member of its class
        next_beam: list[_State] = []
        taken: set[tuple] = set()
        for st in pool:
            cls = (st.value.rounded_cd(), len(st.alignment.instances))
            if cls in taken:
                continue
            taken.add(cls)
            next_beam.append(st)
            if len(next_beam) >= cfg.beam_width:
                break
        if [s.key for s in next_beam] == [s.key for s in beam]:
            break
        beam = next_beam

    ranked = sorted(beam, key=_rank_key)
    return [(st.alignment, score(st.alignment, grammar)) for st in ranked]

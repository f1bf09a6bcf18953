"""Exhaustive enumeration of valid alignments at desk scale.

The enumeration walks every sequence of legal merges (every pattern, every
monotone hit combination) up to an instance bound, deduplicating arrangements
by structure.  It is the ground truth the heuristic beam is checked against
on small instances.
"""

from __future__ import annotations

from dataclasses import dataclass

from .alignment import Alignment, bare_alignment, canonical_key, merge
from .core import Grammar, Pattern
from .scoring import Score, score
from .search import _State, _pairs, _rank_key

MAX_PATTERNS = 5
MAX_PATTERN_LEN = 6
MAX_NEW_LEN = 8
MAX_INSTANCE_BOUND = 3
STATE_SAFETY_CAP = 500_000


class BoundsExceeded(ValueError):
    pass


@dataclass(frozen=True)
class OracleResult:
    best_cd: float
    count_of_valid_alignments: int
    best_alignment: Alignment
    best_score: Score


def _all_hit_sets(
    a: Alignment, pattern: Pattern, grammar: Grammar
) -> list[tuple[tuple[int, int], ...]]:
    pairs = _pairs(a, pattern, grammar)
    out: list[tuple[tuple[int, int], ...]] = []
    chain: list[tuple[int, int]] = []

    def extend(start: int) -> None:
        if chain:
            out.append(tuple(chain))
        for i in range(start, len(pairs)):
            pos, idx = pairs[i]
            if chain and (pos <= chain[-1][0] or idx <= chain[-1][1]):
                continue
            chain.append((pos, idx))
            extend(i + 1)
            chain.pop()

    extend(0)
    return out


def oracle_enumerate(new: Pattern, grammar: Grammar, max_instances: int) -> OracleResult:
    if max_instances > MAX_INSTANCE_BOUND:
        raise BoundsExceeded(f"instance bound {max_instances} > {MAX_INSTANCE_BOUND}")
    if len(grammar.patterns) > MAX_PATTERNS:
        raise BoundsExceeded(f"{len(grammar.patterns)} patterns > {MAX_PATTERNS}")
    if any(len(p) > MAX_PATTERN_LEN for p in grammar.patterns):
        raise BoundsExceeded(f"pattern longer than {MAX_PATTERN_LEN} symbols")
    if len(new) > MAX_NEW_LEN:
        raise BoundsExceeded(f"new pattern longer than {MAX_NEW_LEN} symbols")

    start = bare_alignment(new)
    seen: dict[tuple, _State] = {}
    st0 = _State(start, score(start, grammar), canonical_key(start))
    seen[st0.key] = st0
    stack = [st0]
    while stack:
        st = stack.pop()
        if len(st.alignment.instances) >= max_instances:
            continue
        for pattern in grammar.patterns:
            for hits in _all_hit_sets(st.alignment, pattern, grammar):
                child = merge(st.alignment, pattern, hits, grammar)
                key = canonical_key(child)
                if key in seen:
                    continue
                cst = _State(child, score(child, grammar), key)
                seen[key] = cst
                if len(seen) > STATE_SAFETY_CAP:
                    raise BoundsExceeded("state space explosion")
                stack.append(cst)

    best = min(seen.values(), key=_rank_key)
    return OracleResult(
        best_cd=best.value.cd,
        count_of_valid_alignments=len(seen),
        best_alignment=best.alignment,
        best_score=best.value,
    )

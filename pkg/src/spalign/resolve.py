"""Pronoun resolution over best alignments.

The resolver runs the alignment search on a sentence, then reads the
referent off the best alignment: it finds the instance carrying the pronoun,
finds an association pattern linked to that instance's class/boundary
columns, and follows the association's distinguishing symbol into a lexical
noun pattern -- directly, through class membership (attribute inheritance),
or through a bracketed role slot in a clause pattern.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional

from .alignment import NEW_ROW, Alignment
from .core import Grammar, Pattern
from .scoring import Score, relative_probabilities
from .search import SearchConfig, search

DEFAULT_CHAIN_DEPTH = 4
DEFAULT_REFERENT_CLASSES = frozenset({"N"})
CONFIDENCE_POOL = 10


class ResolutionError(ValueError):
    pass


class NoPronounInstance(ResolutionError):
    pass


class NoBridge(ResolutionError):
    pass


class AmbiguousBridge(ResolutionError):
    pass


@dataclass(frozen=True)
class WsQuery:
    """A sentence (lower-cased word list), the pronoun to resolve, and the
    grammar supplying syntax and associations."""

    sentence: tuple[str, ...]
    pronoun: str
    grammar: Grammar

    def __post_init__(self) -> None:
        if self.pronoun not in self.sentence:
            raise ValueError(f"pronoun {self.pronoun!r} does not occur in sentence")


@dataclass(frozen=True)
class Resolution:
    referent_word: str
    referent_pattern_id: str
    bridge_pattern_id: str
    attribute_symbol: str
    best_alignment: Alignment
    score: Score
    confidence: float


@dataclass(frozen=True)
class PairReport:
    resolution_a: Resolution
    resolution_b: Resolution

    @property
    def flipped(self) -> bool:
        return self.resolution_a.referent_word != self.resolution_b.referent_word


class _Reader:
    """Referent extraction from one alignment."""

    def __init__(self, a: Alignment, grammar: Grammar, referent_classes: frozenset[str]):
        self.a = a
        self.g = grammar
        self.referent_classes = referent_classes
        self.table = grammar.table
        # columns per row, and rows per column, for link walking
        self.cols_of_row: dict[int, list[int]] = {}
        for ci, col in enumerate(a.columns):
            for cell in col.cells:
                self.cols_of_row.setdefault(cell.row, []).append(ci)
        # symbols that identify grammatical machinery rather than attributes:
        # class markers (pattern-initial symbols) and declared ID symbols
        self.marker_owners: dict[int, set[str]] = {}
        for p in grammar.patterns:
            self.marker_owners.setdefault(p.symbols[0], set()).add(p.pattern_id)
            for idx in range(p.id_prefix_len):
                self.marker_owners.setdefault(p.symbols[idx], set()).add(p.pattern_id)

    def pattern_of(self, row: int) -> Pattern:
        return self.a.row_pattern(row, self.g)

    def surface_word(self, row: int) -> Optional[str]:
        """The symbol this instance shares with the New row, if any."""
        for ci in self.cols_of_row.get(row, ()):
            col = self.a.columns[ci]
            if any(c.row == NEW_ROW for c in col.cells):
                return self.table.name(col.symbol)
        return None

    def is_grammatical_symbol(self, sym: int, own_pattern_id: str) -> bool:
        owners = self.marker_owners.get(sym)
        if not owners:
            return False
        return any(pid != own_pattern_id for pid in owners)

    def column_rows(self, ci: int) -> list[int]:
        return [c.row for c in self.a.columns[ci].cells]

    def find_pronoun_instance(self, pronoun: str) -> int:
        for ci, col in enumerate(self.a.columns):
            if self.table.name(col.symbol) != pronoun:
                continue
            rows = {c.row for c in col.cells}
            if NEW_ROW not in rows:
                continue
            for row in sorted(r for r in rows if r != NEW_ROW):
                return row
        raise NoPronounInstance(f"pronoun {pronoun!r} not matched by any pattern")

    def bridge_candidates(self, pronoun_row: int) -> list[int]:
        """Instances aligned with the pronoun pattern's cells, directly or
        through one intermediate pattern."""
        direct: set[int] = set()
        for ci in self.cols_of_row.get(pronoun_row, ()):
            for row in self.column_rows(ci):
                if row not in (NEW_ROW, pronoun_row):
                    direct.add(row)
        indirect: set[int] = set()
        for mid in direct:
            for ci in self.cols_of_row.get(mid, ()):
                for row in self.column_rows(ci):
                    if row not in (NEW_ROW, pronoun_row) and row not in direct:
                        indirect.add(row)
        return sorted(direct) + sorted(indirect)

    def is_lexical(self, row: int) -> bool:
        return self.surface_word(row) is not None

    def fully_matched(self, row: int) -> bool:
        """Every cell of the instance sits in a hit column.

        An association asserts all of its symbols together; one whose
        distinguishing cells dangle unmatched has not fired.
        """
        for ci in self.cols_of_row.get(row, ()):
            if not self.a.columns[ci].is_hit:
                return False
        return True

    def noun_class(self, row: int) -> bool:
        pat = self.pattern_of(row)
        return self.table.name(pat.symbols[0]) in self.referent_classes

    def attribute_chain(
        self, bridge_row: int, pronoun_row: int, depth_limit: int
    ) -> Optional[tuple[str, int]]:
        """(attribute symbol, referent row) reached from the bridge by
        following a shared non-grammatical symbol, descending class links."""
        bid = self.a.instances[bridge_row].pattern_id
        for ci in self.cols_of_row.get(bridge_row, ()):
            col = self.a.columns[ci]
            name = self.table.name(col.symbol)
            if name.startswith("#"):
                continue
            if self.is_grammatical_symbol(col.symbol, bid):
                continue
            for cell in col.cells:
                if cell.row in (bridge_row, pronoun_row, NEW_ROW):
                    continue
                target = self.descend_to_noun(cell.row, pronoun_row, depth_limit)
                if target is not None:
                    return name, target
        return None

    def descend_to_noun(
        self, row: int, pronoun_row: int, depth_limit: int
    ) -> Optional[int]:
        """Resolve a row to a lexical noun, following class membership:
        a non-lexical pattern's class symbol may be referenced from a more
        specific pattern's contents."""
        if depth_limit < 0:
            return None
        if row == pronoun_row:
            return None
        if self.is_lexical(row) and self.noun_class(row):
            return row
        if self.is_lexical(row):
            return None
        # class pattern: follow its class-symbol column into patterns that
        # reference it as contents
        for ci in self.cols_of_row.get(row, ()):
            col = self.a.columns[ci]
            cell = next(c for c in col.cells if c.row == row)
            if cell.index != 0:
                continue
            for other in col.cells:
                if other.row in (row, NEW_ROW):
                    continue
                if other.index == 0:
                    continue  # another pattern's own class marker, not a slot
                found = self.descend_to_noun(other.row, pronoun_row, depth_limit - 1)
                if found is not None:
                    return found
        return None

    def role_chain(
        self, bridge_row: int, pronoun_row: int, depth_limit: int
    ) -> Optional[tuple[str, int]]:
        """Referent through a bracketed role slot: the bridge matches a
        ``x ... #x`` pair inside a host pattern; the slot between them names
        the referent's phrase."""
        bpat = self.pattern_of(bridge_row)
        names = [self.table.name(s) for s in bpat.symbols]
        for i, open_name in enumerate(names):
            if open_name.startswith("#"):
                continue
            close_name = "#" + open_name
            for j in range(i + 1, len(names)):
                if names[j] != close_name:
                    continue
                host = self._slot_host(bridge_row, i, j)
                if host is None:
                    continue
                host_row, lo, hi = host
                referent = self._descend_slot(host_row, lo, hi, pronoun_row, depth_limit)
                if referent is not None:
                    return open_name, referent
        return None

    def _cell_column(self, row: int, index: int) -> Optional[int]:
        for ci in self.cols_of_row.get(row, ()):
            col = self.a.columns[ci]
            if any(c.row == row and c.index == index for c in col.cells):
                return ci
        return None

    def _slot_host(
        self, bridge_row: int, open_idx: int, close_idx: int
    ) -> Optional[tuple[int, int, int]]:
        """Instance whose cells share both role columns with a non-empty
        symbol span in between."""
        ci = self._cell_column(bridge_row, open_idx)
        cj = self._cell_column(bridge_row, close_idx)
        if ci is None or cj is None:
            return None
        open_rows = {c.row: c.index for c in self.a.columns[ci].cells}
        close_rows = {c.row: c.index for c in self.a.columns[cj].cells}
        for row in sorted(set(open_rows) & set(close_rows)):
            if row in (bridge_row, NEW_ROW):
                continue
            lo, hi = open_rows[row], close_rows[row]
            # a genuine host brackets a span mid-pattern; a filler merely
            # plugged in at its own class cell is not a host
            if lo > 0 and hi - lo > 1:
                return row, lo, hi
        return None

    def _descend_slot(
        self, host_row: int, lo: int, hi: int, pronoun_row: int, depth_limit: int
    ) -> Optional[int]:
        if depth_limit < 0:
            return None
        for idx in range(lo + 1, hi):
            ci = self._cell_column(host_row, idx)
            if ci is None:
                continue
            for cell in self.a.columns[ci].cells:
                if cell.row in (host_row, NEW_ROW, pronoun_row):
                    continue
                if cell.index != 0:
                    continue  # want the plugged pattern's own class cell
                row = cell.row
                if self.is_lexical(row) and self.noun_class(row):
                    return row
                pat = self.pattern_of(row)
                found = self._descend_slot(
                    row, 0, len(pat.symbols) - 1, pronoun_row, depth_limit - 1
                )
                if found is not None:
                    return found
        return None

    def referent(
        self, pronoun: str, depth_limit: int
    ) -> Optional[tuple[str, str, str, str]]:
        """(referent word, referent pattern id, bridge pattern id, attribute)
        or None when this alignment has no readable association."""
        try:
            pronoun_row = self.find_pronoun_instance(pronoun)
        except NoPronounInstance:
            return None
        candidates = [
            brow
            for brow in self.bridge_candidates(pronoun_row)
            if self.fully_matched(brow)
        ]
        found: list[tuple[str, str, str, str]] = []
        for brow in candidates:
            chain = self.attribute_chain(brow, pronoun_row, depth_limit)
            if chain is not None:
                attr, target = chain
                found.append(
                    (
                        self.surface_word(target),
                        self.a.instances[target].pattern_id,
                        self.a.instances[brow].pattern_id,
                        attr,
                    )
                )
        if not found:
            for brow in candidates:
                chain = self.role_chain(brow, pronoun_row, depth_limit)
                if chain is not None:
                    attr, target = chain
                    found.append(
                        (
                            self.surface_word(target),
                            self.a.instances[target].pattern_id,
                            self.a.instances[brow].pattern_id,
                            attr,
                        )
                    )
        if not found:
            return None
        referents = {f[0] for f in found}
        if len(referents) > 1:
            raise AmbiguousBridge(
                f"bridges disagree on the referent: {sorted(referents)}"
            )
        return found[0]


def resolve(
    query: WsQuery,
    cfg: SearchConfig | None = None,
    *,
    depth_limit: int = DEFAULT_CHAIN_DEPTH,
    referent_classes: frozenset[str] = DEFAULT_REFERENT_CLASSES,
) -> Resolution:
    """Find the pronoun's referent via the best alignment of the sentence."""
    g = query.grammar
    new = g.make_new(query.sentence)
    results = search(new, g, cfg)
    if not results:
        raise NoPronounInstance("search produced no alignments")

    best, best_score = results[0]
    reader = _Reader(best, g, referent_classes)
    pronoun_row = reader.find_pronoun_instance(query.pronoun)  # NoPronounInstance
    outcome = reader.referent(query.pronoun, depth_limit)
    if outcome is None:
        raise NoBridge(
            f"no pattern links pronoun {query.pronoun!r} to a referent attribute"
        )
    word, ref_pid, bridge_pid, attr = outcome

    # confidence: best alignment against returned rivals naming other referents
    pool: list[Score] = [best_score]
    for a, s in results[1:CONFIDENCE_POOL]:
        try:
            alt = _Reader(a, g, referent_classes).referent(query.pronoun, depth_limit)
        except AmbiguousBridge:
            continue
        if alt is not None and alt[0] != word:
            pool.append(s)
    confidence = relative_probabilities(pool)[0]

    return Resolution(
        referent_word=word,
        referent_pattern_id=ref_pid,
        bridge_pattern_id=bridge_pid,
        attribute_symbol=attr,
        best_alignment=best,
        score=best_score,
        confidence=confidence,
    )


def resolve_with_inheritance(
    query: WsQuery,
    cfg: SearchConfig | None = None,
    *,
    depth_limit: int = DEFAULT_CHAIN_DEPTH,
) -> Resolution:
    """Same contract as resolve; the attribute may be inherited through
    class-membership links up to ``depth_limit`` steps."""
    return resolve(query, cfg, depth_limit=depth_limit)


def schema_pair_report(
    item_a: WsQuery, item_b: WsQuery, cfg: SearchConfig | None = None
) -> PairReport:
    """Resolve both items of a schema pair and report whether the one-or-two
    word change flips the referent."""
    if item_a.sentence == item_b.sentence:
        raise ValueError("schema items must differ in at least one word")
    return PairReport(resolve(item_a, cfg), resolve(item_b, cfg))

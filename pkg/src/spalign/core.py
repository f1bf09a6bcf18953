"""Symbol interning, pattern records, and grammar construction.

A grammar is a fixed repository of "old" patterns (stored knowledge).  Each
pattern is an ordered sequence of symbols plus a frequency and a declared
ID-prefix length.  Symbol costs are Shannon costs derived from the
frequency-weighted symbol counts over the whole grammar, so they are invariant
under uniform scaling of the pattern frequencies.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable, Sequence

BOUNDARY_MARK = "#"


class GrammarError(ValueError):
    """Base class for grammar construction problems."""


class DuplicatePatternId(GrammarError):
    pass


class EmptyPattern(GrammarError):
    pass


class BadIdPrefix(GrammarError):
    pass


class Status(Enum):
    NEW = "new"
    OLD = "old"


@dataclass(frozen=True)
class RawPattern:
    """One pattern record as read from a grammar file (strings, not ids)."""

    pattern_id: str
    symbols: tuple[str, ...]
    frequency: int = 1
    id_prefix_len: int = 2


class SymbolTable:
    """Interned symbol strings with frequency-derived bit costs.

    Frequencies count occurrences across old patterns, weighted by pattern
    frequency.  cost(s) = -log2(freq(s) / F) where F is the total count.
    Symbols interned after the table is sealed (e.g. words that occur only in
    a sentence under analysis) get frequency 0 and the smoothing cost
    log2(F + 1) so scoring stays total.
    """

    def __init__(self) -> None:
        self._ids: dict[str, int] = {}
        self._names: list[str] = []
        self._freqs: list[int] = []
        self._costs: list[float] = []
        self._total = 0
        self._sealed = False

    def intern(self, name: str) -> int:
        sid = self._ids.get(name)
        if sid is None:
            sid = len(self._names)
            self._ids[name] = sid
            self._names.append(name)
            self._freqs.append(0)
            self._costs.append(0.0)
        return sid

    def seal(self, counts: dict[int, int]) -> None:
        """Fix frequencies and costs; later interns are zero-frequency."""
        if self._sealed:
            raise GrammarError("symbol table already sealed")
        total = sum(counts.values())
        self._total = total
        for sid, n in counts.items():
            self._freqs[sid] = n
        smooth = math.log2(total + 1) if total else 0.0
        for sid in range(len(self._names)):
            n = self._freqs[sid]
            self._costs[sid] = -math.log2(n / total) if n else smooth
        self._smooth = smooth
        self._sealed = True

    def name(self, sid: int) -> str:
        return self._names[sid]

    def frequency(self, sid: int) -> int:
        return self._freqs[sid] if sid < len(self._freqs) else 0

    def cost(self, sid: int) -> float:
        if sid >= len(self._costs):
            return self._smooth
        c = self._costs[sid]
        if c == 0.0 and self._freqs[sid] == 0:
            return self._smooth
        return c

    def is_boundary(self, sid: int) -> bool:
        return self._names[sid].startswith(BOUNDARY_MARK)

    @property
    def total(self) -> int:
        return self._total

    def __len__(self) -> int:
        return len(self._names)

    def entries(self) -> list[tuple[str, int, float]]:
        return [
            (self._names[i], self._freqs[i], self.cost(i))
            for i in range(len(self._names))
        ]


@dataclass(frozen=True)
class Pattern:
    """Ordered symbol sequence with identity, frequency and ID prefix."""

    pattern_id: str
    symbols: tuple[int, ...]
    frequency: int
    id_prefix_len: int
    status: Status

    def __len__(self) -> int:
        return len(self.symbols)

    def is_id_index(self, idx: int) -> bool:
        return idx < self.id_prefix_len


@dataclass(frozen=True)
class Grammar:
    """Immutable repository of old patterns plus the derived symbol table."""

    patterns: tuple[Pattern, ...]
    table: SymbolTable
    by_id: dict[str, Pattern] = field(repr=False)

    def pattern(self, pattern_id: str) -> Pattern:
        return self.by_id[pattern_id]

    def make_new(self, words: Sequence[str], pattern_id: str = "new") -> Pattern:
        """Build a New pattern over this grammar's symbol space."""
        if not words:
            raise EmptyPattern("new pattern needs at least one symbol")
        syms = tuple(self.table.intern(w) for w in words)
        return Pattern(pattern_id, syms, 1, 0, Status.NEW)

    def is_code_cell(self, pattern: Pattern, idx: int) -> bool:
        """True when this cell carries encoding cost while unpredicted.

        Code cells are the declared ID prefix plus the pattern's own envelope
        boundary (the ``#X`` matching its class symbol ``X``).  Boundary
        symbols for embedded slots (``#D`` inside a noun-phrase pattern) are
        structural contents, not code.
        """
        if pattern.status is Status.NEW:
            return False
        if pattern.is_id_index(idx):
            return True
        name = self.table.name(pattern.symbols[idx])
        return name == BOUNDARY_MARK + self.table.name(pattern.symbols[0])

    def first_symbol_ids(self) -> frozenset[int]:
        """Symbols that open some pattern (class markers)."""
        return frozenset(p.symbols[0] for p in self.patterns)

    def id_prefix_symbol_ids(self) -> frozenset[int]:
        """Symbols occurring inside any pattern's declared ID prefix."""
        out = set()
        for p in self.patterns:
            out.update(p.symbols[: p.id_prefix_len])
        return frozenset(out)


def build_grammar(records: Iterable[RawPattern]) -> Grammar:
    """Intern all symbols, validate records, derive frequencies and costs."""
    table = SymbolTable()
    patterns: list[Pattern] = []
    by_id: dict[str, Pattern] = {}
    counts: dict[int, int] = {}
    for rec in records:
        if rec.pattern_id in by_id:
            raise DuplicatePatternId(rec.pattern_id)
        if not rec.symbols:
            raise EmptyPattern(rec.pattern_id)
        if not 0 <= rec.id_prefix_len <= len(rec.symbols):
            raise BadIdPrefix(
                f"{rec.pattern_id}: id_prefix_len {rec.id_prefix_len} "
                f"outside [0, {len(rec.symbols)}]"
            )
        if rec.frequency < 1:
            raise GrammarError(f"{rec.pattern_id}: frequency must be >= 1")
        syms = tuple(table.intern(s) for s in rec.symbols)
        for sid in syms:
            counts[sid] = counts.get(sid, 0) + rec.frequency
        pat = Pattern(rec.pattern_id, syms, rec.frequency, rec.id_prefix_len, Status.OLD)
        patterns.append(pat)
        by_id[rec.pattern_id] = pat
    table.seal(counts)
    return Grammar(tuple(patterns), table, by_id)


def scale_grammar(records: Iterable[RawPattern], k: int) -> list[RawPattern]:
    """Multiply every pattern frequency by k (for invariance checks)."""
    return [
        RawPattern(r.pattern_id, r.symbols, r.frequency * k, r.id_prefix_len)
        for r in records
    ]

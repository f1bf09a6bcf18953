"""Grammar file parsing and canonical serialization.

Line format (pipe-separated, LF endings)::

    PATTERN_ID | FREQ | ID_PREFIX_LEN | sym sym sym ...

FREQ and ID_PREFIX_LEN may be omitted (defaults 1 and 2): two fields mean
``id | symbols`` and three mean ``id | freq | symbols``.  Lines starting with
``#`` are comments; blank lines are ignored.  Symbols are arbitrary
non-whitespace strings not containing ``|``.
"""

from __future__ import annotations

from .core import DuplicatePatternId, RawPattern

DEFAULT_FREQ = 1
DEFAULT_ID_PREFIX_LEN = 2


class GrammarSyntaxError(ValueError):
    def __init__(self, line_no: int, message: str) -> None:
        super().__init__(f"line {line_no}: {message}")
        self.line_no = line_no


def parse_grammar(text: str) -> list[RawPattern]:
    records: list[RawPattern] = []
    seen: set[str] = set()
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = [p.strip() for p in line.split("|")]
        if len(parts) < 2 or len(parts) > 4:
            raise GrammarSyntaxError(line_no, "expected 2 to 4 pipe-separated fields")
        pattern_id = parts[0]
        if not pattern_id:
            raise GrammarSyntaxError(line_no, "empty pattern id")
        freq = DEFAULT_FREQ
        prefix = DEFAULT_ID_PREFIX_LEN
        if len(parts) >= 3:
            try:
                freq = int(parts[1])
            except ValueError:
                raise GrammarSyntaxError(line_no, f"frequency not an integer: {parts[1]!r}")
        if len(parts) == 4:
            try:
                prefix = int(parts[2])
            except ValueError:
                raise GrammarSyntaxError(
                    line_no, f"id prefix length not an integer: {parts[2]!r}"
                )
        symbols = tuple(parts[-1].split())
        if not symbols:
            raise GrammarSyntaxError(line_no, "pattern has no symbols")
        if freq < 1:
            raise GrammarSyntaxError(line_no, f"frequency must be >= 1, got {freq}")
        if not 0 <= prefix <= len(symbols):
            raise GrammarSyntaxError(
                line_no, f"id prefix length {prefix} outside [0, {len(symbols)}]"
            )
        if pattern_id in seen:
            raise DuplicatePatternId(f"line {line_no}: {pattern_id}")
        seen.add(pattern_id)
        records.append(RawPattern(pattern_id, symbols, freq, prefix))
    return records


def serialize_grammar(records: list[RawPattern]) -> str:
    """Canonical form: all four fields, single spaces, LF line endings."""
    lines = [
        f"{r.pattern_id} | {r.frequency} | {r.id_prefix_len} | {' '.join(r.symbols)}"
        for r in records
    ]
    return "\n".join(lines) + ("\n" if lines else "")


def load_grammar_file(path: str) -> list[RawPattern]:
    with open(path, "r", encoding="ascii") as fh:
        return parse_grammar(fh.read())

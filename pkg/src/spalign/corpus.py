"""Bundled grammars and the schema manifest."""

from __future__ import annotations

import json
from dataclasses import dataclass
from importlib import resources
from pathlib import Path

from .core import Grammar, build_grammar
from .grammar_io import parse_grammar

GRAMMAR_NAMES = (
    "fortune_brave",
    "councilmen",
    "councilmen_direct",
    "councilmen_inherit",
    "pete_martin",
    "fish_worm",
)


@dataclass(frozen=True)
class ManifestEntry:
    grammar: str
    sentence: tuple[str, ...]
    pronoun: str
    referent: str
    bridge: str


def corpus_dir() -> Path:
    return Path(resources.files("spalign").joinpath("corpus_data"))


def grammar_path(name: str) -> Path:
    stem = name[:-4] if name.endswith(".spg") else name
    if stem not in GRAMMAR_NAMES:
        raise KeyError(f"unknown bundled grammar {name!r}")
    return corpus_dir() / f"{stem}.spg"


def load_corpus_grammar(name: str) -> Grammar:
    text = grammar_path(name).read_text(encoding="ascii")
    return build_grammar(parse_grammar(text))


def corpus_manifest() -> list[ManifestEntry]:
    """The six schema items with their expected outcomes."""
    raw = json.loads((corpus_dir() / "manifest.json").read_text(encoding="ascii"))
    return [
        ManifestEntry(
            grammar=item["grammar"],
            sentence=tuple(item["sentence"].split()),
            pronoun=item["pronoun"],
            referent=item["referent"],
            bridge=item["bridge"],
        )
        for item in raw["items"]
    ]

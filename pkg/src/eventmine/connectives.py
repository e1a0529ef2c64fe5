"""Explicit discourse connectives and their mapping onto the six event relations."""

from __future__ import annotations

import enum
from dataclasses import dataclass
from importlib import resources
from typing import Iterable

from .conllu import Sentence


class RelationLabel(str, enum.Enum):
    CAUSE = "Cause"
    EFFECT = "Effect"
    AFTER = "After"
    BEFORE = "Before"
    IS_COND = "isCond"
    HAS_COND = "hasCond"

    @property
    def inverse(self) -> "RelationLabel":
        return _INVERSE[self]


_INVERSE = {
    RelationLabel.CAUSE: RelationLabel.EFFECT,
    RelationLabel.EFFECT: RelationLabel.CAUSE,
    RelationLabel.AFTER: RelationLabel.BEFORE,
    RelationLabel.BEFORE: RelationLabel.AFTER,
    RelationLabel.IS_COND: RelationLabel.HAS_COND,
    RelationLabel.HAS_COND: RelationLabel.IS_COND,
}


class LexiconError(ValueError):
    pass


@dataclass(frozen=True)
class ConnectiveEntry:
    """A connective surface form with its relation under both attachment shapes.

    ``relation`` is read left-to-right as R(head, tail) when the connective sits
    inside the sentence: in "she left because it rained" the matrix clause is
    the effect of the subordinate clause, so the entry for "because" carries
    Effect. ``sentence_initial_relation`` applies when the connective opens a
    sentence and the head event comes from the preceding sentence.
    """

    surface: str
    relation: RelationLabel
    sentence_initial_relation: RelationLabel

    def __post_init__(self):
        if not self.surface or self.surface != self.surface.strip().lower():
            raise LexiconError(f"bad connective surface: {self.surface!r}")

    @property
    def words(self) -> tuple:
        return tuple(self.surface.split())


@dataclass(frozen=True)
class ConnectiveMatch:
    entry: ConnectiveEntry
    token_span: tuple  # contiguous token indices
    head_token: int  # span token whose governor lies outside the span

    @property
    def start(self) -> int:
        return self.token_span[0]

    def is_sentence_initial(self) -> bool:
        return self.start == 1


def _parse_relation(name: str) -> RelationLabel:
    try:
        return RelationLabel(name)
    except ValueError:
        raise LexiconError(f"unknown relation label: {name!r}") from None


def parse_lexicon(lines: Iterable[str], source: str = "<lexicon>") -> list[ConnectiveEntry]:
    entries: list[ConnectiveEntry] = []
    seen: set[str] = set()
    for line_no, line in enumerate(lines, start=1):
        line = line.rstrip("\n")
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        cols = line.split("\t")
        if len(cols) != 3:
            raise LexiconError(f"{source}:{line_no}: expected 3 tab-separated columns, got {len(cols)}")
        surface = cols[0].strip().lower()
        if surface in seen:
            raise LexiconError(f"{source}:{line_no}: duplicate connective surface {surface!r}")
        seen.add(surface)
        entries.append(ConnectiveEntry(surface, _parse_relation(cols[1].strip()), _parse_relation(cols[2].strip())))
    if not entries:
        raise LexiconError(f"{source}: empty lexicon")
    return entries


def load_lexicon(path) -> list[ConnectiveEntry]:
    with open(path, encoding="utf-8") as f:
        return parse_lexicon(f, source=str(path))


def default_lexicon() -> list[ConnectiveEntry]:
    """The built-in PDTB-derived connective table shipped with the package."""
    text = resources.files("eventmine.data").joinpath("connectives.tsv").read_text(encoding="utf-8")
    return parse_lexicon(text.splitlines(), source="builtin:connectives.tsv")


def dump_lexicon(entries: Iterable[ConnectiveEntry]) -> str:
    lines = ["# surface\trelation\tsentence_initial_relation"]
    for e in entries:
        lines.append(f"{e.surface}\t{e.relation.value}\t{e.sentence_initial_relation.value}")
    return "\n".join(lines) + "\n"


def match_connectives(sentence: Sentence, lexicon: list[ConnectiveEntry]) -> list[ConnectiveMatch]:
    """Find connective occurrences; longest match wins, then leftmost.

    Matching is case-insensitive over token surface forms; multiword entries
    must cover contiguous token runs. Each token joins at most one match.
    """
    forms = [t.form.lower() for t in sentence.tokens]
    candidates: list[tuple] = []
    for entry in lexicon:
        words = entry.words
        n = len(words)
        for start in range(len(forms) - n + 1):
            if tuple(forms[start : start + n]) == words:
                candidates.append((-n, start, entry))
    candidates.sort(key=lambda c: (c[0], c[1], c[2].surface))

    taken: set[int] = set()
    matches: list[ConnectiveMatch] = []
    for neg_len, start, entry in candidates:
        span = tuple(range(start + 1, start + 1 - neg_len))  # token indices are 1-based
        if any(i in taken for i in span):
            continue
        taken.update(span)
        matches.append(ConnectiveMatch(entry, span, _span_head(sentence, span)))
    matches.sort(key=lambda m: m.start)
    return matches


def _span_head(sentence: Sentence, span: tuple) -> int:
    inside = set(span)
    for idx in span:
        if sentence.token(idx).head not in inside:
            return idx
    return span[0]

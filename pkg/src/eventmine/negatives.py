"""Event pool construction and negative-candidate mining for discrimination data."""

from __future__ import annotations

import logging
import random
from dataclasses import dataclass, field
from importlib import resources
from typing import Optional

from .extraction import Event, EventQuadruple

logger = logging.getLogger(__name__)

# UPOS tags whose lemmas count as content words for lexical overlap
CONTENT_UPOS = frozenset({"NOUN", "PROPN", "VERB", "ADJ", "NUM"})

GOLD = "gold"
LEXICON = "lexicon"
POS = "pos"
IN_DOMAIN = "in_domain"
BACKFILL = "backfill"


def load_stop_lemmas() -> frozenset:
    text = resources.files("eventmine.data").joinpath("stop_lemmas.txt").read_text(encoding="utf-8")
    return frozenset(
        line.strip().lower() for line in text.splitlines() if line.strip() and not line.startswith("#")
    )


STOP_LEMMAS = load_stop_lemmas()


def content_lemmas(event: Event) -> set:
    """Lemmas of content-word tokens, minus the pinned stop-lemma list."""
    if event.upos_tags:
        pairs = zip(event.lemmas, event.upos_tags)
        lemmas = {lemma.lower() for lemma, upos in pairs if upos in CONTENT_UPOS}
    else:
        # events rehydrated from records carry no tag info; fall back to all lemmas
        lemmas = {lemma.lower() for lemma in event.lemmas}
    return lemmas - STOP_LEMMAS


@dataclass
class EventPool:
    events: list = field(default_factory=list)
    lemma_index: dict = field(default_factory=dict)
    pos_signature_index: dict = field(default_factory=dict)
    domain_index: dict = field(default_factory=dict)
    _texts: set = field(default_factory=set)

    def __len__(self):
        return len(self.events)

    def add(self, event: Event) -> bool:
        key = event.text.lower()
        if key in self._texts:
            return False
        self._texts.add(key)
        event_id = len(self.events)
        self.events.append(event)
        for lemma in content_lemmas(event):
            self.lemma_index.setdefault(lemma, []).append(event_id)
        sig = event.upos_signature()
        if sig:
            self.pos_signature_index.setdefault(sig, []).append(event_id)
        self.domain_index.setdefault(event.doc_id, []).append(event_id)
        return True


def build_pool(quadruples: list[EventQuadruple]) -> EventPool:
    """Collect every tail event once (deduplicated by lowercase text)."""
    pool = EventPool()
    for q in quadruples:
        pool.add(q.tail)
    return pool


def lexicon_negatives(gold: Event, pool: EventPool, k: int) -> list[Event]:
    """Events sharing content lemmas with the gold, most shared first."""
    if k <= 0:
        return []
    gold_lemmas = content_lemmas(gold)
    shared: dict[int, int] = {}
    for lemma in gold_lemmas:
        for event_id in pool.lemma_index.get(lemma, ()):
            shared[event_id] = shared.get(event_id, 0) + 1
    ranked = sorted(shared.items(), key=lambda item: (-item[1], item[0]))
    out = []
    for event_id, _count in ranked:
        event = pool.events[event_id]
        if event.text.lower() == gold.text.lower():
            continue
        out.append(event)
        if len(out) == k:
            break
    return out


def pos_negatives(gold: Event, pool: EventPool, k: int) -> list[Event]:
    """Events whose UPOS-sequence signature matches the gold's."""
    if k <= 0:
        return []
    sig = gold.upos_signature()
    if not sig:
        return []
    out = []
    for event_id in pool.pos_signature_index.get(sig, ()):
        event = pool.events[event_id]
        if event.text.lower() == gold.text.lower():
            continue
        out.append(event)
        if len(out) == k:
            break
    return out


def indomain_negatives(gold: Event, pool: EventPool, k: int) -> list[Event]:
    """Same-document events, nearest sentences first, skipping the gold's own sentence."""
    if k <= 0:
        return []
    candidates = []
    for order, event_id in enumerate(pool.domain_index.get(gold.doc_id, ())):
        event = pool.events[event_id]
        if event.sentence_index == gold.sentence_index:
            continue
        if event.text.lower() == gold.text.lower():
            continue
        candidates.append((abs(event.sentence_index - gold.sentence_index), order, event))
    candidates.sort(key=lambda item: (item[0], item[1]))
    return [event for _, _, event in candidates[:k]]


@dataclass(frozen=True)
class CandidateSet:
    options: tuple  # exactly 3 event texts
    gold_index: int
    provenance: tuple  # aligned with options; "gold" at gold_index


HEURISTIC_K = 8


def sample_candidates(gold: Event, pool: EventPool, rng_seed: int) -> Optional[CandidateSet]:
    """Shortlist negatives via the three heuristics, sample two, shuffle with gold.

    Returns None when the pool cannot supply two distinct negatives.
    """
    gold_key = gold.text.lower()
    shortlist: list[tuple] = []
    seen = {gold_key}
    for heuristic, events in (
        (LEXICON, lexicon_negatives(gold, pool, HEURISTIC_K)),
        (POS, pos_negatives(gold, pool, HEURISTIC_K)),
        (IN_DOMAIN, indomain_negatives(gold, pool, HEURISTIC_K)),
    ):
        for event in events:
            key = event.text.lower()
            if key in seen:
                continue
            seen.add(key)
            shortlist.append((event.text, heuristic))

    rng = random.Random(rng_seed)
    if len(shortlist) >= 2:
        negatives = rng.sample(shortlist, 2)
    else:
        backfill = [
            (e.text, BACKFILL) for e in pool.events if e.text.lower() not in seen
        ]
        needed = 2 - len(shortlist)
        if len(backfill) < needed:
            logger.info("candidate shortage for gold %r: pool too small", gold.text)
            return None
        negatives = shortlist + rng.sample(backfill, needed)

    tagged = [(gold.text, GOLD)] + negatives
    rng.shuffle(tagged)
    gold_index = next(i for i, (_, tag) in enumerate(tagged) if tag == GOLD)
    return CandidateSet(
        options=tuple(text for text, _ in tagged),
        gold_index=gold_index,
        provenance=tuple(tag for _, tag in tagged),
    )

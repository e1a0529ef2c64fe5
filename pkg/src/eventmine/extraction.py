"""Quadruple mining: tail/head event extraction, context assembly, and filters."""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Optional

from .conllu import Document, Sentence, children, subtree_tokens, word_count
from .connectives import ConnectiveEntry, ConnectiveMatch, RelationLabel, match_connectives

EVENT_EXCLUDED_DEPRELS = frozenset({"punct"})

# filter reasons, checked in this order
HEAD_LEN = "HEAD_LEN"
TAIL_LEN = "TAIL_LEN"
CONTEXT_LEN = "CONTEXT_LEN"


@dataclass(frozen=True)
class Event:
    """A verb-rooted token span within one sentence."""

    doc_id: str
    sentence_index: int
    trigger: int  # token index of the root VERB
    token_indices: tuple
    text: str
    word_count: int
    trigger_lemma: str
    # per-token snapshots so pools can index events without the Document
    lemmas: tuple = ()
    upos_tags: tuple = ()

    def upos_signature(self) -> str:
        return "-".join(self.upos_tags)


@dataclass(frozen=True)
class QuadrupleSource:
    doc_id: str
    connective: str
    head_sentence: int
    tail_sentence: int


@dataclass(frozen=True)
class EventQuadruple:
    context: str
    head: Event
    relation: RelationLabel
    tail: Event
    source: QuadrupleSource


@dataclass
class MiningStats:
    matches: int = 0
    tail_hits: int = 0
    head_hits: int = 0
    accepts: int = 0
    rejects: dict = field(default_factory=dict)

    def reject(self, reason: str) -> None:
        self.rejects[reason] = self.rejects.get(reason, 0) + 1

    def merge(self, other: "MiningStats") -> None:
        self.matches += other.matches
        self.tail_hits += other.tail_hits
        self.head_hits += other.head_hits
        self.accepts += other.accepts
        for reason, n in other.rejects.items():
            self.rejects[reason] = self.rejects.get(reason, 0) + n


@dataclass(frozen=True)
class MiningConfig:
    max_context_sentences: int = 5
    event_length_bounds: tuple = (2, 10)
    context_length_bounds: tuple = (10, 50)
    excluded_deprels: frozenset = EVENT_EXCLUDED_DEPRELS


def _make_event(doc_id: str, sentence: Sentence, trigger: int, indices: list[int]) -> Event:
    toks = [sentence.token(i) for i in indices]
    text = " ".join(t.form for t in toks)
    return Event(
        doc_id=doc_id,
        sentence_index=sentence.sentence_index,
        trigger=trigger,
        token_indices=tuple(indices),
        text=text,
        word_count=word_count(text),
        trigger_lemma=sentence.token(trigger).lemma.lower(),
        lemmas=tuple(t.lemma.lower() for t in toks),
        upos_tags=tuple(t.upos for t in toks),
    )


def _span_subtree(sentence: Sentence, span: tuple, excluded: frozenset) -> set:
    covered: set[int] = set()
    for idx in span:
        covered.update(subtree_tokens(sentence, idx, excluded))
    return covered


def _span_exclusion(sentence: Sentence, span: tuple, trigger: int) -> set:
    """Connective tokens plus their subtrees, sparing the branch holding the trigger.

    When the clause verb hangs under the connective, a blanket subtree exclusion
    would swallow the event itself.
    """
    excl = set(span)
    for idx in span:
        for child in children(sentence, idx):
            sub = subtree_tokens(sentence, child)
            if trigger not in sub:
                excl.update(sub)
    return excl


def extract_tail_event(
    sentence: Sentence,
    match: ConnectiveMatch,
    doc_id: str = "",
    excluded_deprels: frozenset = EVENT_EXCLUDED_DEPRELS,
) -> Optional[Event]:
    """Find the tail event governed by (or governing) the connective.

    Prefers a VERB among the children of the connective's head token; when the
    connective is itself a dependent of its clause verb (the usual UD shape,
    deprel ``mark``), falls back to the governor. Leftmost qualifying VERB wins.
    """
    verb_children = [i for i in children(sentence, match.head_token) if sentence.token(i).upos == "VERB"]
    if verb_children:
        trigger = verb_children[0]
    else:
        governor = sentence.token(match.head_token).head
        if governor == 0 or sentence.token(governor).upos != "VERB":
            return None
        trigger = governor

    span_cover = _span_exclusion(sentence, match.token_span, trigger)
    indices = [
        i for i in subtree_tokens(sentence, trigger, excluded_deprels) if i not in span_cover
    ]
    if not indices or trigger not in indices:
        return None
    return _make_event(doc_id, sentence, trigger, indices)


def extract_head_event(
    document: Document,
    tail: Event,
    match: ConnectiveMatch,
    excluded_deprels: frozenset = EVENT_EXCLUDED_DEPRELS,
) -> Optional[tuple]:
    """Find the head event and relation for a mined tail.

    Intra-sentence connectives ascend the tail trigger's governor chain to the
    first VERB outside the tail span (the matrix verb). Sentence-initial
    connectives take the root verb of the immediately preceding sentence and
    use the entry's sentence-initial relation.
    """
    sentence = document.sentences[tail.sentence_index]
    tail_set = set(tail.token_indices)

    if match.is_sentence_initial():
        if tail.sentence_index == 0:
            return None
        prev = document.sentences[tail.sentence_index - 1]
        root = prev.root_index()
        if prev.token(root).upos != "VERB":
            return None
        indices = subtree_tokens(prev, root, excluded_deprels)
        head = _make_event(tail.doc_id, prev, root, indices)
        relation = match.entry.sentence_initial_relation
    else:
        trigger = None
        cur = sentence.token(tail.trigger).head
        hops = 0
        while cur != 0 and hops < len(sentence):
            if cur not in tail_set and sentence.token(cur).upos == "VERB":
                trigger = cur
                break
            cur = sentence.token(cur).head
            hops += 1
        if trigger is None:
            return None
        tail_cover = set(subtree_tokens(sentence, tail.trigger, frozenset()))
        span_cover = _span_subtree(sentence, match.token_span, frozenset())
        indices = [
            i
            for i in subtree_tokens(sentence, trigger, excluded_deprels)
            if i not in tail_cover and i not in span_cover
        ]
        if not indices or trigger not in indices:
            return None
        head = _make_event(tail.doc_id, sentence, trigger, indices)
        relation = match.entry.relation

    if (head.sentence_index, head.trigger) >= (tail.sentence_index, tail.trigger):
        return None
    return head, relation


def assemble_context(document: Document, head: Event, max_sentences: int = 5) -> str:
    """Concatenate up to ``max_sentences`` sentences preceding the head's sentence."""
    start = max(0, head.sentence_index - max_sentences)
    parts = [document.sentences[i].text() for i in range(start, head.sentence_index)]
    return " ".join(parts)


def apply_filters(q: EventQuadruple, config: MiningConfig = MiningConfig()) -> Optional[str]:
    """Return None on accept, otherwise the first violated filter reason."""
    lo, hi = config.event_length_bounds
    clo, chi = config.context_length_bounds
    if not lo <= q.head.word_count <= hi:
        return HEAD_LEN
    if not lo <= q.tail.word_count <= hi:
        return TAIL_LEN
    if not clo <= word_count(q.context) <= chi:
        return CONTEXT_LEN
    return None


def mine_document(
    document: Document,
    lexicon: list[ConnectiveEntry],
    config: MiningConfig = MiningConfig(),
) -> tuple[list[EventQuadruple], MiningStats]:
    """Run the full pipeline over one document; pure given its arguments."""
    stats = MiningStats()
    accepted: list[EventQuadruple] = []
    for sentence in document.sentences:
        for match in match_connectives(sentence, lexicon):
            stats.matches += 1
            tail = extract_tail_event(sentence, match, document.doc_id, config.excluded_deprels)
            if tail is None:
                continue
            stats.tail_hits += 1
            found = extract_head_event(document, tail, match, config.excluded_deprels)
            if found is None:
                continue
            stats.head_hits += 1
            head, relation = found
            context = assemble_context(document, head, config.max_context_sentences)
            quad = EventQuadruple(
                context=context,
                head=head,
                relation=relation,
                tail=tail,
                source=QuadrupleSource(
                    doc_id=document.doc_id,
                    connective=match.entry.surface,
                    head_sentence=head.sentence_index,
                    tail_sentence=tail.sentence_index,
                ),
            )
            reason = apply_filters(quad, config)
            if reason is None:
                stats.accepts += 1
                accepted.append(quad)
            else:
                stats.reject(reason)
    return accepted, stats

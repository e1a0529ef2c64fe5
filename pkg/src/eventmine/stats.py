"""Dataset analyses: event structure patterns, length histogram, verb frequencies."""

from __future__ import annotations

from typing import Optional

from .conllu import Sentence, children, subtree_tokens
from .extraction import EVENT_EXCLUDED_DEPRELS, Event, _make_event

# Pinned map from dependency relation to pattern label. Labels not listed are
# dropped from the pattern. "prep" absorbs case-marked nominal attachments.
DEPREL_LABELS = {
    "nsubj": "subj",
    "nsubj:pass": "subj",
    "csubj": "subj",
    "obj": "obj",
    "iobj": "obj",
    "obl": "prep",
    "obl:tmod": "prep",
    "nmod": "prep",
    "xcomp": "xcomp",
    "ccomp": "ccomp",
    "aux": "aux",
    "aux:pass": "aux",
}


def event_pattern(event: Event, sentence: Sentence) -> str:
    """Hyphen-joined structure labels from the trigger verb's direct dependents."""
    inside = set(event.token_indices)
    labeled = [(event.trigger, "verb")]
    for child in children(sentence, event.trigger):
        if child not in inside:
            continue
        label = DEPREL_LABELS.get(sentence.token(child).deprel)
        if label:
            labeled.append((child, label))
    labeled.sort()
    return "-".join(label for _, label in labeled)


def sentence_event(sentence: Sentence, doc_id: str = "") -> Optional[Event]:
    """Treat a whole sentence as one event rooted at its verb root, if any."""
    root = sentence.root_index()
    if sentence.token(root).upos != "VERB":
        return None
    indices = subtree_tokens(sentence, root, EVENT_EXCLUDED_DEPRELS)
    return _make_event(doc_id, sentence, root, indices)


def length_histogram(events: list[Event]) -> dict:
    hist: dict[int, int] = {}
    for event in events:
        hist[event.word_count] = hist.get(event.word_count, 0) + 1
    return hist


def verb_frequencies(events: list[Event], top_k: Optional[int] = None) -> list[tuple]:
    counts: dict[str, int] = {}
    for event in events:
        counts[event.trigger_lemma] = counts.get(event.trigger_lemma, 0) + 1
    ranked = sorted(counts.items(), key=lambda item: (-item[1], item[0]))
    return ranked[:top_k] if top_k is not None else ranked


def histogram_table(hist: dict) -> str:
    lines = ["length\tcount"]
    for length in sorted(hist):
        lines.append(f"{length}\t{hist[length]}")
    return "\n".join(lines) + "\n"


def frequency_table(freqs: list[tuple]) -> str:
    lines = ["lemma\tcount"]
    for lemma, count in freqs:
        lines.append(f"{lemma}\t{count}")
    return "\n".join(lines) + "\n"


def pattern_table(patterns: dict) -> str:
    lines = ["pattern\tcount"]
    for pattern, count in sorted(patterns.items(), key=lambda item: (-item[1], item[0])):
        lines.append(f"{pattern}\t{count}")
    return "\n".join(lines) + "\n"

"""Builders for synthetic parsed corpora used across the test suite."""

from __future__ import annotations

import random

from eventmine.conllu import Document, Sentence, Token

ADVERBS = [
    "quickly", "slowly", "quietly", "loudly", "suddenly", "eagerly", "carefully",
    "badly", "gladly", "sadly", "often", "rarely", "early", "late", "again",
]
SUBJECTS = [("She", "she"), ("He", "he"), ("Morgan", "Morgan"), ("Erika", "Erika"), ("They", "they")]
VERBS = [
    ("left", "leave"), ("smiled", "smile"), ("ran", "run"), ("slept", "sleep"),
    ("shouted", "shout"), ("waited", "wait"), ("stumbled", "stumble"), ("laughed", "laugh"),
    ("cried", "cry"), ("paused", "pause"),
]
TAIL_VERBS = [
    ("rained", "rain"), ("snowed", "snow"), ("thundered", "thunder"), ("arrived", "arrive"),
    ("ended", "end"), ("started", "start"), ("failed", "fail"), ("vanished", "vanish"),
]

# intra-sentence connectives paired with the relations the default lexicon assigns
INTRA_CONNECTIVES = ["because", "so", "before", "after", "if", "until", "once"]
INITIAL_CONNECTIVES = ["so", "then", "in that case", "after", "before"]


def tok(index, form, lemma, upos, head, deprel):
    return Token(index=index, form=form, lemma=lemma, upos=upos, head=head, deprel=deprel)


def make_sentence(rows, sentence_index=0):
    """rows: (form, lemma, upos, head, deprel) tuples."""
    tokens = tuple(
        tok(i, form, lemma, upos, head, deprel)
        for i, (form, lemma, upos, head, deprel) in enumerate(rows, start=1)
    )
    return Sentence(tokens, sentence_index)


def filler_sentence(rng, n_adverbs, sentence_index=0):
    """A verb-rooted filler: 'It rained <advs> .' with 2 + n_adverbs text words."""
    rows = [("It", "it", "PRON", 2, "nsubj"), ("rained", "rain", "VERB", 0, "root")]
    for _ in range(n_adverbs):
        adv = rng.choice(ADVERBS)
        rows.append((adv, adv, "ADV", 2, "advmod"))
    rows.append((".", ".", "PUNCT", 2, "punct"))
    return make_sentence(rows, sentence_index)


def connective_sentence(rng, connective, head_adverbs=1, tail_adverbs=1, sentence_index=0):
    """'<Subj> <verb> <advs> <connective> it <tail-verb> <advs> .'

    The connective attaches as a marker of the subordinate verb, the usual
    UD shape, so tail extraction exercises the governor fallback.
    """
    subj, subj_lemma = rng.choice(SUBJECTS)
    verb, verb_lemma = rng.choice(VERBS)
    tail_verb, tail_lemma = rng.choice(TAIL_VERBS)
    conn_words = connective.split()

    rows = [(subj, subj_lemma, "PRON", 2, "nsubj"), (verb, verb_lemma, "VERB", 0, "root")]
    for _ in range(head_adverbs):
        adv = rng.choice(ADVERBS)
        rows.append((adv, adv, "ADV", 2, "advmod"))
    tail_verb_idx = len(rows) + len(conn_words) + 2
    for word in conn_words:
        rows.append((word, word, "SCONJ", tail_verb_idx, "mark"))
    rows.append(("it", "it", "PRON", tail_verb_idx, "nsubj"))
    rows.append((tail_verb, tail_lemma, "VERB", 2, "advcl"))
    for _ in range(tail_adverbs):
        adv = rng.choice(ADVERBS)
        rows.append((adv, adv, "ADV", tail_verb_idx, "advmod"))
    rows.append((".", ".", "PUNCT", 2, "punct"))
    return make_sentence(rows, sentence_index)


def initial_connective_sentence(rng, connective, extra_adverbs=1, sentence_index=0):
    """'<Connective> she <verb> <advs> .' with the connective opening the sentence."""
    verb, verb_lemma = rng.choice(VERBS)
    conn_words = connective.split()
    verb_idx = len(conn_words) + 2
    rows = []
    for word in conn_words:
        rows.append((word.capitalize() if not rows else word, word, "SCONJ", verb_idx, "mark"))
    rows.append(("she", "she", "PRON", verb_idx, "nsubj"))
    rows.append((verb, verb_lemma, "VERB", 0, "root"))
    for _ in range(extra_adverbs):
        adv = rng.choice(ADVERBS)
        rows.append((adv, adv, "ADV", verb_idx, "advmod"))
    rows.append((".", ".", "PUNCT", verb_idx, "punct"))
    return make_sentence(rows, sentence_index)


def random_document(rng, doc_id, n_clauses=2, allow_bad_lengths=True):
    """A document mixing filler context with connective-bearing sentences.

    Length parameters are drawn wide enough to exercise every filter outcome
    when allow_bad_lengths is set.
    """
    sentences = []

    def add(builder):
        sentences.append(builder(len(sentences)))

    for _ in range(rng.randint(1, 4)):
        add(lambda i: filler_sentence(rng, rng.randint(2, 10), i))
    for _ in range(n_clauses):
        if allow_bad_lengths:
            head_adv, tail_adv = rng.randint(0, 11), rng.randint(0, 11)
        else:
            head_adv, tail_adv = rng.randint(1, 6), rng.randint(1, 6)
        if rng.random() < 0.25:
            conn = rng.choice(INITIAL_CONNECTIVES)
            add(lambda i: initial_connective_sentence(rng, conn, max(1, head_adv), i))
        else:
            conn = rng.choice(INTRA_CONNECTIVES)
            add(lambda i: connective_sentence(rng, conn, head_adv, tail_adv, i))
        for _ in range(rng.randint(0, 2)):
            add(lambda i: filler_sentence(rng, rng.randint(2, 10), i))
    return Document(doc_id, tuple(sentences))


def random_corpus(seed, n_documents, n_clauses=2, allow_bad_lengths=True):
    rng = random.Random(seed)
    return [
        random_document(rng, f"doc{i:05d}", n_clauses, allow_bad_lengths)
        for i in range(n_documents)
    ]

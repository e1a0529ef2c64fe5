"""CoNLL-U ingestion: documents, sentences, tokens, and dependency-tree utilities."""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Iterable, Iterator

logger = logging.getLogger(__name__)

# Punctuation forms that attach to the preceding word when rendering sentence text.
_CLOSING_PUNCT = {".", ",", "!", "?", ";", ":", ")", "]", "}", "...", "''", '"', "'", "%"}
_OPENING_PUNCT = {"(", "[", "{", "``", "`"}


class ConlluError(ValueError):
    """Malformed CoNLL-U input; carries file/line location."""

    def __init__(self, message, source="<stream>", line_no=None):
        self.source = source
        self.line_no = line_no
        loc = f"{source}:{line_no}" if line_no is not None else source
        super().__init__(f"{loc}: {message}")


@dataclass(frozen=True)
class Token:
    index: int  # 1-based position within the sentence
    form: str
    lemma: str
    upos: str
    head: int  # 0 = root
    deprel: str
    # columns preserved opaquely for round-trip: XPOS, FEATS, DEPS, MISC
    extra: tuple = ("_", "_", "_", "_")


@dataclass(frozen=True)
class Sentence:
    tokens: tuple
    sentence_index: int

    def __len__(self):
        return len(self.tokens)

    def token(self, index: int) -> Token:
        return self.tokens[index - 1]

    def root_index(self) -> int:
        for tok in self.tokens:
            if tok.head == 0:
                return tok.index
        raise ValueError("sentence has no root")

    def text(self) -> str:
        """Render surface text, attaching punctuation to the neighbouring word."""
        parts: list[str] = []
        for tok in self.tokens:
            if parts and tok.upos == "PUNCT" and tok.form not in _OPENING_PUNCT:
                parts[-1] += tok.form
            else:
                parts.append(tok.form)
        return " ".join(parts)


@dataclass(frozen=True)
class Document:
    doc_id: str
    sentences: tuple


def word_count(text: str) -> int:
    """Uniform word counting: whitespace-separated tokens after trimming."""
    return len(text.split())


def _validate_sentence(tokens: list[Token], source: str, line_no: int) -> None:
    n = len(tokens)
    roots = [t for t in tokens if t.head == 0]
    for t in tokens:
        if not (0 <= t.head <= n):
            raise ConlluError(f"head out of range: token {t.index} has head {t.head}", source, line_no)
        if t.head == t.index:
            raise ConlluError(f"self-loop at token {t.index}", source, line_no)
        if not t.upos:
            raise ConlluError(f"empty UPOS at token {t.index}", source, line_no)
    if len(roots) != 1:
        raise ConlluError(f"expected exactly one root, found {len(roots)}", source, line_no)
    # cycle check: every token must reach the root by following heads
    for t in tokens:
        seen = set()
        cur = t.index
        while cur != 0:
            if cur in seen:
                raise ConlluError(f"cyclic dependency graph through token {t.index}", source, line_no)
            seen.add(cur)
            cur = tokens[cur - 1].head


def parse_conllu(raw: Iterable[str] | str, source: str = "<stream>", strict: bool = False) -> list[Document]:
    """Parse a CoNLL-U stream into Documents.

    Document boundaries come from ``# newdoc id = ...`` comments; without them
    the whole stream is one document with a synthesized id. Multiword-token
    ranges and empty nodes are skipped. Malformed sentences abort under strict
    mode and are dropped with a log line otherwise.
    """
    if isinstance(raw, str):
        raw = raw.splitlines()

    documents: list[Document] = []
    cur_doc_id: str | None = None
    cur_sentences: list[Sentence] = []
    cur_tokens: list[Token] = []
    sent_start_line = 1

    def flush_sentence(line_no: int) -> None:
        nonlocal cur_tokens
        if not cur_tokens:
            return
        tokens, cur_tokens = cur_tokens, []
        # token ids must be consecutive 1..n after skipping ranges/empty nodes
        try:
            for pos, t in enumerate(tokens, start=1):
                if t.index != pos:
                    raise ConlluError(
                        f"non-consecutive token ids ({t.index} at position {pos})", source, sent_start_line
                    )
            _validate_sentence(tokens, source, sent_start_line)
        except ConlluError:
            if strict:
                raise
            logger.warning("dropping malformed sentence at %s:%d", source, sent_start_line)
            return
        cur_sentences.append(Sentence(tuple(tokens), len(cur_sentences)))

    def flush_document() -> None:
        nonlocal cur_sentences
        if cur_doc_id is None and not cur_sentences:
            return
        doc_id = cur_doc_id if cur_doc_id is not None else f"{source}#doc0"
        documents.append(Document(doc_id, tuple(cur_sentences)))
        cur_sentences = []

    line_no = 0
    for line_no, line in enumerate(raw, start=1):
        line = line.rstrip("\n")
        if not line.strip():
            flush_sentence(line_no)
            sent_start_line = line_no + 1
            continue
        if line.startswith("#"):
            if line.startswith("# newdoc id"):
                flush_sentence(line_no)
                flush_document()
                cur_doc_id = line.split("=", 1)[1].strip() if "=" in line else f"{source}#doc{len(documents)}"
            continue
        cols = line.split("\t")
        if len(cols) != 10:
            err = ConlluError(f"expected 10 columns, got {len(cols)}", source, line_no)
            if strict:
                raise err
            logger.warning("%s", err)
            continue
        tid = cols[0]
        if "-" in tid or "." in tid:
            continue  # multiword range / empty node
        try:
            index = int(tid)
            head = int(cols[6])
        except ValueError as exc:
            err = ConlluError(f"non-integer ID or HEAD: {exc}", source, line_no)
            if strict:
                raise err
            logger.warning("%s", err)
            continue
        if not cur_tokens:
            sent_start_line = line_no
        cur_tokens.append(
            Token(
                index=index,
                form=cols[1],
                lemma=cols[2],
                upos=cols[3],
                head=head,
                deprel=cols[7],
                extra=(cols[4], cols[5], cols[8], cols[9]),
            )
        )
    flush_sentence(line_no + 1)
    flush_document()
    return documents


def to_conllu(documents: Iterable[Document]) -> str:
    """Serialize Documents back to CoNLL-U word lines (comments except newdoc dropped)."""
    lines: list[str] = []
    for doc in documents:
        lines.append(f"# newdoc id = {doc.doc_id}")
        for sent in doc.sentences:
            for t in sent.tokens:
                xpos, feats, deps, misc = t.extra
                lines.append(
                    "\t".join(
                        [str(t.index), t.form, t.lemma, t.upos, xpos, feats, str(t.head), t.deprel, deps, misc]
                    )
                )
            lines.append("")
    return "\n".join(lines) + "\n"


def children(sentence: Sentence, parent: int) -> list[int]:
    """Indices of tokens governed by ``parent``, in surface order."""
    return [t.index for t in sentence.tokens if t.head == parent]


def subtree_tokens(sentence: Sentence, root: int, excluded_deprels: frozenset | set = frozenset()) -> list[int]:
    """Tokens reachable from ``root`` via child edges, in surface order.

    A token whose deprel is excluded is dropped together with its whole subtree.
    The root itself is always included.
    """
    result = {root}
    stack = [root]
    while stack:
        parent = stack.pop()
        for child in children(sentence, parent):
            if sentence.token(child).deprel in excluded_deprels:
                continue
            result.add(child)
            stack.append(child)
    return sorted(result)


def iter_sentences(documents: Iterable[Document]) -> Iterator[tuple[Document, Sentence]]:
    for doc in documents:
        for sent in doc.sentences:
            yield doc, sent

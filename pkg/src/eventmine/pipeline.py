"""Corpus-level orchestration: parse many files, mine documents in parallel."""

from __future__ import annotations

import logging
from concurrent.futures import ProcessPoolExecutor
from typing import Iterable

from .conllu import Document, parse_conllu
from .connectives import ConnectiveEntry
from .extraction import EventQuadruple, MiningConfig, MiningStats, mine_document

logger = logging.getLogger(__name__)


def parse_corpus(paths: Iterable, strict: bool = False) -> list[Document]:
    documents: list[Document] = []
    for path in paths:
        with open(path, encoding="utf-8") as f:
            documents.extend(parse_conllu(f, source=str(path), strict=strict))
    return documents


def _mine_one(args):
    document, lexicon, config = args
    return document.doc_id, mine_document(document, lexicon, config)


def mine_corpus(
    documents: list[Document],
    lexicon: list[ConnectiveEntry],
    config: MiningConfig = MiningConfig(),
    workers: int = 1,
) -> tuple[list[EventQuadruple], MiningStats]:
    """Mine all documents; output is merged in ascending doc_id order so the
    result does not depend on worker count or scheduling."""
    if workers > 1 and len(documents) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_mine_one, ((d, lexicon, config) for d in documents), chunksize=8))
    else:
        results = [_mine_one((d, lexicon, config)) for d in documents]

    results.sort(key=lambda item: item[0])
    quadruples: list[EventQuadruple] = []
    stats = MiningStats()
    for _doc_id, (quads, doc_stats) in results:
        quadruples.extend(quads)
        stats.merge(doc_stats)
    return quadruples, stats

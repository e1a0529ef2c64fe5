"""Line-delimited record formats with stable field order for byte-exact diffing."""

from __future__ import annotations

import json
from typing import Iterable, Iterator

from .connectives import RelationLabel
from .extraction import Event, EventQuadruple, QuadrupleSource
from .instructions import InstructionInstance, wrap_alpaca


class RecordError(ValueError):
    pass


def quadruple_to_record(q: EventQuadruple) -> dict:
    return {
        "doc_id": q.source.doc_id,
        "context": q.context,
        "head_text": q.head.text,
        "relation": q.relation.value,
        "tail_text": q.tail.text,
        "head_trigger_lemma": q.head.trigger_lemma,
        "tail_trigger_lemma": q.tail.trigger_lemma,
        "connective": q.source.connective,
        "sentence_indices": [q.source.head_sentence, q.source.tail_sentence],
    }


def _event_from_record(rec: dict, which: str) -> Event:
    text = rec[f"{which}_text"]
    words = text.split()
    sentence_index = rec["sentence_indices"][0 if which == "head" else 1]
    # rehydrated events approximate lemmas by lowercased surface words and carry
    # no tag info; pools built from files lose the PoS-signature heuristic
    return Event(
        doc_id=rec["doc_id"],
        sentence_index=sentence_index,
        trigger=0,
        token_indices=(),
        text=text,
        word_count=len(words),
        trigger_lemma=rec[f"{which}_trigger_lemma"],
        lemmas=tuple(w.lower() for w in words),
        upos_tags=(),
    )


def quadruple_from_record(rec: dict) -> EventQuadruple:
    try:
        return EventQuadruple(
            context=rec["context"],
            head=_event_from_record(rec, "head"),
            relation=RelationLabel(rec["relation"]),
            tail=_event_from_record(rec, "tail"),
            source=QuadrupleSource(
                doc_id=rec["doc_id"],
                connective=rec["connective"],
                head_sentence=rec["sentence_indices"][0],
                tail_sentence=rec["sentence_indices"][1],
            ),
        )
    except (KeyError, ValueError, IndexError, TypeError) as exc:
        raise RecordError(f"malformed quadruple record: {exc}") from None


def instance_to_record(instance: InstructionInstance) -> dict:
    meta = instance.meta
    return {
        "instruction": instance.instruction,
        "input": instance.input,
        "output": instance.output,
        "meta": {
            "relation": meta["relation"],
            "formulation": meta["formulation"],
            "has_context": meta["has_context"],
            "doc_id": meta["doc_id"],
            "gold_index": meta["gold_index"],
            "template_id": meta["template_id"],
            "seed": meta["seed"],
        },
    }


def instance_to_wrapped_record(instance: InstructionInstance) -> dict:
    return {"text": wrap_alpaca(instance)}


def dumps_record(record: dict) -> str:
    return json.dumps(record, ensure_ascii=False)


def write_jsonl(path, records: Iterable[dict], header_comment: str = "") -> None:
    with open(path, "w", encoding="utf-8") as f:
        if header_comment:
            f.write(f"# {header_comment}\n")
        for record in records:
            f.write(dumps_record(record))
            f.write("\n")


def read_jsonl(path) -> Iterator[dict]:
    """Yield JSON objects, skipping '#' comment lines and blanks."""
    with open(path, encoding="utf-8") as f:
        for line_no, line in enumerate(f, start=1):
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            try:
                yield json.loads(line)
            except json.JSONDecodeError as exc:
                raise RecordError(f"{path}:{line_no}: invalid JSON: {exc}") from None

"""Instruction-record construction: templates, choice formatting, and dataset assembly."""

from __future__ import annotations

import enum
import json
import logging
import random
import re
from dataclasses import dataclass
from importlib import resources
from typing import Optional

from .connectives import RelationLabel
from .extraction import EventQuadruple
from .negatives import CandidateSet, EventPool, sample_candidates
from .seeds import derive_seed

logger = logging.getLogger(__name__)

EVENT_PLACEHOLDER = "[event]"
CONTEXT_PLACEHOLDER = "[context]"

CHOICE_LETTERS = "ABC"

ALPACA_PREAMBLE_WITH_INPUT = (
    "Below is an instruction that describes a task, paired with an input that provides "
    "further context. Write a response that appropriately completes the request."
)
ALPACA_PREAMBLE_NO_INPUT = (
    "Below is an instruction that describes a task. "
    "Write a response that appropriately completes the request."
)


class Formulation(str, enum.Enum):
    GENERATION = "generation"
    DISCRIMINATION = "discrimination"


class TemplateError(ValueError):
    pass


@dataclass(frozen=True)
class InstructionTemplate:
    template_id: str
    relation: RelationLabel
    formulation: Formulation
    has_context: bool
    body: str

    def validate(self) -> None:
        if self.body.count(EVENT_PLACEHOLDER) != 1:
            raise TemplateError(f"{self.template_id}: body must contain {EVENT_PLACEHOLDER} exactly once")
        expected = 1 if self.has_context else 0
        if self.body.count(CONTEXT_PLACEHOLDER) != expected:
            raise TemplateError(
                f"{self.template_id}: body must contain {CONTEXT_PLACEHOLDER} "
                f"{'exactly once' if self.has_context else 'never'}"
            )


@dataclass(frozen=True)
class TemplateBank:
    by_kind: dict  # (RelationLabel, Formulation, has_context) -> tuple of templates

    def templates(self, relation: RelationLabel, formulation: Formulation, has_context: bool):
        return self.by_kind[(relation, formulation, has_context)]

    def __len__(self):
        return sum(len(v) for v in self.by_kind.values())


def _bank_from_records(records: list[dict], source: str) -> TemplateBank:
    by_kind: dict = {}
    for rec in records:
        try:
            template = InstructionTemplate(
                template_id=rec["id"],
                relation=RelationLabel(rec["relation"]),
                formulation=Formulation(rec["formulation"]),
                has_context=bool(rec["has_context"]),
                body=rec["body"],
            )
        except (KeyError, ValueError) as exc:
            raise TemplateError(f"{source}: bad template record {rec.get('id', '?')!r}: {exc}") from None
        template.validate()
        key = (template.relation, template.formulation, template.has_context)
        by_kind.setdefault(key, []).append(template)
    for relation in RelationLabel:
        for formulation in Formulation:
            for has_context in (False, True):
                if not by_kind.get((relation, formulation, has_context)):
                    raise TemplateError(
                        f"{source}: missing templates for kind "
                        f"({relation.value}, {formulation.value}, context={has_context})"
                    )
    return TemplateBank({k: tuple(v) for k, v in by_kind.items()})


def load_templates(path=None) -> TemplateBank:
    """Load a template bank from a JSON file, or the built-in bank when path is None."""
    if path is None:
        text = resources.files("eventmine.data").joinpath("templates.json").read_text(encoding="utf-8")
        source = "builtin:templates.json"
    else:
        with open(path, encoding="utf-8") as f:
            text = f.read()
        source = str(path)
    return _bank_from_records(json.loads(text), source)


def dump_templates(bank: TemplateBank) -> str:
    records = []
    for templates in bank.by_kind.values():
        for t in templates:
            records.append(
                {
                    "id": t.template_id,
                    "relation": t.relation.value,
                    "formulation": t.formulation.value,
                    "has_context": t.has_context,
                    "body": t.body,
                }
            )
    records.sort(key=lambda r: r["id"])
    return json.dumps(records, indent=2, ensure_ascii=False) + "\n"


@dataclass(frozen=True)
class InstructionInstance:
    instruction: str
    input: str
    output: str
    meta: dict


def flatten(text: str) -> str:
    """Collapse internal newlines/whitespace runs to single spaces."""
    return re.sub(r"\s+", " ", text).strip()


def assign_formulation(rng_seed: int) -> Formulation:
    """Fair coin over the derived seed stream."""
    return Formulation.GENERATION if random.Random(rng_seed).random() < 0.5 else Formulation.DISCRIMINATION


def format_choices(candidates: CandidateSet) -> str:
    lines = [f"{CHOICE_LETTERS[i]}. {flatten(text)}" for i, text in enumerate(candidates.options)]
    return "\n".join(lines)


def encapsulate(
    q: EventQuadruple,
    template: InstructionTemplate,
    candidates: Optional[CandidateSet] = None,
    seed: int = 0,
) -> InstructionInstance:
    """Substitute the quadruple into a template and build the final record."""
    has_context = bool(q.context.strip())
    formulation = Formulation.DISCRIMINATION if candidates is not None else Formulation.GENERATION
    if template.relation != q.relation:
        raise TemplateError(f"template {template.template_id} is for {template.relation.value}, not {q.relation.value}")
    if template.formulation != formulation:
        raise TemplateError(f"template {template.template_id} formulation mismatch")
    if template.has_context != has_context:
        raise TemplateError(f"template {template.template_id} context-presence mismatch")

    instruction = template.body.replace(EVENT_PLACEHOLDER, flatten(q.head.text))
    if has_context:
        instruction = instruction.replace(CONTEXT_PLACEHOLDER, flatten(q.context))

    if candidates is not None:
        input_text = format_choices(candidates)
        gold_letter = CHOICE_LETTERS[candidates.gold_index]
        output = f"{gold_letter}. {flatten(candidates.options[candidates.gold_index])}"
        gold_index = candidates.gold_index
    else:
        input_text = ""
        output = flatten(q.tail.text)
        gold_index = None

    for name, value in (("instruction", instruction), ("input", input_text), ("output", output)):
        if EVENT_PLACEHOLDER in value or CONTEXT_PLACEHOLDER in value:
            raise TemplateError(f"placeholder residue in {name} for template {template.template_id}")

    return InstructionInstance(
        instruction=instruction,
        input=input_text,
        output=output,
        meta={
            "relation": q.relation.value,
            "formulation": formulation.value,
            "has_context": has_context,
            "doc_id": q.source.doc_id,
            "gold_index": gold_index,
            "template_id": template.template_id,
            "seed": seed,
        },
    )


def wrap_alpaca(instance: InstructionInstance) -> str:
    """Render the final training prompt in the standard two-variant layout."""
    if instance.input:
        return (
            f"{ALPACA_PREAMBLE_WITH_INPUT}\n\n"
            f"### Instruction:\n{instance.instruction}\n\n"
            f"### Input:\n{instance.input}\n\n"
            f"### Response:\n{instance.output}"
        )
    return (
        f"{ALPACA_PREAMBLE_NO_INPUT}\n\n"
        f"### Instruction:\n{instance.instruction}\n\n"
        f"### Response:\n{instance.output}"
    )


def build_dataset(
    quadruples: list[EventQuadruple],
    pool: EventPool,
    bank: TemplateBank,
    global_seed: int,
) -> tuple[list[InstructionInstance], int]:
    """Turn mined quadruples into instruction records; returns (instances, dropped).

    Deterministic given its arguments: each quadruple draws from seeds derived
    from (global_seed, doc_id, per-document ordinal), so worker scheduling and
    input chunking cannot change the result.
    """
    ordinals: dict[str, int] = {}
    keyed = []
    for q in quadruples:
        ordinal = ordinals.get(q.source.doc_id, 0)
        ordinals[q.source.doc_id] = ordinal + 1
        keyed.append((q.source.doc_id, ordinal, q))
    keyed.sort(key=lambda item: (item[0], item[1]))

    instances: list[InstructionInstance] = []
    dropped = 0
    for doc_id, ordinal, q in keyed:
        seed = derive_seed(global_seed, doc_id, ordinal)
        formulation = assign_formulation(derive_seed(seed, "formulation"))
        has_context = bool(q.context.strip())
        templates = bank.templates(q.relation, formulation, has_context)
        template = templates[random.Random(derive_seed(seed, "template")).randrange(len(templates))]
        candidates = None
        if formulation is Formulation.DISCRIMINATION:
            candidates = sample_candidates(q.tail, pool, derive_seed(seed, "candidates"))
            if candidates is None:
                dropped += 1
                logger.info("dropping quadruple %s#%d: not enough negative candidates", doc_id, ordinal)
                continue
        instances.append(encapsulate(q, template, candidates, seed=seed))
    return instances, dropped

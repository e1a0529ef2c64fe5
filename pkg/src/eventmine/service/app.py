"""FastAPI service exposing mining, dataset building, and evaluation."""

from __future__ import annotations

from fastapi import FastAPI, HTTPException

from .. import records as rec
from ..conllu import ConlluError, parse_conllu
from ..connectives import default_lexicon
from ..evalharness import (
    ClosePrediction,
    OpenPrediction,
    accuracy,
    decode_close,
    evaluate_open,
    rouge_l,
)
from ..extraction import MiningConfig
from ..instructions import build_dataset, load_templates, wrap_alpaca
from ..negatives import build_pool
from ..pipeline import mine_corpus
from . import schemas

app = FastAPI(title="eventmine", version="0.1.0")

_LEXICON = default_lexicon()
_BANK = load_templates()


@app.get("/health")
def health():
    return {"status": "ok"}


@app.post("/mine", response_model=schemas.MineResponse)
def mine(request: schemas.MineRequest):
    opts = request.options
    config = MiningConfig(
        max_context_sentences=opts.max_context_sentences,
        event_length_bounds=tuple(opts.event_length_bounds),
        context_length_bounds=tuple(opts.context_length_bounds),
    )
    try:
        documents = parse_conllu(request.conllu, source="<request>", strict=opts.strict)
    except ConlluError as exc:
        raise HTTPException(status_code=422, detail=str(exc)) from None
    quadruples, stats = mine_corpus(documents, _LEXICON, config)
    return schemas.MineResponse(
        quadruples=[schemas.QuadrupleRecord(**rec.quadruple_to_record(q)) for q in quadruples],
        stats=schemas.MiningStatsModel(
            matches=stats.matches,
            tail_hits=stats.tail_hits,
            head_hits=stats.head_hits,
            accepts=stats.accepts,
            rejects=stats.rejects,
        ),
    )


@app.post("/dataset", response_model=schemas.DatasetResponse)
def dataset(request: schemas.DatasetRequest):
    try:
        quadruples = [rec.quadruple_from_record(q.model_dump()) for q in request.quadruples]
    except rec.RecordError as exc:
        raise HTTPException(status_code=422, detail=str(exc)) from None
    pool = build_pool(quadruples)
    instances, dropped = build_dataset(quadruples, pool, _BANK, request.seed)
    if request.wrapped:
        return schemas.DatasetResponse(wrapped_texts=[wrap_alpaca(i) for i in instances], dropped=dropped)
    return schemas.DatasetResponse(
        instances=[schemas.InstanceRecord(**rec.instance_to_record(i)) for i in instances],
        dropped=dropped,
    )


@app.post("/evaluate", response_model=schemas.EvaluateResponse)
def evaluate(request: schemas.EvaluateRequest):
    reports = []
    try:
        if request.close:
            close = [
                ClosePrediction(p.raw_output, tuple(p.candidates), p.gold_index) for p in request.close
            ]
            reports.append(accuracy(close).to_dict())
        if request.open:
            open_ = [OpenPrediction(p.raw_output, p.reference) for p in request.open]
            reports.append(evaluate_open(open_).to_dict())
    except ValueError as exc:
        raise HTTPException(status_code=422, detail=str(exc)) from None
    return schemas.EvaluateResponse(reports=[schemas.ReportModel(**r) for r in reports])


@app.post("/decode", response_model=schemas.DecodeResponse)
def decode(request: schemas.DecodeRequest):
    try:
        prediction = ClosePrediction(request.raw_output, tuple(request.candidates), 0)
    except ValueError as exc:
        raise HTTPException(status_code=422, detail=str(exc)) from None
    index, path = decode_close(prediction)
    return schemas.DecodeResponse(index=index, path=path)


@app.post("/rouge", response_model=schemas.RougeResponse)
def rouge(request: schemas.RougeRequest):
    try:
        scores = rouge_l(request.candidate, request.reference)
    except ValueError as exc:
        raise HTTPException(status_code=422, detail=str(exc)) from None
    return schemas.RougeResponse(**scores)


@app.get("/lexicon", response_model=list[schemas.LexiconEntryModel])
def lexicon():
    return [
        schemas.LexiconEntryModel(
            surface=e.surface,
            relation=e.relation.value,
            sentence_initial_relation=e.sentence_initial_relation.value,
        )
        for e in _LEXICON
    ]


@app.get("/templates", response_model=list[schemas.TemplateModel])
def templates():
    out = []
    for bank_templates in _BANK.by_kind.values():
        for t in bank_templates:
            out.append(
                schemas.TemplateModel(
                    id=t.template_id,
                    relation=t.relation.value,
                    formulation=t.formulation.value,
                    has_context=t.has_context,
                    body=t.body,
                )
            )
    out.sort(key=lambda t: t.id)
    return out

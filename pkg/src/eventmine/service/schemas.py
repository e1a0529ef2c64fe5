"""Pydantic request/response models for the HTTP service."""

from __future__ import annotations

from typing import List, Optional

from pydantic import BaseModel, Field


class MiningOptions(BaseModel):
    max_context_sentences: int = 5
    event_length_bounds: List[int] = Field(default=[2, 10], min_length=2, max_length=2)
    context_length_bounds: List[int] = Field(default=[10, 50], min_length=2, max_length=2)
    strict: bool = False


class MineRequest(BaseModel):
    conllu: str
    options: MiningOptions = MiningOptions()


class QuadrupleRecord(BaseModel):
    doc_id: str
    context: str
    head_text: str
    relation: str
    tail_text: str
    head_trigger_lemma: str
    tail_trigger_lemma: str
    connective: str
    sentence_indices: List[int]


class MiningStatsModel(BaseModel):
    matches: int
    tail_hits: int
    head_hits: int
    accepts: int
    rejects: dict


class MineResponse(BaseModel):
    quadruples: List[QuadrupleRecord]
    stats: MiningStatsModel


class DatasetRequest(BaseModel):
    quadruples: List[QuadrupleRecord]
    seed: int = 0
    wrapped: bool = False


class InstanceMeta(BaseModel):
    relation: str
    formulation: str
    has_context: bool
    doc_id: str
    gold_index: Optional[int]
    template_id: str
    seed: int


class InstanceRecord(BaseModel):
    instruction: str
    input: str
    output: str
    meta: InstanceMeta


class DatasetResponse(BaseModel):
    instances: List[InstanceRecord] = []
    wrapped_texts: List[str] = []
    dropped: int = 0


class ClosePredictionRecord(BaseModel):
    raw_output: str
    candidates: List[str]
    gold_index: int


class OpenPredictionRecord(BaseModel):
    raw_output: str
    reference: str


class EvaluateRequest(BaseModel):
    close: List[ClosePredictionRecord] = []
    open: List[OpenPredictionRecord] = []


class ReportModel(BaseModel):
    task: str
    metric: str
    value: float
    item_count: int
    decode_paths: dict
    items: List[dict]
    bert_score: Optional[float] = None


class EvaluateResponse(BaseModel):
    reports: List[ReportModel]


class DecodeRequest(BaseModel):
    raw_output: str
    candidates: List[str]


class DecodeResponse(BaseModel):
    index: int
    path: str


class RougeRequest(BaseModel):
    candidate: str
    reference: str


class RougeResponse(BaseModel):
    precision: float
    recall: float
    f1: float


class LexiconEntryModel(BaseModel):
    surface: str
    relation: str
    sentence_initial_relation: str


class TemplateModel(BaseModel):
    id: str
    relation: str
    formulation: str
    has_context: bool
    body: str

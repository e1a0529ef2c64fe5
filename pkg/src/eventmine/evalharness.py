"""Automatic evaluation: answer decoding for Close tasks, accuracy, and ROUGE-L."""

from __future__ import annotations

import re
import string
from dataclasses import dataclass, field

ANSWER_PATTERN = re.compile(r"the(?: correct)? (?:option|answer) is[\s:]+([A-H])", re.IGNORECASE)

LETTER = "LETTER"
REGEX = "REGEX"
OVERLAP = "OVERLAP"

_PUNCT = string.punctuation


def tokenize(text: str) -> list[str]:
    """Shared normalization for overlap and ROUGE: lowercase, strip edge punctuation."""
    out = []
    for word in text.lower().split():
        word = word.strip(_PUNCT)
        if word:
            out.append(word)
    return out


@dataclass(frozen=True)
class ClosePrediction:
    raw_output: str
    candidates: tuple
    gold_index: int

    def __post_init__(self):
        if not self.candidates:
            raise ValueError("candidates must be non-empty")
        if not 0 <= self.gold_index < len(self.candidates):
            raise ValueError("gold_index outside candidates")


@dataclass(frozen=True)
class OpenPrediction:
    raw_output: str
    reference: str

    def __post_init__(self):
        if not self.reference.strip():
            raise ValueError("reference must be non-empty")


@dataclass
class EvalReport:
    task: str
    metric: str
    value: float
    items: list = field(default_factory=list)

    def path_histogram(self) -> dict:
        hist: dict[str, int] = {}
        for item in self.items:
            path = item.get("path")
            if path:
                hist[path] = hist.get(path, 0) + 1
        return hist

    def to_dict(self) -> dict:
        return {
            "task": self.task,
            "metric": self.metric,
            "value": self.value,
            "item_count": len(self.items),
            "decode_paths": self.path_histogram(),
            "items": self.items,
            "bert_score": None,  # reserved for externally computed scores
        }


def word_overlap(a: str, b: str) -> int:
    """Size of the intersection of the two texts' normalized word sets."""
    return len(set(tokenize(a)) & set(tokenize(b)))


def decode_close(p: ClosePrediction) -> tuple[int, str]:
    """Map free-form model output to an option index; returns (index, decode path).

    Stages, first hit wins: a delimited leading option letter; the answer-phrase
    pattern; word-overlap argmax (ties to the lowest index). Total over any
    output, including empty strings and out-of-range letters.
    """
    text = p.raw_output.strip()
    if text:
        first = text[0].upper()
        if "A" <= first <= "H" and (ord(first) - ord("A")) < len(p.candidates):
            if len(text) == 1 or not text[1].isalnum():
                return ord(first) - ord("A"), LETTER
    m = ANSWER_PATTERN.search(p.raw_output)
    if m:
        index = ord(m.group(1).upper()) - ord("A")
        if index < len(p.candidates):
            return index, REGEX
        # out-of-range capture: fall through to overlap
    overlaps = [word_overlap(c, p.raw_output) for c in p.candidates]
    return max(range(len(overlaps)), key=lambda i: (overlaps[i], -i)), OVERLAP


def accuracy(predictions: list[ClosePrediction], task: str = "close") -> EvalReport:
    if not predictions:
        raise ValueError("no predictions to score")
    items = []
    correct = 0
    for p in predictions:
        index, path = decode_close(p)
        hit = index == p.gold_index
        correct += hit
        items.append({"decoded": index, "gold": p.gold_index, "correct": hit, "path": path})
    return EvalReport(task=task, metric="accuracy", value=correct / len(predictions), items=items)


def lcs_length(a: list[str], b: list[str]) -> int:
    """Longest common subsequence length via a rolling-row dynamic program."""
    if not a or not b:
        return 0
    if len(b) > len(a):
        a, b = b, a
    prev = [0] * (len(b) + 1)
    for x in a:
        cur = [0]
        for j, y in enumerate(b, start=1):
            if x == y:
                cur.append(prev[j - 1] + 1)
            else:
                cur.append(max(prev[j], cur[j - 1]))
        prev = cur
    return prev[-1]


def rouge_l(candidate: str, reference: str) -> dict:
    """LCS-based overlap between candidate and reference token sequences."""
    cand = tokenize(candidate)
    ref = tokenize(reference)
    if not ref:
        raise ValueError("reference is empty after tokenization")
    if not cand:
        return {"precision": 0.0, "recall": 0.0, "f1": 0.0}
    lcs = lcs_length(cand, ref)
    precision = lcs / len(cand)
    recall = lcs / len(ref)
    f1 = 2 * precision * recall / (precision + recall) if precision + recall > 0 else 0.0
    return {"precision": precision, "recall": recall, "f1": f1}


def evaluate_open(predictions: list[OpenPrediction], task: str = "open") -> EvalReport:
    if not predictions:
        raise ValueError("no predictions to score")
    items = []
    total = 0.0
    for p in predictions:
        scores = rouge_l(p.raw_output, p.reference)
        total += scores["f1"]
        items.append(scores)
    return EvalReport(task=task, metric="rouge_l_f1", value=total / len(predictions), items=items)

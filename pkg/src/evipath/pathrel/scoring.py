"""Per-path relation scoring and max-aggregation over paths.

For one path, mention vectors are means of context vectors over their
tokens, entity vectors are means of mention vectors, and the pair is
scored by a two-layer perceptron on ``[e_h; e_t; |e_h - e_t|; e_h * e_t]``
followed by a sigmoid. A pair's score for each relation is its maximum over
paths.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path as FsPath
from typing import Iterable, Sequence

import numpy as np
from scipy.special import expit

from ..corpus import Document, entity_pairs
from ..pathfinder import PathSet, RuleConfig, extract_paths
from .segments import Segment, build_segment
from .vectors import Encoder

ACTIVATIONS = {
    "relu": lambda x: np.maximum(x, 0.0),
    "tanh": np.tanh,
    "sigmoid": expit,
    "identity": lambda x: x,
}


def mention_rep(context: np.ndarray, span: tuple[int, int]) -> np.ndarray:
    """Mean of ``context[s..t]``; ``span`` is inclusive on both ends."""
    s, t = span
    if not 0 <= s <= t < len(context):
        raise ValueError(f"span {span} outside context of length {len(context)}")
    return np.mean(np.asarray(context[s:t + 1], dtype=float), axis=0)


def entity_rep(mention_reps: Sequence[np.ndarray]) -> np.ndarray:
    if len(mention_reps) == 0:
        raise ValueError("entity has no mention representations")
    return np.mean(np.asarray(mention_reps, dtype=float), axis=0)


def pair_features(e_i: np.ndarray, e_j: np.ndarray) -> np.ndarray:
    e_i = np.asarray(e_i, dtype=float)
    e_j = np.asarray(e_j, dtype=float)
    if e_i.shape != e_j.shape or e_i.ndim != 1:
        raise ValueError(f"entity vectors differ in shape: {e_i.shape} vs {e_j.shape}")
    return np.concatenate([e_i, e_j, np.abs(e_i - e_j), e_i * e_j])


@dataclass(frozen=True)
class MLPWeights:
    """Two affine layers; weight matrices are ``(out, in)``."""

    w1: np.ndarray
    b1: np.ndarray
    w2: np.ndarray
    b2: np.ndarray
    activation: str = "relu"
    labels: tuple[str, ...] = ()

    def __post_init__(self):
        hidden, inp = self.w1.shape
        out, hidden2 = self.w2.shape
        if self.b1.shape != (hidden,) or hidden2 != hidden or self.b2.shape != (out,):
            raise ValueError(f"inconsistent MLP shapes: w1 {self.w1.shape}, b1 {self.b1.shape}, "
                             f"w2 {self.w2.shape}, b2 {self.b2.shape}")
        if inp % 4:
            raise ValueError(f"input_dim {inp} is not a multiple of 4")
        if self.activation not in ACTIVATIONS:
            raise ValueError(f"unknown activation {self.activation!r}")
        if self.labels and len(self.labels) != out:
            raise ValueError(f"{len(self.labels)} labels for output_dim {out}")

    @property
    def input_dim(self) -> int:
        return self.w1.shape[1]

    @property
    def hidden_dim(self) -> int:
        return self.w1.shape[0]

    @property
    def output_dim(self) -> int:
        return self.w2.shape[0]

    @property
    def label_names(self) -> tuple[str, ...]:
        return self.labels or tuple(f"label_{i}" for i in range(self.output_dim))

    @classmethod
    def zeros(cls, input_dim: int, hidden_dim: int, output_dim: int, **kw) -> "MLPWeights":
        return cls(np.zeros((hidden_dim, input_dim)), np.zeros(hidden_dim),
                   np.zeros((output_dim, hidden_dim)), np.zeros(output_dim), **kw)

    def to_dict(self) -> dict:
        return {
            "input_dim": self.input_dim, "hidden_dim": self.hidden_dim,
            "output_dim": self.output_dim, "activation": self.activation,
            "labels": list(self.labels),
            "layer1": {"weight": self.w1.tolist(), "bias": self.b1.tolist()},
            "layer2": {"weight": self.w2.tolist(), "bias": self.b2.tolist()},
        }

    @classmethod
    def from_dict(cls, d: dict) -> "MLPWeights":
        def arr(x, *shape):
            return np.asarray(x, dtype=float).reshape(shape)

        return cls(arr(d["layer1"]["weight"], d["hidden_dim"], d["input_dim"]),
                   arr(d["layer1"]["bias"], d["hidden_dim"]),
                   arr(d["layer2"]["weight"], d["output_dim"], d["hidden_dim"]),
                   arr(d["layer2"]["bias"], d["output_dim"]),
                   d.get("activation", "relu"), tuple(d.get("labels", ())))


def load_weights(path: str | FsPath) -> MLPWeights:
    return MLPWeights.from_dict(json.loads(FsPath(path).read_text(encoding="utf-8")))


def mlp_score(features: np.ndarray, weights: MLPWeights) -> np.ndarray:
    x = np.asarray(features, dtype=float)
    if x.shape != (weights.input_dim,):
        raise ValueError(f"feature length {x.shape} does not match input_dim {weights.input_dim}")
    hidden = ACTIVATIONS[weights.activation](weights.w1 @ x + weights.b1)
    return expit(weights.w2 @ hidden + weights.b2)


def aggregate_scores(per_path: Sequence[np.ndarray]) -> np.ndarray:
    if len(per_path) == 0:
        raise ValueError("no path scores to aggregate")
    arr = np.asarray(per_path, dtype=float)
    if arr.ndim != 2:
        raise ValueError("path score vectors differ in length")
    return arr.max(axis=0)


def predict(scores: np.ndarray, threshold: float | Sequence[float],
            labels: Sequence[str] | None = None) -> set[str]:
    """Labels whose score strictly exceeds the (global or per-relation) threshold."""
    scores = np.asarray(scores, dtype=float)
    if labels is None:
        labels = [f"label_{i}" for i in range(len(scores))]
    above = scores > np.asarray(threshold, dtype=float)
    return {labels[i] for i in np.flatnonzero(above)}


def score_segment(segment: Segment, encoder: Encoder, weights: MLPWeights) -> np.ndarray:
    context = encoder.encode(segment)
    # segment spans are half-open; pooling spans are inclusive
    head = entity_rep([mention_rep(context, (s, e - 1)) for s, e in segment.head_spans])
    tail = entity_rep([mention_rep(context, (s, e - 1)) for s, e in segment.tail_spans])
    return mlp_score(pair_features(head, tail), weights)


def score_pair(doc: Document, pathset: PathSet, encoder: Encoder,
               weights: MLPWeights) -> np.ndarray:
    """Max over paths; a pair without paths scores zero everywhere."""
    if not len(pathset):
        return np.zeros(weights.output_dim)
    return aggregate_scores([
        score_segment(build_segment(doc, p, pathset.head, pathset.tail), encoder, weights)
        for p in pathset.paths
    ])


def fit_threshold(scored: Iterable[tuple[tuple, float]], gold: set[tuple]) -> tuple[float, float]:
    """Global threshold maximising micro-F1 of ``score > threshold``.

    ``scored`` yields ``(key, score)`` with keys comparable to ``gold``.
    Returns ``(threshold, f1)``.
    """
    if not gold:
        raise ValueError("gold set is empty")
    items = sorted(scored, key=lambda kv: -kv[1])
    best_f1, best_thr = 0.0, 1.0
    tp = 0
    i = 0
    while i < len(items):
        # accept all items tied at this score together
        j = i
        while j < len(items) and items[j][1] == items[i][1]:
            tp += items[j][0] in gold
            j += 1
        f1 = 2 * tp / (j + len(gold))
        if f1 > best_f1:
            best_f1 = f1
            # strictly below the accepted score, not below the next one
            best_thr = items[j][1] if j < len(items) else min(0.0, np.nextafter(items[i][1], -1.0))
        i = j
    return float(best_thr), float(best_f1)


def score_corpus(docs: Iterable[Document], encoder: Encoder, weights: MLPWeights,
                 config: RuleConfig = RuleConfig(), threshold: float = 0.0) -> list[dict]:
    """Prediction rows ``{doc_id, h, t, r, score}`` for every ordered pair."""
    labels = weights.label_names
    rows = []
    for doc in docs:
        for h, t in entity_pairs(doc):
            scores = score_pair(doc, extract_paths(doc, h, t, config), encoder, weights)
            for k in np.flatnonzero(scores > threshold):
                rows.append({"doc_id": doc.doc_id, "h": h, "t": t, "r": labels[k],
                             "score": float(scores[k])})
    return rows

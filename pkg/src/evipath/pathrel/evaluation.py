"""Micro precision/recall/F1 over (doc_id, h, t, r) tuples, split by pair locality."""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass
from typing import Iterable, Mapping, Sequence

from ..corpus import Document, entity_pairs

INTRA = "intra"
INTER = "inter"

Triple = tuple[str, int, int, str]


@dataclass(frozen=True)
class F1Result:
    precision: float
    recall: float
    overall_f1: float
    intra_f1: float
    inter_f1: float
    n_gold: int
    n_pred: int
    n_correct: int

    def to_dict(self) -> dict:
        return asdict(self)


def pair_locality(docs: Iterable[Document]) -> dict[tuple[str, int, int], str]:
    """Classify every ordered entity pair as intra (shares a sentence) or inter."""
    out = {}
    for doc in docs:
        occ = doc.occurrences
        for h, t in entity_pairs(doc):
            shared = set(occ.sentences_of(h)) & set(occ.sentences_of(t))
            out[(doc.doc_id, h, t)] = INTRA if shared else INTER
    return out


def gold_triples(docs: Iterable[Document]) -> set[Triple]:
    return {(d.doc_id, i.head, i.tail, i.relation_label) for d in docs for i in d.instances}


def _prf(pred: set, gold: set) -> tuple[float, float, float]:
    correct = len(pred & gold)
    p = correct / len(pred) if pred else 0.0
    r = correct / len(gold) if gold else float("nan")
    f = 2 * p * r / (p + r) if p + r > 0 else 0.0
    return p, r, f


def evaluate_f1(predictions: Iterable[Triple], gold: Iterable[Triple],
                locality: Mapping[tuple[str, int, int], str]) -> F1Result:
    """Micro scores overall and within each locality class.

    A class with no gold tuples has undefined recall and reports NaN F1.
    """
    pred, gold = set(predictions), set(gold)
    if not gold:
        raise ValueError("gold set is empty; recall is undefined")

    def restrict(items: set, cls: str) -> set:
        return {x for x in items if locality[x[:3]] == cls}

    p, r, f = _prf(pred, gold)
    per_class = {}
    for cls in (INTRA, INTER):
        g = restrict(gold, cls)
        per_class[cls] = _prf(restrict(pred, cls), g)[2] if g else float("nan")
    return F1Result(p, r, f, per_class[INTRA], per_class[INTER],
                    len(gold), len(pred), len(pred & gold))


def dump_predictions(rows: Sequence[dict]) -> bytes:
    """JSONL of ``{doc_id, h, t, r, score}``."""
    return "".join(json.dumps({k: r[k] for k in ("doc_id", "h", "t", "r", "score")},
                              ensure_ascii=False) + "\n" for r in rows).encode("utf-8")


def load_predictions(data: bytes | str) -> list[dict]:
    if isinstance(data, bytes):
        data = data.decode("utf-8")
    rows = []
    for lineno, line in enumerate(data.splitlines(), 1):
        if not line.strip():
            continue
        r = json.loads(line)
        missing = {"doc_id", "h", "t", "r"} - r.keys()
        if missing:
            raise ValueError(f"prediction line {lineno} lacks {sorted(missing)}")
        rows.append(r)
    return rows

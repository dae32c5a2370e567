"""Path-level relation scoring on top of an external encoder."""

from .evaluation import (F1Result, dump_predictions, evaluate_f1, gold_triples,
                         load_predictions, pair_locality)
from .scoring import (MLPWeights, aggregate_scores, entity_rep, fit_threshold, load_weights,
                      mention_rep, mlp_score, pair_features, predict, score_corpus, score_pair,
                      score_segment)
from .segments import (Segment, SegmentError, build_segment, dump_segments, iter_segments,
                       load_segments)
from .vectors import Encoder, PrecomputedEncoder, VectorTable, load_vectors, parse_vectors

__all__ = [
    "Encoder", "F1Result", "MLPWeights", "PrecomputedEncoder", "Segment", "SegmentError",
    "VectorTable", "aggregate_scores", "build_segment", "dump_predictions", "dump_segments",
    "entity_rep", "evaluate_f1", "fit_threshold", "gold_triples", "iter_segments",
    "load_predictions", "load_segments", "load_vectors", "load_weights", "mention_rep",
    "mlp_score", "pair_features", "pair_locality", "parse_vectors", "predict", "score_corpus",
    "score_pair", "score_segment",
]

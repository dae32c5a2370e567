"""
Scoring an entity pair path by path
===================================

With a toy embedding table and random perceptron weights (no training), we
walk through segment construction, pooling, pair features, per-path scores
and the max over paths.
"""

import numpy as np

import evipath
from evipath.pathrel import (MLPWeights, aggregate_scores, build_segment, entity_rep,
                             mention_rep, mlp_score, pair_features, parse_vectors, predict)

rng = np.random.default_rng(0)
doc = evipath.figure1_fixture()
vocab = sorted({t for s in doc.sentences for t in s})
dim = 4
table = parse_vectors("\n".join(f"{t} " + " ".join(f"{x:.5f}" for x in rng.normal(size=dim))
                                for t in vocab))
labels = ("P17", "P127", "P131")
weights = MLPWeights(rng.normal(size=(8, 4 * dim)) / 4, np.zeros(8),
                     rng.normal(size=(len(labels), 8)), np.zeros(len(labels)), labels=labels)

head, tail = doc.entity_by_name("The Espoo Cathedral"), doc.entity_by_name("the EC Parish")
pathset = evipath.extract_paths(doc, head, tail)

per_path = []
for path in pathset:
    seg = build_segment(doc, path, head, tail)
    context = table.encode(seg)
    e_h = entity_rep([mention_rep(context, (s, e - 1)) for s, e in seg.head_spans])
    e_t = entity_rep([mention_rep(context, (s, e - 1)) for s, e in seg.tail_spans])
    scores = mlp_score(pair_features(e_h, e_t), weights)
    per_path.append(scores)
    print(path.kind.value, path.sentences, len(seg.tokens), "tokens", np.round(scores, 3))

final = aggregate_scores(per_path)
print("max over paths", np.round(final, 3))
print("predicted at 0.5:", sorted(predict(final, 0.5, labels)))

"""Brute-force reference enumerations.

These scan raw mentions directly and never use the occurrence index or the
neighbour pruning of the production extractor.
"""

from __future__ import annotations

import itertools

from evipath.corpus import Document
from evipath.pathfinder import Path, PathKind, PathSet, RuleConfig


def mention_sentences(doc: Document, entity: int) -> list[int]:
    return [m.sentence_index for m in doc.entities[entity].mentions]


def mentioned_in(doc: Document, entity: int, sentence: int) -> bool:
    return any(m.sentence_index == sentence for m in doc.entities[entity].mentions)


def brute_occurrences(doc: Document):
    ent = {e: set() for e in range(doc.n_entities)}
    sent = {s: set() for s in range(doc.n_sentences)}
    for e in range(doc.n_entities):
        for s in range(doc.n_sentences):
            if mentioned_in(doc, e, s):
                ent[e].add(s)
                sent[s].add(e)
    return ent, sent


def brute_consecutive(doc, head, tail, max_gap=2) -> list[Path]:
    found = set()
    for i in mention_sentences(doc, head):
        for j in mention_sentences(doc, tail):
            if abs(i - j) <= max_gap:
                found.add(tuple(range(min(i, j), max(i, j) + 1)))
    return sorted((Path(PathKind.CONSECUTIVE, s) for s in found), key=lambda p: p.sentences)


def _hop_assignments(doc, route, n):
    """Every tuple of hop sentences, in lexicographic order, whose hops co-occur.

    Equivalent to filtering ``product(range(n), repeat=len(route) - 1)``;
    a prefix with a failing hop is abandoned early.
    """
    if len(route) < 2:
        yield ()
        return
    a, b = route[0], route[1]
    for s in range(n):
        if mentioned_in(doc, a, s) and mentioned_in(doc, b, s):
            for rest in _hop_assignments(doc, route[1:], n):
                yield (s, *rest)


def brute_multihop(doc, head, tail, max_bridges=2) -> list[Path]:
    n = doc.n_sentences
    others = [e for e in range(doc.n_entities) if e not in (head, tail)]
    found: dict[tuple, Path] = {}
    for k in range(1, max_bridges + 1):
        for bridges in itertools.permutations(others, k):
            for hops in _hop_assignments(doc, (head, *bridges, tail), n):
                key = tuple(sorted(set(hops)))
                if len(key) <= 3 and key not in found:
                    found[key] = Path(PathKind.MULTIHOP, key, bridges)
    return sorted(found.values(), key=lambda p: p.sentences)


def brute_default(doc, head, tail) -> list[Path]:
    found = {tuple(sorted((i, j)))
             for i in mention_sentences(doc, head) for j in mention_sentences(doc, tail) if i != j}
    return sorted((Path(PathKind.DEFAULT, s) for s in found), key=lambda p: p.sentences)


def brute_extract(doc, head, tail, config: RuleConfig) -> PathSet:
    paths = []
    if config.consecutive:
        paths += brute_consecutive(doc, head, tail, config.max_gap)
    if config.multihop:
        seen = {p.sentences for p in paths}
        paths += [p for p in brute_multihop(doc, head, tail, config.max_bridges)
                  if p.sentences not in seen]
    if not paths and config.default_fallback:
        paths = brute_default(doc, head, tail)
    order = {PathKind.CONSECUTIVE: 0, PathKind.MULTIHOP: 1, PathKind.DEFAULT: 2}
    return PathSet(head, tail, tuple(sorted(paths, key=lambda p: (order[p.kind], p.sentences))))


def brute_coverage(corpus, config: RuleConfig) -> dict:
    n = covered = with_paths = union_total = path_total = 0
    for doc in corpus:
        for inst in doc.instances:
            if not inst.evidence:
                continue
            ps = brute_extract(doc, inst.head, inst.tail, config)
            union = {s for p in ps.paths for s in p.sentences}
            n += 1
            covered += inst.evidence <= union
            if ps.paths:
                with_paths += 1
                union_total += len(union)
                path_total += len(ps.paths)
    return {"n": n, "covered": covered, "with_paths": with_paths,
            "union_total": union_total, "path_total": path_total}

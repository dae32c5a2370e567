"""Random synthetic documents for oracle and property tests."""

from __future__ import annotations

import random

from hypothesis import strategies as st

from evipath.corpus import Document, Entity, Mention, RelationInstance


def random_document(rng: random.Random, *, max_sents: int = 6, max_ents: int = 6,
                    max_mentions: int = 4, n_labels: int | None = None,
                    doc_id: str = "synth") -> Document:
    n_sents = rng.randint(1, max_sents)
    sentences = tuple(
        tuple(f"w{s}_{j}" for j in range(rng.randint(2, 8))) for s in range(n_sents)
    )
    n_ents = rng.randint(2, max_ents)
    entities = []
    for e in range(n_ents):
        mentions = []
        for _ in range(rng.randint(1, max_mentions)):
            s = rng.randrange(n_sents)
            start = rng.randrange(len(sentences[s]))
            end = rng.randint(start + 1, min(len(sentences[s]), start + 3))
            mentions.append(Mention(s, start, end, " ".join(sentences[s][start:end]), "T"))
        entities.append(Entity(e, tuple(mentions)))
    if n_labels is None:
        n_labels = rng.randint(0, 6)
    instances = []
    for k in range(n_labels):
        h, t = rng.sample(range(n_ents), 2)
        size = rng.choice([0, 1, 1, 2, 2, 3, 4])
        evidence = frozenset(rng.sample(range(n_sents), min(size, n_sents)))
        instances.append(RelationInstance(h, t, f"R{rng.randrange(3)}", evidence))
    return Document(doc_id, sentences, tuple(entities), tuple(instances))


def random_corpus(seed: int, n_docs: int, **kw) -> list[Document]:
    rng = random.Random(seed)
    return [random_document(rng, doc_id=f"synth-{seed}-{i}", **kw) for i in range(n_docs)]


@st.composite
def documents(draw, max_sents: int = 6, max_ents: int = 6, max_mentions: int = 4):
    n_sents = draw(st.integers(1, max_sents))
    lengths = draw(st.lists(st.integers(1, 6), min_size=n_sents, max_size=n_sents))
    sentences = tuple(tuple(f"t{s}_{j}" for j in range(n)) for s, n in enumerate(lengths))
    n_ents = draw(st.integers(2, max_ents))
    entities = []
    for e in range(n_ents):
        placements = draw(st.lists(st.integers(0, n_sents - 1), min_size=1,
                                   max_size=max_mentions))
        mentions = []
        for s in placements:
            start = draw(st.integers(0, lengths[s] - 1))
            end = draw(st.integers(start + 1, lengths[s]))
            mentions.append(Mention(s, start, end, " ".join(sentences[s][start:end]), "T"))
        entities.append(Entity(e, tuple(mentions)))
    pairs = [(h, t) for h in range(n_ents) for t in range(n_ents) if h != t]
    labelled = draw(st.lists(st.sampled_from(pairs), max_size=5))
    instances = tuple(
        RelationInstance(h, t, "R", frozenset(draw(st.sets(st.integers(0, n_sents - 1),
                                                            max_size=4))))
        for h, t in labelled
    )
    return Document("hyp", sentences, tuple(entities), instances)

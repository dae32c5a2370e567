import copy
import json
import random

import pytest
from hypothesis import given, settings

from evipath.corpus import (ParseError, SchemaError, ValidationError, document_to_dict,
                            dump_docred, occurrence_index, parse_docred)
from oracles import brute_occurrences
from synth import documents, random_corpus


def encode(raw):
    return json.dumps(raw).encode()


def test_minimal_document(minimal_raw):
    (doc,) = parse_docred(encode(minimal_raw))
    assert doc.doc_id == "Espoo"
    assert doc.n_entities == 2
    assert len(doc.instances) == 1
    inst = doc.instances[0]
    assert (inst.head, inst.tail, inst.relation_label) == (0, 1, "P17")
    assert inst.evidence == {0}
    assert doc.entities[1].mentions[0].token_span == (3, 4)


def test_span_past_sentence_end_rejected(minimal_raw):
    minimal_raw[0]["vertexSet"][1][0]["pos"] = [3, 5]
    with pytest.raises(ValidationError, match="span out of range") as exc:
        parse_docred(encode(minimal_raw))
    assert exc.value.doc_id == "Espoo"
    assert (exc.value.entity, exc.value.mention) == (1, 0)


def test_figure1_fixture(fig1):
    assert fig1.n_sentences == 6
    names = {m.surface for e in fig1.entities for m in e.mentions}
    assert {"Espoo", "Finland", "The Espoo Cathedral", "the EC Parish"} <= names
    assert fig1.n_entities >= 4


def test_fixture_mentions_match_tokens(fig1):
    for ent in fig1.entities:
        for m in ent.mentions:
            assert " ".join(fig1.sentences[m.sentence_index][m.start:m.end]) == m.surface


def test_malformed_json_reports_byte_offset():
    data = '[{"title": "é", "sents": [}]'.encode()
    with pytest.raises(ParseError) as exc:
        parse_docred(data)
    # the bad '}' sits after a two-byte character
    assert exc.value.offset == data.index(b"[}") + 1


def test_missing_key(minimal_raw):
    del minimal_raw[0]["labels"][0]["evidence"]
    with pytest.raises(SchemaError, match="evidence"):
        parse_docred(encode(minimal_raw))


def test_wrong_type(minimal_raw):
    minimal_raw[0]["vertexSet"][0][0]["sent_id"] = "0"
    with pytest.raises(SchemaError):
        parse_docred(encode(minimal_raw))


def test_extra_keys_ignored_and_empty_labels_ok(minimal_raw):
    minimal_raw[0]["labels"] = []
    minimal_raw[0]["extra"] = {"anything": 1}
    minimal_raw[0]["vertexSet"][0][0]["global_id"] = 7
    (doc,) = parse_docred(encode(minimal_raw))
    assert doc.instances == ()


def test_duplicate_mentions_kept(minimal_raw):
    m = minimal_raw[0]["vertexSet"][0][0]
    minimal_raw[0]["vertexSet"][0].append(dict(m))
    (doc,) = parse_docred(encode(minimal_raw))
    assert len(doc.entities[0].mentions) == 2
    assert doc.occurrences.sentences_of(0) == (0,)


MUTATIONS = [
    ("empty sentence", lambda d: d["sents"].append([])),
    ("document has no sentences", lambda d: (d.__setitem__("sents", []), d.__setitem__("vertexSet", []),
                                             d.__setitem__("labels", []))),
    ("entity has no mentions", lambda d: d["vertexSet"].append([])),
    ("sentence index out of range", lambda d: d["vertexSet"][0][0].__setitem__("sent_id", 6)),
    ("span out of range", lambda d: d["vertexSet"][0][0].__setitem__("pos", [5, 5])),
    ("span out of range", lambda d: d["vertexSet"][0][0].__setitem__("pos", [-1, 2])),
    ("head equals tail", lambda d: d["labels"][0].__setitem__("t", d["labels"][0]["h"])),
    ("entity index out of range", lambda d: d["labels"][0].__setitem__("t", 4)),
    ("evidence index out of range", lambda d: d["labels"][0]["evidence"].append(6)),
]


@pytest.mark.parametrize("rule,mutate", MUTATIONS)
def test_validation_rejects_each_mutation(fig1_raw, rule, mutate):
    raw = copy.deepcopy(fig1_raw)
    mutate(raw[0])
    with pytest.raises(ValidationError) as exc:
        parse_docred(encode(raw))
    assert exc.value.rule == rule
    assert exc.value.doc_id == "Espoo Cathedral"


def test_validation_accepts_valid_corpora(fig1_raw):
    parse_docred(encode(fig1_raw))
    docs = random_corpus(3, 50)
    assert parse_docred(dump_docred(docs)) == docs


def test_round_trip_figure1(fig1):
    again = parse_docred(dump_docred([fig1]))
    assert again == [fig1]
    assert dump_docred(again) == dump_docred([fig1])


@settings(max_examples=100, deadline=None)
@given(documents())
def test_round_trip_property(doc):
    assert parse_docred(dump_docred([doc])) == [doc]


def test_occurrence_index_figure1(fig1):
    finland = fig1.entity_by_name("Finland")
    assert {0, 5} <= set(occurrence_index(fig1).sentences_of(finland))


def test_occurrence_index_set_semantics(minimal_raw):
    minimal_raw[0]["vertexSet"][0].append(
        {"name": "Espoo", "sent_id": 0, "pos": [0, 1], "type": "LOC"})
    (doc,) = parse_docred(encode(minimal_raw))
    assert occurrence_index(doc).sentences_of(0) == (0,)


@pytest.mark.parametrize("seed", range(5))
def test_occurrence_index_matches_brute_force(seed):
    for doc in random_corpus(seed, 40, max_sents=8, max_ents=8):
        ent, sent = brute_occurrences(doc)
        idx = occurrence_index(doc)
        assert [set(idx.sentences_of(e)) for e in range(doc.n_entities)] == \
            [ent[e] for e in range(doc.n_entities)]
        assert [set(idx.entities_in(s)) for s in range(doc.n_sentences)] == \
            [sent[s] for s in range(doc.n_sentences)]
        assert all(list(idx.sentences_of(e)) == sorted(idx.sentences_of(e))
                   for e in range(doc.n_entities))


@settings(max_examples=100, deadline=None)
@given(documents())
def test_occurrence_index_consistent(doc):
    idx = occurrence_index(doc)
    for e in range(doc.n_entities):
        for s in range(doc.n_sentences):
            assert (e in idx.entities_in(s)) == (s in idx.sentences_of(e))


def test_document_to_dict_has_doc_id(fig1):
    d = document_to_dict(fig1)
    assert d["doc_id"] == fig1.doc_id
    assert set(d) >= {"title", "sents", "vertexSet", "labels"}


def test_random_mutations_rejected():
    rng = random.Random(11)
    raw = json.loads(dump_docred(random_corpus(4, 30)))
    for obj in raw:
        bad = copy.deepcopy(obj)
        ent = rng.randrange(len(bad["vertexSet"]))
        m = bad["vertexSet"][ent][0]
        m["pos"] = [m["pos"][0], len(bad["sents"][m["sent_id"]]) + 1]
        with pytest.raises(ValidationError, match="span out of range"):
            parse_docred(encode([bad]))

"""Annotated documents and DocRED-format ingestion.

A DocRED file is a JSON array of documents::

    {"title": ..., "sents": [[tok, ...], ...],
     "vertexSet": [[{"name", "sent_id", "pos", "type"}, ...], ...],
     "labels": [{"h", "t", "r", "evidence"}, ...]}

``pos`` is a half-open ``[start, end)`` token range inside sentence
``sent_id``. Extra keys are ignored. The canonical dump written by
:func:`dump_docred` uses the same schema plus a ``doc_id`` key.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import cached_property
from pathlib import Path
from typing import Any, Iterable, Sequence


class CorpusError(ValueError):
    """Base class for corpus ingestion failures."""


class ParseError(CorpusError):
    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} (byte offset {offset})")
        self.offset = offset


class SchemaError(CorpusError):
    pass


class ValidationError(CorpusError):
    def __init__(self, doc_id: str, rule: str, *, entity: int | None = None,
                 mention: int | None = None, label: int | None = None,
                 sentence: int | None = None):
        where = [f"doc {doc_id!r}"]
        if entity is not None:
            where.append(f"entity {entity}")
        if mention is not None:
            where.append(f"mention {mention}")
        if label is not None:
            where.append(f"label {label}")
        if sentence is not None:
            where.append(f"sentence {sentence}")
        super().__init__(f"{', '.join(where)}: {rule}")
        self.doc_id = doc_id
        self.rule = rule
        self.entity = entity
        self.mention = mention
        self.label = label
        self.sentence = sentence


@dataclass(frozen=True)
class Mention:
    sentence_index: int
    start: int
    end: int
    surface: str
    type_tag: str

    @property
    def token_span(self) -> tuple[int, int]:
        return (self.start, self.end)


@dataclass(frozen=True)
class Entity:
    entity_index: int
    mentions: tuple[Mention, ...]

    @property
    def name(self) -> str:
        return self.mentions[0].surface


@dataclass(frozen=True)
class RelationInstance:
    head: int
    tail: int
    relation_label: str
    evidence: frozenset[int]


@dataclass(frozen=True)
class OccurrenceIndex:
    """Entity/sentence co-occurrence maps derived from mentions.

    ``entity_sentences[e]`` is the sorted tuple of sentences mentioning
    entity ``e``; ``sentence_entities[s]`` is the set of entities mentioned
    in sentence ``s``.
    """

    entity_sentences: tuple[tuple[int, ...], ...]
    sentence_entities: tuple[frozenset[int], ...]

    def sentences_of(self, entity: int) -> tuple[int, ...]:
        return self.entity_sentences[entity]

    def entities_in(self, sentence: int) -> frozenset[int]:
        return self.sentence_entities[sentence]

    def cooccur(self, a: int, b: int, sentence: int) -> bool:
        ents = self.sentence_entities[sentence]
        return a in ents and b in ents


@dataclass(frozen=True)
class Document:
    doc_id: str
    sentences: tuple[tuple[str, ...], ...]
    entities: tuple[Entity, ...]
    instances: tuple[RelationInstance, ...] = ()
    title: str = ""

    @property
    def n_sentences(self) -> int:
        return len(self.sentences)

    @property
    def n_entities(self) -> int:
        return len(self.entities)

    @cached_property
    def occurrences(self) -> OccurrenceIndex:
        return occurrence_index(self)

    def entity_by_name(self, name: str) -> int:
        """Index of the first entity with a mention whose surface is ``name``."""
        for ent in self.entities:
            if any(m.surface == name for m in ent.mentions):
                return ent.entity_index
        raise KeyError(name)

    def relations_of(self, head: int, tail: int) -> list[str]:
        return sorted({inst.relation_label for inst in self.instances
                       if inst.head == head and inst.tail == tail})


def occurrence_index(doc: Document) -> OccurrenceIndex:
    ent_sents: list[set[int]] = [set() for _ in doc.entities]
    sent_ents: list[set[int]] = [set() for _ in doc.sentences]
    for ent in doc.entities:
        for m in ent.mentions:
            ent_sents[ent.entity_index].add(m.sentence_index)
            sent_ents[m.sentence_index].add(ent.entity_index)
    return OccurrenceIndex(
        entity_sentences=tuple(tuple(sorted(s)) for s in ent_sents),
        sentence_entities=tuple(frozenset(s) for s in sent_ents),
    )


def validate_document(doc: Document) -> None:
    """Raise :class:`ValidationError` on the first violated invariant."""
    if not doc.sentences:
        raise ValidationError(doc.doc_id, "document has no sentences")
    for si, sent in enumerate(doc.sentences):
        if not sent:
            raise ValidationError(doc.doc_id, "empty sentence", sentence=si)
    n_sents = len(doc.sentences)
    for ei, ent in enumerate(doc.entities):
        if ent.entity_index != ei:
            raise ValidationError(doc.doc_id, "entity index mismatch", entity=ei)
        if not ent.mentions:
            raise ValidationError(doc.doc_id, "entity has no mentions", entity=ei)
        for mi, m in enumerate(ent.mentions):
            if not 0 <= m.sentence_index < n_sents:
                raise ValidationError(doc.doc_id, "sentence index out of range",
                                      entity=ei, mention=mi)
            if not 0 <= m.start < m.end <= len(doc.sentences[m.sentence_index]):
                raise ValidationError(doc.doc_id, "span out of range",
                                      entity=ei, mention=mi)
    n_ents = len(doc.entities)
    for li, inst in enumerate(doc.instances):
        if not (0 <= inst.head < n_ents and 0 <= inst.tail < n_ents):
            raise ValidationError(doc.doc_id, "entity index out of range", label=li)
        if inst.head == inst.tail:
            raise ValidationError(doc.doc_id, "head equals tail", label=li)
        for s in inst.evidence:
            if not 0 <= s < n_sents:
                raise ValidationError(doc.doc_id, "evidence index out of range",
                                      label=li)


def _require(obj: Any, key: str, kind: type | tuple[type, ...], where: str) -> Any:
    if not isinstance(obj, dict):
        raise SchemaError(f"{where}: expected an object")
    if key not in obj:
        raise SchemaError(f"{where}: missing key {key!r}")
    value = obj[key]
    # bool is an int subclass; never a valid index
    if isinstance(value, bool) or not isinstance(value, kind):
        raise SchemaError(f"{where}: key {key!r} has wrong type {type(value).__name__}")
    return value


def _int_list(value: Any, where: str) -> list[int]:
    if not isinstance(value, list) or any(
            isinstance(v, bool) or not isinstance(v, int) for v in value):
        raise SchemaError(f"{where}: expected a list of integers")
    return value


def document_from_dict(obj: dict, position: int = 0) -> Document:
    """Build and validate one :class:`Document` from a DocRED object."""
    where = f"document {position}"
    title = _require(obj, "title", str, where)
    doc_id = obj.get("doc_id", title)
    if not isinstance(doc_id, str):
        raise SchemaError(f"{where}: key 'doc_id' has wrong type")
    sents = _require(obj, "sents", list, where)
    for si, sent in enumerate(sents):
        if not isinstance(sent, list) or not all(isinstance(t, str) for t in sent):
            raise SchemaError(f"{where}: sentence {si} is not a list of strings")
    vertex_set = _require(obj, "vertexSet", list, where)
    labels = _require(obj, "labels", list, where)

    entities = []
    for ei, cluster in enumerate(vertex_set):
        if not isinstance(cluster, list):
            raise SchemaError(f"{where}: vertexSet[{ei}] is not a list")
        mentions = []
        for mi, m in enumerate(cluster):
            mw = f"{where}, entity {ei}, mention {mi}"
            pos = _int_list(_require(m, "pos", list, mw), mw + " pos")
            if len(pos) != 2:
                raise SchemaError(f"{mw}: pos must have 2 entries")
            mentions.append(Mention(
                sentence_index=_require(m, "sent_id", int, mw),
                start=pos[0], end=pos[1],
                surface=_require(m, "name", str, mw),
                type_tag=_require(m, "type", str, mw),
            ))
        entities.append(Entity(ei, tuple(mentions)))

    instances = []
    for li, lab in enumerate(labels):
        lw = f"{where}, label {li}"
        evidence = _int_list(_require(lab, "evidence", list, lw), lw + " evidence")
        instances.append(RelationInstance(
            head=_require(lab, "h", int, lw),
            tail=_require(lab, "t", int, lw),
            relation_label=str(_require(lab, "r", (str, int), lw)),
            evidence=frozenset(evidence),
        ))

    doc = Document(doc_id=doc_id, sentences=tuple(tuple(s) for s in sents),
                   entities=tuple(entities), instances=tuple(instances), title=title)
    validate_document(doc)
    return doc


def parse_docred(data: bytes | str) -> list[Document]:
    """Parse a DocRED JSON array into validated documents."""
    if isinstance(data, bytes):
        try:
            text = data.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise ParseError(f"invalid UTF-8: {exc.reason}", exc.start) from exc
    else:
        text = data
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        offset = len(text[:exc.pos].encode("utf-8"))
        raise ParseError(f"malformed JSON: {exc.msg}", offset) from exc
    if not isinstance(raw, list):
        raise SchemaError("top level must be a JSON array of documents")
    return [document_from_dict(obj, i) for i, obj in enumerate(raw)]


def load_docred(path: str | Path) -> list[Document]:
    return parse_docred(Path(path).read_bytes())


def document_to_dict(doc: Document) -> dict:
    return {
        "doc_id": doc.doc_id,
        "title": doc.title,
        "sents": [list(s) for s in doc.sentences],
        "vertexSet": [
            [{"name": m.surface, "sent_id": m.sentence_index,
              "pos": [m.start, m.end], "type": m.type_tag} for m in ent.mentions]
            for ent in doc.entities
        ],
        "labels": [
            {"h": inst.head, "t": inst.tail, "r": inst.relation_label,
             "evidence": sorted(inst.evidence)}
            for inst in doc.instances
        ],
    }


def dump_docred(docs: Iterable[Document]) -> bytes:
    """Canonical UTF-8 JSON dump; :func:`parse_docred` reads it back."""
    payload = [document_to_dict(d) for d in docs]
    return json.dumps(payload, ensure_ascii=False, indent=1).encode("utf-8")


def entity_pairs(doc: Document) -> list[tuple[int, int]]:
    """All ordered (head, tail) pairs with head != tail."""
    n = doc.n_entities
    return [(h, t) for h in range(n) for t in range(n) if h != t]


def sentences_with(doc: Document, entity: int) -> Sequence[int]:
    return doc.occurrences.sentences_of(entity)

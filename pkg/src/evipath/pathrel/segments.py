"""Turn a path into a token segment with remapped head/tail spans."""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterable, Iterator

from ..corpus import Document, entity_pairs
from ..pathfinder import Path, PathKind, RuleConfig, extract_paths


class SegmentError(ValueError):
    pass


@dataclass(frozen=True)
class Segment:
    """Sentences of one path concatenated in document order.

    Spans are half-open ``(start, end)`` offsets into ``tokens``.
    ``sentence_boundaries[i]`` is the offset where the i-th path sentence starts.
    """

    doc_id: str
    head: int
    tail: int
    path: Path
    tokens: tuple[str, ...]
    head_spans: tuple[tuple[int, int], ...]
    tail_spans: tuple[tuple[int, int], ...]
    sentence_boundaries: tuple[int, ...]
    relations: tuple[str, ...] = ()

    def to_dict(self) -> dict:
        return {
            "doc_id": self.doc_id, "h": self.head, "t": self.tail,
            "kind": self.path.kind.value,
            "sentences": list(self.path.sentences),
            "bridges": list(self.path.bridges),
            "tokens": list(self.tokens),
            "head_spans": [list(s) for s in self.head_spans],
            "tail_spans": [list(s) for s in self.tail_spans],
            "sentence_boundaries": list(self.sentence_boundaries),
            "relations": list(self.relations),
        }

    @classmethod
    def from_dict(cls, d: dict) -> "Segment":
        path = Path(PathKind(d["kind"]), tuple(d["sentences"]), tuple(d.get("bridges", ())))
        return cls(d["doc_id"], d["h"], d["t"], path, tuple(d["tokens"]),
                   tuple(tuple(s) for s in d["head_spans"]),
                   tuple(tuple(s) for s in d["tail_spans"]),
                   tuple(d["sentence_boundaries"]), tuple(d.get("relations", ())))


def build_segment(doc: Document, path: Path, head: int, tail: int) -> Segment:
    offsets = {}
    tokens: list[str] = []
    for s in path.sentences:
        offsets[s] = len(tokens)
        tokens.extend(doc.sentences[s])

    def remap(entity: int) -> tuple[tuple[int, int], ...]:
        return tuple((offsets[m.sentence_index] + m.start, offsets[m.sentence_index] + m.end)
                     for m in doc.entities[entity].mentions if m.sentence_index in offsets)

    head_spans, tail_spans = remap(head), remap(tail)
    if not head_spans or not tail_spans:
        missing = "head" if not head_spans else "tail"
        raise SegmentError(f"doc {doc.doc_id!r}: {missing} entity has no mention "
                           f"in path sentences {path.sentences}")
    return Segment(doc.doc_id, head, tail, path, tuple(tokens), head_spans, tail_spans,
                   tuple(offsets[s] for s in path.sentences), tuple(doc.relations_of(head, tail)))


def iter_segments(doc: Document, config: RuleConfig = RuleConfig(),
                  all_pairs: bool = False) -> Iterator[Segment]:
    """Segments for the labelled pairs of ``doc`` (or every ordered pair)."""
    if all_pairs:
        pairs = entity_pairs(doc)
    else:
        pairs = sorted({(i.head, i.tail) for i in doc.instances})
    for h, t in pairs:
        for path in extract_paths(doc, h, t, config):
            yield build_segment(doc, path, h, t)


def dump_segments(segments: Iterable[Segment]) -> bytes:
    return "".join(json.dumps(s.to_dict(), ensure_ascii=False) + "\n"
                   for s in segments).encode("utf-8")


def load_segments(data: bytes | str) -> list[Segment]:
    if isinstance(data, bytes):
        data = data.decode("utf-8")
    return [Segment.from_dict(json.loads(line)) for line in data.splitlines() if line.strip()]

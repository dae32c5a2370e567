"""Token vectors and the encoder interface.

The reference encoder is a plain embedding lookup. Contextual vectors
computed elsewhere (e.g. by a trained recurrent encoder) can be supplied
through :class:`PrecomputedEncoder`.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path as FsPath
from typing import Mapping, Protocol

import numpy as np

from .segments import Segment


class Encoder(Protocol):
    def encode(self, segment: Segment) -> np.ndarray:
        """Return an ``(len(segment.tokens), d)`` array of context vectors."""


@dataclass(frozen=True)
class VectorTable:
    dim: int
    vectors: Mapping[str, np.ndarray]
    fallback: np.ndarray

    def __post_init__(self):
        if self.fallback.shape != (self.dim,):
            raise ValueError(f"fallback vector must have length {self.dim}")
        for tok, v in self.vectors.items():
            if v.shape != (self.dim,):
                raise ValueError(f"vector for {tok!r} has length {v.shape}, expected {self.dim}")

    def lookup(self, token: str) -> np.ndarray:
        # GloVe vocabularies are lowercased
        v = self.vectors.get(token)
        if v is None:
            v = self.vectors.get(token.lower(), self.fallback)
        return v

    def encode(self, segment: Segment) -> np.ndarray:
        if not segment.tokens:
            return np.zeros((0, self.dim))
        return np.stack([self.lookup(t) for t in segment.tokens])


def parse_vectors(text: str, fallback: np.ndarray | None = None) -> VectorTable:
    """Parse ``token v1 ... vd`` lines (GloVe text layout)."""
    vectors: dict[str, np.ndarray] = {}
    dim = None
    for lineno, line in enumerate(text.splitlines(), 1):
        parts = line.rstrip().split(" ")
        if not parts or parts == [""]:
            continue
        tok, values = parts[0], parts[1:]
        try:
            vec = np.array([float(x) for x in values])
        except ValueError as exc:
            raise ValueError(f"line {lineno}: non-numeric vector component") from exc
        if dim is None:
            dim = len(vec)
        if len(vec) != dim or dim == 0:
            raise ValueError(f"line {lineno}: expected {dim} components, got {len(vec)}")
        vectors.setdefault(tok, vec)
    if dim is None:
        raise ValueError("vector file is empty")
    if fallback is None:
        fallback = np.zeros(dim)
    return VectorTable(dim, vectors, np.asarray(fallback, dtype=float))


def load_vectors(path: str | FsPath) -> VectorTable:
    return parse_vectors(FsPath(path).read_text(encoding="utf-8"))


def segment_key(segment: Segment) -> tuple:
    return (segment.doc_id, segment.head, segment.tail, segment.path.sentences)


class PrecomputedEncoder:
    """Context vectors looked up per segment.

    File format: JSONL of ``{doc_id, h, t, sentences, vectors}`` where
    ``vectors`` is a token-by-dimension nested list.
    """

    def __init__(self, table: Mapping[tuple, np.ndarray]):
        self.table = dict(table)

    @classmethod
    def from_jsonl(cls, data: bytes | str) -> "PrecomputedEncoder":
        if isinstance(data, bytes):
            data = data.decode("utf-8")
        table = {}
        for line in data.splitlines():
            if not line.strip():
                continue
            r = json.loads(line)
            table[(r["doc_id"], r["h"], r["t"], tuple(r["sentences"]))] = \
                np.asarray(r["vectors"], dtype=float)
        return cls(table)

    def encode(self, segment: Segment) -> np.ndarray:
        h = self.table[segment_key(segment)]
        if len(h) != len(segment.tokens):
            raise ValueError(f"precomputed vectors for {segment_key(segment)} have {len(h)} "
                             f"rows, segment has {len(segment.tokens)} tokens")
        return h


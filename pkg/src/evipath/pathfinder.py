"""Heuristic evidence paths between a head and a tail entity.

Three rules, each producing sets of at most three sentences:

* consecutive -- a head mention and a tail mention at most ``max_gap``
  sentences apart, together with every sentence in between (the
  intra-sentence case is the window of one);
* multi-hop -- a chain head -> b1 [-> b2] -> tail in which every hop is a
  sentence mentioning both of its endpoints;
* default -- one sentence with the head and one with the tail, used only
  when the first two rules find nothing.

Paths are deduplicated by sentence set. A multi-hop candidate whose set is
already produced by the consecutive rule is dropped, and among multi-hop
chains yielding the same set the first in (k, bridges, hops) order is kept.
"""

from __future__ import annotations

import enum
import itertools
import json
from dataclasses import dataclass
from typing import Iterable

from .corpus import Document

MAX_PATH_SENTENCES = 3


class PathKind(enum.Enum):
    CONSECUTIVE = "consecutive"
    MULTIHOP = "multihop"
    DEFAULT = "default"

    @property
    def priority(self) -> int:
        return _KIND_PRIORITY[self]


_KIND_PRIORITY = {PathKind.CONSECUTIVE: 0, PathKind.MULTIHOP: 1, PathKind.DEFAULT: 2}


@dataclass(frozen=True)
class Path:
    kind: PathKind
    sentences: tuple[int, ...]
    bridges: tuple[int, ...] = ()

    def __post_init__(self):
        s = self.sentences
        if not 1 <= len(s) <= MAX_PATH_SENTENCES:
            raise ValueError(f"path must have 1..3 sentences, got {s}")
        if any(a >= b for a, b in zip(s, s[1:])):
            raise ValueError(f"path sentences must be strictly ascending: {s}")
        if self.kind is PathKind.CONSECUTIVE and s[-1] - s[0] != len(s) - 1:
            raise ValueError(f"consecutive path is not contiguous: {s}")
        if self.kind is PathKind.MULTIHOP:
            if not 1 <= len(self.bridges) <= 2 or len(set(self.bridges)) != len(self.bridges):
                raise ValueError(f"multi-hop path needs 1-2 distinct bridges: {self.bridges}")
        elif self.bridges:
            raise ValueError(f"{self.kind.value} path cannot carry bridges")
        if self.kind is PathKind.DEFAULT and len(s) != 2:
            raise ValueError(f"default path must have 2 sentences: {s}")

    @property
    def sort_key(self) -> tuple:
        return (self.kind.priority, self.sentences)

    def to_dict(self) -> dict:
        return {"kind": self.kind.value, "sentences": list(self.sentences),
                "bridges": list(self.bridges)}

    @classmethod
    def from_dict(cls, obj: dict) -> "Path":
        return cls(PathKind(obj["kind"]), tuple(obj["sentences"]), tuple(obj.get("bridges", ())))


@dataclass(frozen=True)
class PathSet:
    head: int
    tail: int
    paths: tuple[Path, ...]

    def __len__(self) -> int:
        return len(self.paths)

    def __iter__(self):
        return iter(self.paths)

    @property
    def union(self) -> frozenset[int]:
        return frozenset(s for p in self.paths for s in p.sentences)

    @property
    def kinds(self) -> set[PathKind]:
        return {p.kind for p in self.paths}


@dataclass(frozen=True)
class RuleConfig:
    """Which rules run, plus the window and chain-length limits.

    ``max_gap`` bounds ``|i - j|`` for consecutive paths and ``max_bridges``
    bounds the number of bridge entities in a multi-hop chain.
    """

    consecutive: bool = True
    multihop: bool = True
    default_fallback: bool = True
    max_gap: int = 2
    max_bridges: int = 2

    def __post_init__(self):
        if self.max_gap < 0:
            raise ValueError("max_gap must be >= 0")
        if self.max_bridges not in (1, 2):
            raise ValueError("max_bridges must be 1 or 2")
        if self.max_gap > MAX_PATH_SENTENCES - 1:
            # windows wider than three sentences would break the Path invariant
            raise ValueError(f"max_gap must be <= {MAX_PATH_SENTENCES - 1}")

    @classmethod
    def from_code(cls, code: str, **kwargs) -> "RuleConfig":
        """Parse a short rule code such as ``c``, ``m``, ``cm``, ``cmd`` or ``d``."""
        code = code.lower().replace("+", "")
        if not code or set(code) - set("cmd"):
            raise ValueError(f"unknown rule code {code!r}")
        return cls(consecutive="c" in code, multihop="m" in code,
                   default_fallback="d" in code, **kwargs)

    @property
    def label(self) -> str:
        parts = [name for flag, name in ((self.consecutive, "C"), (self.multihop, "M"),
                                         (self.default_fallback, "D")) if flag]
        return "+".join(parts) or "none"

    @property
    def code(self) -> str:
        return self.label.replace("+", "").lower()


TABLE_CONFIGS = tuple(RuleConfig.from_code(c) for c in ("c", "m", "cm", "cmd"))


def _check_pair(doc: Document, head: int, tail: int) -> None:
    n = doc.n_entities
    if not (0 <= head < n and 0 <= tail < n):
        raise ValueError(f"entity index out of range for doc {doc.doc_id!r}: ({head}, {tail})")
    if head == tail:
        raise ValueError(f"head and tail must differ (got {head})")


def _canonical(paths: Iterable[Path]) -> list[Path]:
    return sorted(paths, key=lambda p: p.sort_key)


def consecutive_paths(doc: Document, head: int, tail: int, max_gap: int = 2) -> list[Path]:
    _check_pair(doc, head, tail)
    occ = doc.occurrences
    windows = set()
    for i in occ.sentences_of(head):
        for j in occ.sentences_of(tail):
            if abs(i - j) <= max_gap:
                lo, hi = min(i, j), max(i, j)
                windows.add(tuple(range(lo, hi + 1)))
    return _canonical(Path(PathKind.CONSECUTIVE, w) for w in windows)


def _chains(doc: Document, head: int, tail: int, max_bridges: int):
    """Yield (bridges, hop-sentence tuple) in (k, bridges, hops) order."""
    occ = doc.occurrences

    def neighbours(e: int) -> set[int]:
        return {x for s in occ.sentences_of(e) for x in occ.entities_in(s)}

    def shared(a: int, b: int) -> list[int]:
        return sorted(set(occ.sentences_of(a)) & set(occ.sentences_of(b)))

    # chains through entities that never co-occur with their neighbours yield no hops
    first = sorted(neighbours(head) - {head, tail})
    near_tail = neighbours(tail)
    for k in range(1, max_bridges + 1):
        for b1 in first:
            if k == 1:
                candidates = [()] if b1 in near_tail else []
            else:
                candidates = [(b2,) for b2 in sorted(neighbours(b1) & near_tail)
                              if b2 not in (head, tail, b1)]
            for rest in candidates:
                route = (head, b1, *rest, tail)
                yield from (((b1, *rest), hops) for hops in
                            itertools.product(*(shared(a, b) for a, b in zip(route, route[1:]))))


def multihop_paths(doc: Document, head: int, tail: int, max_bridges: int = 2) -> list[Path]:
    _check_pair(doc, head, tail)
    if max_bridges not in (1, 2):
        raise ValueError("max_bridges must be 1 or 2")
    found: dict[tuple[int, ...], Path] = {}
    for bridges, hops in _chains(doc, head, tail, max_bridges):
        key = tuple(sorted(set(hops)))
        if key not in found:
            found[key] = Path(PathKind.MULTIHOP, key, bridges)
    return _canonical(found.values())


def default_paths(doc: Document, head: int, tail: int) -> list[Path]:
    _check_pair(doc, head, tail)
    occ = doc.occurrences
    pairs = {tuple(sorted((i, j)))
             for i in occ.sentences_of(head) for j in occ.sentences_of(tail) if i != j}
    return _canonical(Path(PathKind.DEFAULT, p) for p in pairs)


def extract_paths(doc: Document, head: int, tail: int,
                  config: RuleConfig = RuleConfig()) -> PathSet:
    """Run the enabled rules for one ordered entity pair."""
    _check_pair(doc, head, tail)
    paths: list[Path] = []
    if config.consecutive:
        paths.extend(consecutive_paths(doc, head, tail, config.max_gap))
    if config.multihop:
        taken = {p.sentences for p in paths}
        paths.extend(p for p in multihop_paths(doc, head, tail, config.max_bridges)
                     if p.sentences not in taken)
    if not paths and config.default_fallback:
        paths = default_paths(doc, head, tail)
    return PathSet(head, tail, tuple(_canonical(paths)))


def path_record(doc: Document, pathset: PathSet) -> dict:
    """One line of the path dump: ``{doc_id, h, t, paths: [...]}``."""
    return {"doc_id": doc.doc_id, "h": pathset.head, "t": pathset.tail,
            "paths": [p.to_dict() for p in pathset.paths]}


def pathset_from_record(record: dict) -> PathSet:
    return PathSet(record["h"], record["t"],
                   tuple(Path.from_dict(p) for p in record["paths"]))


def dump_path_records(records: Iterable[dict]) -> bytes:
    return "".join(json.dumps(r, ensure_ascii=False) + "\n" for r in records).encode("utf-8")


def load_path_records(data: bytes | str) -> list[dict]:
    if isinstance(data, bytes):
        data = data.decode("utf-8")
    return [json.loads(line) for line in data.splitlines() if line.strip()]

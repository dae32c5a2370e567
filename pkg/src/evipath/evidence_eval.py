"""Corpus statistics: evidence-size histogram and path coverage of gold evidence.

Coverage counts an instance as covered when its gold evidence is a subset
of the union of the sentences of its extracted paths. Instances with empty
gold evidence are left out of every coverage statistic. The per-instance
averages ``#Sent`` and ``#Path`` are taken over instances that received at
least one path.

All sums are integer counts, so aggregation is exact and independent of the
order in which per-document partial results are combined.
"""

from __future__ import annotations

import csv
import io
import json
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from typing import Iterable, Sequence

from .corpus import Document
from .pathfinder import PathSet, RuleConfig, extract_paths

BUCKET_LABELS = ("0", "1", "2", "3", ">=4")


@dataclass(frozen=True)
class EvidenceSizeHistogram:
    counts: tuple[int, ...]
    n_documents: int
    total_sentences: int

    @property
    def n_instances(self) -> int:
        return sum(self.counts)

    @property
    def proportions(self) -> tuple[float, ...]:
        n = self.n_instances
        if n == 0:
            return tuple(0.0 for _ in self.counts)
        return tuple(c / n for c in self.counts)

    @property
    def avg_doc_sentences(self) -> float:
        return self.total_sentences / self.n_documents

    def to_dict(self) -> dict:
        return {
            "buckets": list(BUCKET_LABELS),
            "counts": list(self.counts),
            "proportions": list(self.proportions),
            "n_instances": self.n_instances,
            "n_documents": self.n_documents,
            "total_sentences": self.total_sentences,
            "avg_doc_sentences": self.avg_doc_sentences,
        }


def evidence_size_distribution(corpus: Sequence[Document]) -> EvidenceSizeHistogram:
    if not corpus:
        raise ValueError("corpus is empty")
    counts = [0] * len(BUCKET_LABELS)
    for doc in corpus:
        for inst in doc.instances:
            counts[min(len(inst.evidence), len(BUCKET_LABELS) - 1)] += 1
    return EvidenceSizeHistogram(
        counts=tuple(counts),
        n_documents=len(corpus),
        total_sentences=sum(d.n_sentences for d in corpus),
    )


@dataclass(frozen=True)
class InstanceCoverage:
    doc_id: str
    head: int
    tail: int
    relation: str
    evidence: tuple[int, ...]
    union: tuple[int, ...]
    n_paths: int

    @property
    def covered(self) -> bool:
        return set(self.evidence) <= set(self.union)

    def to_dict(self) -> dict:
        d = asdict(self)
        d["evidence"] = list(self.evidence)
        d["union"] = list(self.union)
        d["covered"] = self.covered
        return d


@dataclass(frozen=True)
class CoverageReport:
    config_label: str
    n_instances: int
    n_covered: int
    n_instances_with_paths: int
    total_union_sentences: int
    total_paths: int
    per_instance: tuple[InstanceCoverage, ...] = field(default=(), compare=False)

    @property
    def coverage(self) -> float:
        return self.n_covered / self.n_instances if self.n_instances else 0.0

    @property
    def avg_union_sentences(self) -> float:
        n = self.n_instances_with_paths
        return self.total_union_sentences / n if n else 0.0

    @property
    def avg_path_count(self) -> float:
        n = self.n_instances_with_paths
        return self.total_paths / n if n else 0.0

    def covered_keys(self) -> set[tuple[str, int, int, str]]:
        return {(r.doc_id, r.head, r.tail, r.relation) for r in self.per_instance if r.covered}

    def to_dict(self) -> dict:
        d = {
            "config": self.config_label,
            "coverage": self.coverage,
            "avg_union_sentences": self.avg_union_sentences,
            "avg_path_count": self.avg_path_count,
            "n_instances": self.n_instances,
            "n_covered": self.n_covered,
            "n_instances_with_paths": self.n_instances_with_paths,
            "total_union_sentences": self.total_union_sentences,
            "total_paths": self.total_paths,
        }
        if self.per_instance:
            d["instances"] = [r.to_dict() for r in self.per_instance]
        return d

    @classmethod
    def from_dict(cls, d: dict) -> "CoverageReport":
        rows = tuple(
            InstanceCoverage(r["doc_id"], r["head"], r["tail"], r["relation"],
                             tuple(r["evidence"]), tuple(r["union"]), r["n_paths"])
            for r in d.get("instances", ())
        )
        return cls(d["config"], d["n_instances"], d["n_covered"],
                   d["n_instances_with_paths"], d["total_union_sentences"],
                   d["total_paths"], rows)


def _merge(label: str, parts: Iterable[CoverageReport]) -> CoverageReport:
    parts = list(parts)
    return CoverageReport(
        config_label=label,
        n_instances=sum(p.n_instances for p in parts),
        n_covered=sum(p.n_covered for p in parts),
        n_instances_with_paths=sum(p.n_instances_with_paths for p in parts),
        total_union_sentences=sum(p.total_union_sentences for p in parts),
        total_paths=sum(p.total_paths for p in parts),
        per_instance=tuple(r for p in parts for r in p.per_instance),
    )


def document_coverage(doc: Document, config: RuleConfig,
                      keep_instances: bool = True) -> CoverageReport:
    """Coverage statistics for the evidence-bearing instances of one document."""
    cache: dict[tuple[int, int], PathSet] = {}
    rows = []
    for inst in doc.instances:
        if not inst.evidence:
            continue
        key = (inst.head, inst.tail)
        if key not in cache:
            cache[key] = extract_paths(doc, inst.head, inst.tail, config)
        ps = cache[key]
        rows.append(InstanceCoverage(doc.doc_id, inst.head, inst.tail, inst.relation_label,
                                     tuple(sorted(inst.evidence)), tuple(sorted(ps.union)),
                                     len(ps)))
    with_paths = [r for r in rows if r.n_paths]
    return CoverageReport(
        config_label=config.label,
        n_instances=len(rows),
        n_covered=sum(r.covered for r in rows),
        n_instances_with_paths=len(with_paths),
        total_union_sentences=sum(len(r.union) for r in with_paths),
        total_paths=sum(r.n_paths for r in with_paths),
        per_instance=tuple(rows) if keep_instances else (),
    )


def _coverage_chunk(args):
    docs, config, keep = args
    return [document_coverage(d, config, keep) for d in docs]


def coverage_report(corpus: Sequence[Document], config: RuleConfig = RuleConfig(),
                    *, keep_instances: bool = True, jobs: int = 1) -> CoverageReport:
    """Coverage / #Sent / #Path of the rule configuration over a corpus.

    With ``jobs > 1`` documents are processed in worker processes; per-instance
    rows keep corpus order regardless.
    """
    if jobs > 1 and len(corpus) > 1:
        size = math.ceil(len(corpus) / (jobs * 4))
        chunks = [(list(corpus[i:i + size]), config, keep_instances)
                  for i in range(0, len(corpus), size)]
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            parts = [r for chunk in pool.map(_coverage_chunk, chunks) for r in chunk]
    else:
        parts = [document_coverage(d, config, keep_instances) for d in corpus]
    return _merge(config.label, parts)


REPORT_FORMATS = ("json", "csv", "md")


def _pct(x: float) -> str:
    return f"{100 * x:.1f}%"


def emit_report(report: CoverageReport | Sequence[CoverageReport], fmt: str = "json") -> bytes:
    """Serialize one report, or several as a table (one row per configuration)."""
    reports = [report] if isinstance(report, CoverageReport) else list(report)
    if fmt == "json":
        payload = reports[0].to_dict() if isinstance(report, CoverageReport) \
            else [r.to_dict() for r in reports]
        return (json.dumps(payload, indent=2, ensure_ascii=False) + "\n").encode("utf-8")
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["config", "coverage", "avg_sent", "avg_path",
                    "n_instances", "n_covered", "n_instances_with_paths"])
        for r in reports:
            w.writerow([r.config_label, f"{100 * r.coverage:.1f}", f"{r.avg_union_sentences:.2f}",
                        f"{r.avg_path_count:.2f}", r.n_instances, r.n_covered,
                        r.n_instances_with_paths])
        return buf.getvalue().encode("utf-8")
    if fmt in ("md", "markdown"):
        lines = ["| | Coverage | #Sent | #Path |", "|---|---|---|---|"]
        lines += [f"| {r.config_label} | {_pct(r.coverage)} | {r.avg_union_sentences:.2f} "
                  f"| {r.avg_path_count:.2f} |" for r in reports]
        return ("\n".join(lines) + "\n").encode("utf-8")
    raise ValueError(f"unknown report format {fmt!r}; expected one of {REPORT_FORMATS}")


def parse_report(data: bytes | str) -> CoverageReport | list[CoverageReport]:
    obj = json.loads(data)
    if isinstance(obj, list):
        return [CoverageReport.from_dict(o) for o in obj]
    return CoverageReport.from_dict(obj)


def emit_histogram(hist: EvidenceSizeHistogram, fmt: str = "json") -> bytes:
    if fmt == "json":
        return (json.dumps(hist.to_dict(), indent=2) + "\n").encode("utf-8")
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow([*BUCKET_LABELS, "avg_doc_sentences", "n_instances", "n_documents"])
        w.writerow([*(f"{100 * p:.1f}" for p in hist.proportions),
                    f"{hist.avg_doc_sentences:.1f}", hist.n_instances, hist.n_documents])
        return buf.getvalue().encode("utf-8")
    if fmt in ("md", "markdown"):
        head = "| | " + " | ".join(BUCKET_LABELS) + " | #Sent |"
        sep = "|---" * (len(BUCKET_LABELS) + 2) + "|"
        row = ("| corpus | " + " | ".join(_pct(p) for p in hist.proportions)
               + f" | {hist.avg_doc_sentences:.1f} |")
        return "\n".join([head, sep, row, ""]).encode("utf-8")
    raise ValueError(f"unknown histogram format {fmt!r}")

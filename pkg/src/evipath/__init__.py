"""Heuristic evidence paths for document-level relation extraction."""

from importlib import resources

from .corpus import (CorpusError, Document, Entity, Mention, OccurrenceIndex, ParseError,
                     RelationInstance, SchemaError, ValidationError, dump_docred, load_docred,
                     occurrence_index, parse_docred)
from .evidence_eval import (CoverageReport, EvidenceSizeHistogram, coverage_report, emit_report,
                            evidence_size_distribution)
from .pathfinder import (Path, PathKind, PathSet, RuleConfig, consecutive_paths, default_paths,
                         extract_paths, multihop_paths)

__version__ = "0.1.0"


def figure1_fixture() -> Document:
    """The six-sentence Espoo Cathedral example document."""
    data = resources.files(__package__).joinpath("data/fig1_fixture.json").read_bytes()
    return parse_docred(data)[0]


__all__ = [
    "CorpusError", "CoverageReport", "Document", "Entity", "EvidenceSizeHistogram", "Mention",
    "OccurrenceIndex", "ParseError", "Path", "PathKind", "PathSet", "RelationInstance",
    "RuleConfig", "SchemaError", "ValidationError", "consecutive_paths", "coverage_report",
    "default_paths", "dump_docred", "emit_report", "evidence_size_distribution",
    "extract_paths", "figure1_fixture", "load_docred", "multihop_paths", "occurrence_index",
    "parse_docred",
]

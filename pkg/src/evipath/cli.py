"""Command-line entry point.

Exit codes: 0 success, 1 corpus validation failure, 2 usage error
(including missing input files).
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path as FsPath

from .corpus import CorpusError, Document, load_docred
from .evidence_eval import (REPORT_FORMATS, coverage_report, emit_histogram, emit_report,
                            evidence_size_distribution)
from .pathfinder import RuleConfig, dump_path_records, extract_paths, path_record
from .pathrel.evaluation import (dump_predictions, evaluate_f1, gold_triples, load_predictions,
                                 pair_locality)
from .pathrel.scoring import fit_threshold, load_weights, score_corpus
from .pathrel.segments import dump_segments, iter_segments
from .pathrel.vectors import load_vectors

RULE_CODES = ("c", "m", "cm", "cmd")


class UsageError(Exception):
    pass


def _default_jobs() -> int:
    env = os.environ.get("EVIPATH_JOBS")
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            raise UsageError(f"EVIPATH_JOBS must be an integer, got {env!r}")
    return os.cpu_count() or 1


def _existing(path: str | None, flag: str) -> FsPath:
    if path is None:
        raise UsageError(f"{flag} is required")
    p = FsPath(path)
    if not p.is_file():
        raise UsageError(f"{flag}: file not found: {path}")
    return p


def _corpus(args) -> list[Document]:
    return load_docred(_existing(args.input, "--input"))


def _rule_config(code: str, args) -> RuleConfig:
    try:
        return RuleConfig.from_code(code, max_gap=args.max_gap, max_bridges=args.max_bridges)
    except ValueError as exc:
        raise UsageError(f"--rules: {exc}")


def _write(data: bytes, output: str | None) -> None:
    if output:
        FsPath(output).write_bytes(data)
    else:
        sys.stdout.buffer.write(data)
        sys.stdout.flush()


def cmd_validate(args) -> int:
    docs = _corpus(args)
    n_ent = sum(d.n_entities for d in docs)
    n_inst = sum(len(d.instances) for d in docs)
    print(f"ok: {len(docs)} documents, {n_ent} entities, {n_inst} relation instances")
    return 0


def cmd_stats(args) -> int:
    hist = evidence_size_distribution(_corpus(args))
    data = emit_histogram(hist, args.format)
    if args.out_dir:
        out = FsPath(args.out_dir)
        out.mkdir(parents=True, exist_ok=True)
        (out / f"evidence_hist.{args.format}").write_bytes(data)
    else:
        _write(data, None)
    return 0


def _select_doc(docs: list[Document], key: str) -> Document:
    for d in docs:
        if d.doc_id == key:
            return d
    try:
        return docs[int(key)]
    except (ValueError, IndexError):
        raise UsageError(f"--doc: no document {key!r}")


def cmd_paths(args) -> int:
    docs = _corpus(args)
    config = _rule_config(args.rules, args)
    if (args.head is None) != (args.tail is None):
        raise UsageError("--head and --tail must be given together")
    selected = [_select_doc(docs, args.doc)] if args.doc is not None else docs
    if args.head is not None:
        if args.doc is None:
            raise UsageError("--head/--tail require --doc")
        doc = selected[0]
        try:
            ps = extract_paths(doc, args.head, args.tail, config)
        except ValueError as exc:
            raise UsageError(f"--head/--tail: {exc}")
        _write((json.dumps(path_record(doc, ps), ensure_ascii=False) + "\n").encode("utf-8"),
               args.output)
        return 0
    records = []
    for doc in selected:
        pairs = (sorted({(i.head, i.tail) for i in doc.instances}) if args.labelled_only
                 else [(h, t) for h in range(doc.n_entities)
                       for t in range(doc.n_entities) if h != t])
        records.extend(path_record(doc, extract_paths(doc, h, t, config)) for h, t in pairs)
    _write(dump_path_records(records), args.output)
    return 0


def cmd_coverage(args) -> int:
    docs = _corpus(args)
    codes = RULE_CODES if args.rules == "all" else args.rules.split(",")
    reports = [coverage_report(docs, _rule_config(c, args), keep_instances=args.detail,
                               jobs=args.jobs) for c in codes]
    if args.out_dir:
        out = FsPath(args.out_dir)
        out.mkdir(parents=True, exist_ok=True)
        for code, rep in zip(codes, reports):
            (out / f"coverage_{code}.{args.format}").write_bytes(emit_report(rep, args.format))
    else:
        _write(emit_report(reports[0] if len(reports) == 1 and args.format == "json"
                           else reports, args.format), None)
    return 0


def cmd_export_segments(args) -> int:
    docs = _corpus(args)
    config = _rule_config(args.rules, args)
    segs = [s for d in docs for s in iter_segments(d, config, all_pairs=args.all_pairs)]
    _write(dump_segments(segs), args.output)
    return 0


def cmd_score(args) -> int:
    docs = _corpus(args)
    table = load_vectors(_existing(args.vectors, "--vectors"))
    weights = load_weights(_existing(args.weights, "--weights"))
    if weights.input_dim != 4 * table.dim:
        raise UsageError(f"--weights: input_dim {weights.input_dim} != 4 x vector dim {table.dim}")
    if not 0.0 <= args.threshold <= 1.0:
        raise UsageError("--threshold must lie in [0, 1]")
    rows = score_corpus(docs, table, weights, _rule_config(args.rules, args), args.threshold)
    _write(dump_predictions(rows), args.output)
    return 0


def cmd_eval(args) -> int:
    rows = load_predictions(_existing(args.pred, "--pred").read_bytes())
    docs = load_docred(_existing(args.gold, "--gold"))
    gold = gold_triples(docs)
    result = {}
    if args.fit_threshold:
        scored = [((r["doc_id"], r["h"], r["t"], r["r"]), r["score"]) for r in rows]
        thr, _ = fit_threshold(scored, gold)
        result["threshold"] = thr
    else:
        thr = args.threshold
    preds = {(r["doc_id"], r["h"], r["t"], r["r"]) for r in rows
             if thr is None or r.get("score", 1.0) > thr}
    locality = pair_locality(docs)
    unknown = [p for p in preds if p[:3] not in locality]
    if unknown:
        raise UsageError(f"--pred: {len(unknown)} predictions refer to pairs absent from --gold")
    result.update(evaluate_f1(preds, gold, locality).to_dict())
    _write((json.dumps(result, indent=2, sort_keys=True) + "\n").encode("utf-8"), args.output)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="evipath", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def corpus_cmd(name, help_):
        p = sub.add_parser(name, help=help_)
        p.add_argument("--input", help="DocRED-format JSON file")
        return p

    def rule_flags(p, default="cmd"):
        p.add_argument("--rules", default=default,
                       help="rule code: c, m, cm, cmd (coverage also accepts a comma list or 'all')")
        p.add_argument("--max-gap", type=int, default=2)
        p.add_argument("--max-bridges", type=int, default=2)

    p = corpus_cmd("validate", "check a corpus file")
    p.set_defaults(func=cmd_validate)

    p = corpus_cmd("stats", "evidence-size histogram")
    p.add_argument("--format", choices=REPORT_FORMATS, default="json")
    p.add_argument("--out-dir")
    p.set_defaults(func=cmd_stats)

    p = corpus_cmd("paths", "dump extracted paths")
    rule_flags(p)
    p.add_argument("--doc", help="document index or doc_id")
    p.add_argument("--head", type=int)
    p.add_argument("--tail", type=int)
    p.add_argument("--labelled-only", action="store_true",
                   help="only pairs carrying gold labels")
    p.add_argument("--output")
    p.set_defaults(func=cmd_paths)

    p = corpus_cmd("coverage", "coverage of gold evidence by extracted paths")
    rule_flags(p)
    p.add_argument("--format", choices=REPORT_FORMATS, default="md")
    p.add_argument("--out-dir")
    p.add_argument("--detail", action="store_true", help="keep per-instance rows (json)")
    p.add_argument("--jobs", type=int)
    p.set_defaults(func=cmd_coverage)

    p = corpus_cmd("export-segments", "write path segments as JSONL")
    rule_flags(p)
    p.add_argument("--all-pairs", action="store_true")
    p.add_argument("--output")
    p.set_defaults(func=cmd_export_segments)

    p = corpus_cmd("score", "score entity pairs with given vectors and MLP weights")
    rule_flags(p)
    p.add_argument("--vectors")
    p.add_argument("--weights")
    p.add_argument("--threshold", type=float, default=0.5)
    p.add_argument("--output")
    p.set_defaults(func=cmd_score)

    p = sub.add_parser("eval", help="micro F1 of predictions against gold labels")
    p.add_argument("--pred")
    p.add_argument("--gold")
    p.add_argument("--threshold", type=float)
    p.add_argument("--fit-threshold", action="store_true",
                   help="choose the global threshold maximising F1 on --gold")
    p.add_argument("--output")
    p.set_defaults(func=cmd_eval)
    return parser


def run(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        if getattr(args, "jobs", 1) is None:
            args.jobs = _default_jobs()
        if getattr(args, "jobs", 1) < 1:
            raise UsageError("--jobs must be >= 1")
        return args.func(args)
    except UsageError as exc:
        print(f"evipath {args.command}: error: {exc}", file=sys.stderr)
        return 2
    except CorpusError as exc:
        print(f"evipath {args.command}: invalid corpus: {exc}", file=sys.stderr)
        return 1


def main() -> None:
    sys.exit(run())

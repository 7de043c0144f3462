"""Command-line entry point: index, generate, baseline, evaluate, serve, filter."""

from __future__ import annotations

import argparse
import json
import logging
import os
import re
import sys
from pathlib import Path

from . import __version__
from .annotation import AnnotationError, AnnotationStore, agreement_filter, import_annotations
from .corpus import CorpusFormatError, NegationLexicon, load_negation_lexicon, parse_conllu
from .evaluator import EvalRow, EvaluationError, accuracy, negation_breakdown, read_gold, render_report
from .extraction import (
    extract_clause_bank,
    extract_subject_verb,
    extract_verb_object,
    read_clause_bank,
    read_np_index,
    write_clause_bank,
    write_np_index,
)
from .generator import (
    DEFAULT_VERBS,
    VERB_PAST_FORMS,
    GenerationConfig,
    generate_candidates,
    read_pairs,
    sample_set,
    strip_negation,
    write_pairs,
)
from .heuristics import PredictionFile, run_baseline
from .jsonlio import write_jsonl

log = logging.getLogger(__name__)

SUBJECTS_FILE = "subjects.jsonl"
OBJECTS_FILE = "objects.jsonl"
CLAUSES_FILE = "clauses.jsonl"

DEFAULT_SEED = 0
DEFAULT_SAMPLE_SIZE = 200


def _resolve_verb_token(token: str) -> tuple[str, str]:
    if ":" in token:
        lemma, form = token.split(":", 1)
        return lemma.strip().lower(), form.strip().lower()
    token = token.lower()
    if token in VERB_PAST_FORMS:
        return token, VERB_PAST_FORMS[token]
    reverse = {form: lemma for lemma, form in VERB_PAST_FORMS.items()}
    if token in reverse:
        return reverse[token], token
    log.warning("verb %r not in the built-in past-form table; using it as both lemma and form", token)
    return token, token


def _resolve_verbs(spec: str) -> list[tuple[str, str]]:
    """Accept ``default``, a verb file (one ``lemma past`` per line), or an inline list."""
    if spec == "default":
        return list(DEFAULT_VERBS)
    if os.path.exists(spec):
        verbs = []
        with open(spec, encoding="utf-8") as f:
            for line in f:
                line = line.strip()
                if not line or line.startswith("#"):
                    continue
                cols = re.split(r"[,\s]+", line)
                if len(cols) >= 2:
                    verbs.append((cols[0].lower(), cols[1].lower()))
                else:
                    verbs.append(_resolve_verb_token(cols[0]))
        if not verbs:
            raise ValueError(f"verb file {spec!r} contains no verbs")
        return verbs
    return [_resolve_verb_token(tok) for tok in re.split(r"[,\s]+", spec) if tok]


def _load_lexicon(path: str | None) -> NegationLexicon:
    return load_negation_lexicon(path) if path else NegationLexicon()


def _resolved_config(ns: argparse.Namespace) -> dict:
    skip = {"func", "config"}
    return {k: v for k, v in sorted(vars(ns).items()) if k not in skip}


def _meta(ns: argparse.Namespace) -> dict:
    return {
        "tool": "npschallenge",
        "version": __version__,
        "command": ns.command,
        "config": _resolved_config(ns),
    }


def _read_corpus(path: str):
    with open(path, encoding="utf-8") as f:
        return parse_conllu(f)


def cmd_index(ns: argparse.Namespace) -> int:
    corpus = _read_corpus(ns.corpus)
    sv = extract_subject_verb(corpus)
    vo = extract_verb_object(corpus)
    bank = extract_clause_bank(corpus)
    os.makedirs(ns.out_dir, exist_ok=True)
    meta = _meta(ns)
    write_np_index(sv, os.path.join(ns.out_dir, SUBJECTS_FILE), meta=meta)
    write_np_index(vo, os.path.join(ns.out_dir, OBJECTS_FILE), meta=meta)
    write_clause_bank(bank, os.path.join(ns.out_dir, CLAUSES_FILE), meta=meta)
    log.info(
        "indexed %d sentences: %d subject verbs, %d object verbs, %d clauses",
        len(corpus),
        len(sv),
        len(vo),
        len(bank),
    )
    return 0


def cmd_generate(ns: argparse.Namespace) -> int:
    lexicon = _load_lexicon(ns.negation_lexicon)
    cfg = GenerationConfig(
        verbs=_resolve_verbs(ns.verbs),
        sample_size=ns.n,
        seed=ns.seed,
        negation_lexicon=lexicon,
        match_mode=ns.match,
    )
    if ns.indexes:
        sv = read_np_index(os.path.join(ns.indexes, SUBJECTS_FILE))
        vo = read_np_index(os.path.join(ns.indexes, OBJECTS_FILE))
        bank = read_clause_bank(os.path.join(ns.indexes, CLAUSES_FILE))
    else:
        corpus = _read_corpus(ns.corpus)
        sv = extract_subject_verb(corpus)
        vo = extract_verb_object(corpus)
        bank = extract_clause_bank(corpus)
    candidates = generate_candidates(sv, vo, bank, cfg)
    sampled = sample_set(candidates, cfg.sample_size, cfg.seed)
    meta = _meta(ns)
    write_pairs(sampled, ns.out, meta=meta)
    log.info("generated %d candidates, sampled %d -> %s", len(candidates), len(sampled), ns.out)
    if ns.out_noneg:
        noneg = [strip_negation(p, lexicon) for p in sampled]
        write_pairs(noneg, ns.out_noneg, meta=meta)
        log.info("wrote negation-stripped variant -> %s", ns.out_noneg)
    return 0


def cmd_baseline(ns: argparse.Namespace) -> int:
    pairs = read_pairs(ns.pairs)
    lexicon = _load_lexicon(ns.negation_lexicon)
    predictions = run_baseline(pairs, ns.classifier, threshold=ns.threshold, lexicon=lexicon)
    predictions.write(ns.out, meta=_meta(ns))
    log.info("wrote %d %s predictions -> %s", len(predictions.predictions), ns.classifier, ns.out)
    return 0


def _format_fraction(value) -> str:
    return "n/a" if value is None else f"{float(value):.4f}"


def cmd_evaluate(ns: argparse.Namespace) -> int:
    gold = read_gold(ns.gold)
    set_name = ns.set_name or Path(ns.gold).stem
    rows = []
    breakdowns = []
    for pred_path in ns.pred:
        pf = PredictionFile.read(pred_path)
        name = pf.source or Path(pred_path).stem
        acc = accuracy(pf, gold, scheme=ns.scheme)
        rows.append(EvalRow(system_name=name, per_set={set_name: acc}, support={set_name: len(gold)}))
        if ns.breakdown:
            breakdowns.append((name, negation_breakdown(pf, gold, scheme=ns.scheme)))
    report = render_report(rows, format=ns.format, schemes={set_name: ns.scheme})
    if ns.breakdown:
        lines = []
        for name, bd in breakdowns:
            lines.append(
                f"Negation breakdown {name}: "
                f"with_negation={_format_fraction(bd.acc_with_negation)} (n={bd.n_with}), "
                f"without_negation={_format_fraction(bd.acc_without_negation)} (n={bd.n_without})"
            )
        report = report + "\n" + "\n".join(lines) + "\n"
    if ns.out:
        with open(ns.out, "w", encoding="utf-8") as f:
            f.write(report)
    else:
        sys.stdout.write(report)
    return 0


def cmd_serve(ns: argparse.Namespace) -> int:
    import uvicorn

    from .server import create_app

    pairs = read_pairs(ns.pairs)
    store = AnnotationStore(ns.store, pairs)
    app = create_app(store, static_dir=ns.static)
    log.info("serving %d pairs on %s:%d (journal: %s)", len(pairs), ns.host, ns.port, ns.store)
    uvicorn.run(app, host=ns.host, port=ns.port, log_level="warning")
    return 0


def cmd_filter(ns: argparse.Namespace) -> int:
    pairs = read_pairs(ns.pairs)
    store = AnnotationStore(ns.store, pairs)
    if ns.import_csv:
        records, errors = import_annotations(ns.import_csv)
        for err in errors:
            log.warning("import: %s", err)
        for rec in records:
            store.record(rec)
        log.info("imported %d annotation rows (%d rejected)", len(records), len(errors))
    kept, decisions = agreement_filter(store, pairs)
    meta = _meta(ns)
    write_pairs(kept, ns.out, meta=meta)
    write_jsonl(ns.decisions, [d.to_dict() for d in decisions], meta=meta)
    incomplete = sum(1 for d in decisions if d.incomplete)
    log.info(
        "kept %d of %d pairs (%d with fewer than 3 annotations)", len(kept), len(pairs), incomplete
    )
    return 0


def build_parser() -> tuple[argparse.ArgumentParser, dict[str, argparse.ArgumentParser]]:
    parser = argparse.ArgumentParser(
        prog="npschallenge",
        description="Generate, annotate, and score NP/S subsequence challenge sets for NLI.",
    )
    parser.add_argument("--config", help="JSON file of default option values (flags win)")
    parser.add_argument("--verbose", action="store_true", help="debug-level logging")
    sub = parser.add_subparsers(dest="command", required=True)
    registry: dict[str, argparse.ArgumentParser] = {}

    p = sub.add_parser("index", help="mine a CoNLL-U corpus into template indexes")
    p.add_argument("--corpus", required=True, help="CoNLL-U input file")
    p.add_argument("--out-dir", required=True, help="directory for subjects/objects/clauses JSONL")
    p.set_defaults(func=cmd_index)
    registry["index"] = p

    p = sub.add_parser("generate", help="instantiate the NP1-V1-S1 template into challenge pairs")
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--indexes", help="directory produced by the index subcommand")
    src.add_argument("--corpus", help="CoNLL-U input (indexes are built in memory)")
    p.add_argument("--verbs", default="default", help="'default', a verb file, or an inline list")
    p.add_argument("--n", type=int, default=DEFAULT_SAMPLE_SIZE, help="sample size (default 200)")
    p.add_argument("--seed", type=int, default=DEFAULT_SEED, help="sampling seed (default 0)")
    p.add_argument("--match", choices=["surface", "head"], default="surface",
                   help="how S1 subjects are matched against attested objects")
    p.add_argument("--negation-lexicon", help="negation word list file (one word per line)")
    p.add_argument("--out", required=True, help="output JSONL of challenge pairs")
    p.add_argument("--out-noneg", help="also write the negation-stripped variant here")
    p.set_defaults(func=cmd_generate)
    registry["generate"] = p

    p = sub.add_parser("baseline", help="run a heuristic classifier over a pair file")
    p.add_argument("--pairs", required=True, help="challenge-pair JSONL")
    p.add_argument("--classifier", required=True, choices=["subsequence", "negation", "overlap"])
    p.add_argument("--threshold", type=float, default=1.0, help="overlap threshold (default 1.0)")
    p.add_argument("--negation-lexicon", help="negation word list file")
    p.add_argument("--out", required=True, help="output predictions JSONL")
    p.set_defaults(func=cmd_baseline)
    registry["baseline"] = p

    p = sub.add_parser("evaluate", help="score prediction files against a gold set")
    p.add_argument("--gold", required=True, help="gold JSONL (challenge pairs or id/label records)")
    p.add_argument("--pred", action="append", required=True, help="prediction JSONL (repeatable)")
    p.add_argument("--scheme", choices=["binary", "three_way"], default="binary")
    p.add_argument("--format", choices=["markdown", "csv"], default="markdown")
    p.add_argument("--set-name", help="column name for this gold set (default: gold file stem)")
    p.add_argument("--breakdown", action="store_true", help="also report the negation breakdown")
    p.add_argument("--out", help="write the report here instead of stdout")
    p.set_defaults(func=cmd_evaluate)
    registry["evaluate"] = p

    p = sub.add_parser("serve", help="serve the annotation HTTP API and UI")
    p.add_argument("--pairs", required=True, help="challenge-pair JSONL to annotate")
    p.add_argument("--store", required=True, help="annotation journal path (appended to)")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8787)
    p.add_argument("--static", help="directory with the built UI bundle")
    p.set_defaults(func=cmd_serve)
    registry["serve"] = p

    p = sub.add_parser("filter", help="apply the 2-of-3 agreement rule to annotations")
    p.add_argument("--pairs", required=True, help="challenge-pair JSONL")
    p.add_argument("--store", required=True, help="annotation journal path")
    p.add_argument("--import-csv", help="ingest an annotation CSV into the store first")
    p.add_argument("--out", required=True, help="output JSONL of kept pairs")
    p.add_argument("--decisions", required=True, help="output JSONL of per-pair decisions")
    p.set_defaults(func=cmd_filter)
    registry["filter"] = p

    return parser, registry


def _peek_config(argv: list[str]) -> dict:
    for i, arg in enumerate(argv):
        if arg == "--config" and i + 1 < len(argv):
            path = argv[i + 1]
            break
        if arg.startswith("--config="):
            path = arg.split("=", 1)[1]
            break
    else:
        return {}
    with open(path, encoding="utf-8") as f:
        cfg = json.load(f)
    if not isinstance(cfg, dict):
        raise ValueError("config file must contain a JSON object")
    return cfg


def main(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:]) if argv is None else list(argv)
    parser, registry = build_parser()
    try:
        config = _peek_config(argv)
    except (OSError, ValueError, json.JSONDecodeError) as err:
        print(f"error: cannot read config file: {err}", file=sys.stderr)
        return 1
    if config:
        for sp in registry.values():
            sp.set_defaults(**config)
    try:
        ns = parser.parse_args(argv)
    except SystemExit as exit_err:
        return int(exit_err.code or 0)
    logging.basicConfig(
        level=logging.DEBUG if ns.verbose else logging.INFO,
        stream=sys.stderr,
        format="%(levelname)s %(name)s: %(message)s",
        force=True,
    )
    log.info("resolved config: %s", json.dumps(_resolved_config(ns), default=str, sort_keys=True))
    try:
        return ns.func(ns)
    except (CorpusFormatError, EvaluationError, AnnotationError, ValueError, OSError) as err:
        print(f"error: {err}", file=sys.stderr)
        return 1


def entry_point() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry_point()

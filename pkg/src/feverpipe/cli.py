"""Command-line entry points.

Subcommands mirror the pipeline stages (corpus, index, retrieve, dataset,
classify, aggregate, score) plus ``run`` for the whole thing from a single
JSON config.  Everything between stages is JSONL so individual stages can
be driven by external tools.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from . import datasets
from .aggregation import aggregate_all, read_submissions, write_submissions
from .analysis import TfidfIndex, score_query
from .claims import claims_by_id, load_claims
from .corpus import FileCorpus, ingest_dump
from .entailment import (
    LexicalClassifier,
    OracleClassifier,
    PremisePair,
    RemoteClassifier,
    read_classified,
    write_classified,
)
from .pipeline import PipelineConfig, PipelineStageError, run as run_pipeline
from .retrieval import (
    RetrievalConfig,
    SentenceMode,
    build_document_index,
    read_retrievals,
    resolve_candidates,
    retrieve_all,
    write_retrievals,
)
from .scoring import fever_score, retrieval_rate

logger = logging.getLogger(__name__)


def _print_json(payload) -> None:
    print(json.dumps(payload, indent=2, sort_keys=True))


def _add_retrieval_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--doc-k", type=int, default=5)
    parser.add_argument(
        "--sentence-mode",
        choices=[mode.value for mode in SentenceMode],
        default=SentenceMode.TOP_K.value,
    )
    parser.add_argument("--sentences-k", type=int, default=5)
    parser.add_argument("--max-lines", type=int, default=50)
    parser.add_argument("--titles-in-tfidf", action="store_true")
    parser.add_argument("--ne", action="store_true", help="exact title matching of capitalized phrases")
    parser.add_argument("--film", action="store_true", help="also fetch 'X (film)' pages")


def _retrieval_config(args: argparse.Namespace) -> RetrievalConfig:
    return RetrievalConfig(
        doc_k=args.doc_k,
        sentence_mode=SentenceMode(args.sentence_mode),
        sentences_k=args.sentences_k,
        max_lines=args.max_lines,
        use_title_in_tfidf=args.titles_in_tfidf,
        use_ne_retrieval=args.ne,
        use_film_heuristic=args.film,
    )


def cmd_corpus_ingest(args: argparse.Namespace) -> int:
    report = ingest_dump(args.dump, args.store)
    _print_json(report.to_dict())
    return 0


def cmd_corpus_stats(args: argparse.Namespace) -> int:
    store = FileCorpus(args.store)
    try:
        _print_json({"pages": store.page_count, "lines": store.line_count})
    finally:
        store.close()
    return 0


def cmd_index_build(args: argparse.Namespace) -> int:
    store = FileCorpus(args.store)
    try:
        index = build_document_index(store, args.titles_in_tfidf)
        index.save(args.out)
        _print_json({"documents": len(index), "out": str(args.out)})
    finally:
        store.close()
    return 0


def cmd_index_query(args: argparse.Namespace) -> int:
    index = TfidfIndex.load(args.index)
    results = score_query(index, args.query, args.k)
    _print_json([{"doc_id": doc_id, "score": score} for doc_id, score in results])
    return 0


def cmd_retrieve(args: argparse.Namespace) -> int:
    config = _retrieval_config(args)
    store = FileCorpus(args.store)
    try:
        claims = load_claims(args.claims)
        index = TfidfIndex.load(args.index)
        retrievals = retrieve_all(claims, config, index, store)
        write_retrievals(args.out, retrievals)
        logger.info("retrieved candidates for %d claims -> %s", len(retrievals), args.out)
    finally:
        store.close()
    return 0


def _resolve_retrieval_file(store, path) -> dict[int, list]:
    resolved = {}
    skipped = 0
    for claim_id, pairs in read_retrievals(path).items():
        candidates, missing = resolve_candidates(store, claim_id, pairs)
        resolved[claim_id] = candidates
        skipped += missing
    if skipped:
        logger.warning("skipped %d candidates referencing missing pages", skipped)
    return resolved


def cmd_dataset_build(args: argparse.Namespace) -> int:
    store = FileCorpus(args.store)
    try:
        claims = load_claims(args.claims)
        retrievals = _resolve_retrieval_file(store, args.retrievals)
        if args.variant == "one":
            examples = datasets.build_one(claims, retrievals, titled=args.titled)
        else:
            examples = datasets.build_five(
                claims,
                retrievals,
                oracle=(args.variant == "five-oracle"),
                titled=args.titled,
            )
        datasets.write_examples(args.out, examples)
        _print_json({"examples": len(examples), "out": str(args.out)})
    finally:
        store.close()
    return 0


def cmd_dataset_stats(args: argparse.Namespace) -> int:
    examples = datasets.read_examples(args.dataset)
    _print_json(datasets.class_stats(examples).to_dict())
    return 0


def cmd_classify(args: argparse.Namespace) -> int:
    store = FileCorpus(args.store)
    try:
        claims = claims_by_id(load_claims(args.claims))
        if args.kind == "lexical":
            classifier = LexicalClassifier()
        elif args.kind == "oracle":
            classifier = OracleClassifier(claims)
        else:
            classifier = RemoteClassifier(
                endpoint=args.endpoint or "",
                batch_size=args.batch_size,
                timeout=args.timeout,
                max_in_flight=args.max_in_flight,
            )
        retrievals = _resolve_retrieval_file(store, args.retrievals)
        candidates = [c for claim_id in sorted(retrievals) for c in retrievals[claim_id]]
        pairs = [
            PremisePair.from_candidate(c, claims[c.claim_id].text, titled=True)
            for c in candidates
        ]
        verdicts = classifier.classify_batch(pairs)
        write_classified(args.out, zip(candidates, verdicts))
        logger.info("classified %d candidates -> %s", len(candidates), args.out)
    finally:
        store.close()
    return 0


def cmd_aggregate(args: argparse.Namespace) -> int:
    classified = read_classified(args.classified)
    claim_ids = None
    if args.retrievals:
        claim_ids = list(read_retrievals(args.retrievals))
    submissions = aggregate_all(classified, claim_ids=claim_ids, max_evidence=args.max_evidence)
    write_submissions(args.out, submissions)
    logger.info("aggregated %d submissions -> %s", len(submissions), args.out)
    return 0


def cmd_score(args: argparse.Namespace) -> int:
    gold = load_claims(args.gold)
    payload = {}
    if args.submission:
        submissions = read_submissions(args.submission)
        payload.update(fever_score(submissions, gold).to_dict())
    if args.retrievals:
        payload["retrieval_rate"] = retrieval_rate(
            gold, read_retrievals(args.retrievals), skip_rule=args.skip_rule
        )
    if not payload:
        print("nothing to score: pass --submission and/or --retrievals", file=sys.stderr)
        return 2
    _print_json(payload)
    return 0


def cmd_run(args: argparse.Namespace) -> int:
    if not args.config:
        print("run requires --config", file=sys.stderr)
        return 2
    config = PipelineConfig.from_file(args.config)
    if args.workdir:
        config.workdir = str(Path(args.workdir))
    if args.parallelism:
        config.parallelism = args.parallelism
    try:
        result = run_pipeline(config, force=args.force)
    except PipelineStageError as exc:
        print(str(exc), file=sys.stderr)
        return 1
    summary = {
        "stages_run": result.stages_run,
        "stages_skipped": result.stages_skipped,
    }
    if result.report is not None:
        summary["report"] = result.report.to_dict()
    _print_json(summary)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="feverpipe",
        description="Evidence retrieval, entailment aggregation, and scoring for claim verification.",
    )
    parser.add_argument("-v", "--verbose", action="store_true", help="debug logging")
    # Global pipeline flags; the run subcommand accepts the same names after
    # the subcommand, which then take precedence.
    parser.add_argument("--config", default=None, help="pipeline config file")
    parser.add_argument("--workdir", default=None, help="override the config workdir")
    parser.add_argument("--force", action="store_true", help="rerun up-to-date stages")
    parser.add_argument("--parallelism", type=int, default=None)
    commands = parser.add_subparsers(dest="command", required=True)

    corpus = commands.add_parser("corpus", help="ingest and inspect the page store")
    corpus_sub = corpus.add_subparsers(dest="subcommand", required=True)
    ingest = corpus_sub.add_parser("ingest")
    ingest.add_argument("--dump", required=True)
    ingest.add_argument("--store", required=True)
    ingest.set_defaults(func=cmd_corpus_ingest)
    stats = corpus_sub.add_parser("stats")
    stats.add_argument("--store", required=True)
    stats.set_defaults(func=cmd_corpus_stats)

    index = commands.add_parser("index", help="build and query the TFIDF index")
    index_sub = index.add_subparsers(dest="subcommand", required=True)
    build = index_sub.add_parser("build")
    build.add_argument("--store", required=True)
    build.add_argument("--out", required=True)
    build.add_argument("--titles-in-tfidf", action="store_true")
    build.set_defaults(func=cmd_index_build)
    query = index_sub.add_parser("query")
    query.add_argument("--index", required=True)
    query.add_argument("--query", required=True)
    query.add_argument("--k", type=int, default=5)
    query.set_defaults(func=cmd_index_query)

    retrieve = commands.add_parser("retrieve", help="produce candidate evidence per claim")
    retrieve.add_argument("--store", required=True)
    retrieve.add_argument("--index", required=True)
    retrieve.add_argument("--claims", required=True)
    retrieve.add_argument("--out", required=True)
    _add_retrieval_flags(retrieve)
    retrieve.set_defaults(func=cmd_retrieve)

    dataset = commands.add_parser("dataset", help="build entailment datasets")
    dataset_sub = dataset.add_subparsers(dest="subcommand", required=True)
    dbuild = dataset_sub.add_parser("build")
    dbuild.add_argument("--variant", choices=["one", "five", "five-oracle"], required=True)
    dbuild.add_argument("--titled", action="store_true")
    dbuild.add_argument("--claims", required=True)
    dbuild.add_argument("--retrievals", required=True)
    dbuild.add_argument("--store", required=True)
    dbuild.add_argument("--out", required=True)
    dbuild.set_defaults(func=cmd_dataset_build)
    dstats = dataset_sub.add_parser("stats")
    dstats.add_argument("--dataset", required=True)
    dstats.set_defaults(func=cmd_dataset_stats)

    classify = commands.add_parser("classify", help="classify candidates for entailment")
    classify.add_argument("--kind", choices=["lexical", "oracle", "remote"], required=True)
    classify.add_argument("--claims", required=True)
    classify.add_argument("--retrievals", required=True)
    classify.add_argument("--store", required=True)
    classify.add_argument("--out", required=True)
    classify.add_argument("--endpoint", default=None)
    classify.add_argument("--batch-size", type=int, default=32)
    classify.add_argument("--timeout", type=float, default=30.0)
    classify.add_argument("--max-in-flight", type=int, default=1)
    classify.set_defaults(func=cmd_classify)

    aggregate = commands.add_parser("aggregate", help="turn verdicts into submissions")
    aggregate.add_argument("--classified", required=True)
    aggregate.add_argument("--out", required=True)
    aggregate.add_argument("--max-evidence", type=int, default=None)
    aggregate.add_argument("--retrievals", default=None)
    aggregate.set_defaults(func=cmd_aggregate)

    score = commands.add_parser("score", help="score submissions against gold claims")
    score.add_argument("--gold", required=True)
    score.add_argument("--submission", default=None)
    score.add_argument("--retrievals", default=None)
    score.add_argument("--skip-rule", choices=["no-singleton", "any-multi"], default="no-singleton")
    score.set_defaults(func=cmd_score)

    runner = commands.add_parser("run", help="run the whole pipeline from a config file")
    runner.add_argument("--config", default=argparse.SUPPRESS)
    runner.add_argument("--workdir", default=argparse.SUPPRESS)
    runner.add_argument("--force", action="store_true", default=argparse.SUPPRESS)
    runner.add_argument("--parallelism", type=int, default=argparse.SUPPRESS)
    runner.set_defaults(func=cmd_run)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(
        level=logging.DEBUG if args.verbose else logging.INFO,
        format="%(levelname)s %(name)s: %(message)s",
    )
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())

"""End-to-end orchestration: ingest, index, retrieve, classify, aggregate,
score.

Every stage writes a JSONL file into the working directory whose first line
is a header carrying the canonical config and its fingerprint.  A stage is
skipped when its output exists with a matching fingerprint; once one stage
runs, everything downstream runs too.  Outputs are written to a temporary
file and renamed on success, so an interrupted stage leaves only a
``*.tmp`` file behind and never a corrupt artifact.

All stage payloads are plain JSONL so any stage can be replaced by an
external tool that speaks the same records.
"""

from __future__ import annotations

import hashlib
import json
import logging
import os
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, Iterable

from . import corpus as corpus_mod
from .aggregation import Submission, aggregate_all
from .analysis import TfidfIndex
from .claims import claims_by_id, load_claims
from .entailment import (
    EntailmentClassifier,
    LexicalClassifier,
    OracleClassifier,
    PremisePair,
    RemoteClassifier,
    classified_from_record,
    classified_to_record,
)
from .retrieval import (
    EvidenceCandidate,
    RetrievalConfig,
    build_document_index,
    resolve_candidates,
    retrieve_all,
)
from .scoring import ScoreReport, fever_score

logger = logging.getLogger(__name__)

STAGES = ("ingest", "index", "retrieve", "classify", "aggregate", "score")

CLASSIFIER_KINDS = ("lexical", "oracle", "remote")


class PipelineStageError(RuntimeError):
    def __init__(self, stage: str, cause: Exception):
        super().__init__(f"stage '{stage}' failed: {cause}")
        self.stage = stage
        self.cause = cause


@dataclass
class RemoteSettings:
    endpoint: str = ""
    batch_size: int = 32
    timeout: float = 30.0
    max_retries: int = 3
    retry_backoff: float = 0.5

    def to_dict(self) -> dict:
        return {
            "endpoint": self.endpoint,
            "batch_size": self.batch_size,
            "timeout": self.timeout,
            "max_retries": self.max_retries,
            "retry_backoff": self.retry_backoff,
        }


@dataclass
class PipelineConfig:
    dump: str
    claims: str
    store: str
    workdir: str
    retrieval: RetrievalConfig = field(default_factory=RetrievalConfig)
    classifier: str = "lexical"
    remote: RemoteSettings = field(default_factory=RemoteSettings)
    max_evidence: int | None = None
    parallelism: int = 1
    seed: int = 0

    def __post_init__(self) -> None:
        if self.classifier not in CLASSIFIER_KINDS:
            raise ValueError(f"classifier must be one of {CLASSIFIER_KINDS}")
        if self.parallelism < 1:
            raise ValueError("parallelism must be >= 1")

    def to_dict(self) -> dict:
        return {
            "dump": str(self.dump),
            "claims": str(self.claims),
            "store": str(self.store),
            "workdir": str(self.workdir),
            "retrieval": self.retrieval.to_dict(),
            "classifier": self.classifier,
            "remote": self.remote.to_dict(),
            "max_evidence": self.max_evidence,
            "parallelism": self.parallelism,
            "seed": self.seed,
        }

    def canonical_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, separators=(",", ":"))

    def fingerprint(self) -> str:
        return hashlib.sha256(self.canonical_json().encode("utf-8")).hexdigest()

    @classmethod
    def from_dict(cls, payload: dict, base_dir: str | Path | None = None) -> "PipelineConfig":
        data = dict(payload)
        if base_dir is not None:
            base = Path(base_dir)
            for key in ("dump", "claims", "store", "workdir"):
                if key in data and not os.path.isabs(str(data[key])):
                    data[key] = str(base / data[key])
        if "retrieval" in data and isinstance(data["retrieval"], dict):
            data["retrieval"] = RetrievalConfig.from_dict(data["retrieval"])
        if "remote" in data and isinstance(data["remote"], dict):
            data["remote"] = RemoteSettings(**data["remote"])
        return cls(**data)

    @classmethod
    def from_file(cls, path: str | Path) -> "PipelineConfig":
        path = Path(path)
        with open(path, encoding="utf-8") as fp:
            payload = json.load(fp)
        return cls.from_dict(payload, base_dir=path.parent)


@dataclass
class RunResult:
    report: ScoreReport | None
    stages_run: list[str]
    stages_skipped: list[str]
    workdir: Path

    def stage_path(self, stage: str) -> Path:
        return self.workdir / f"{stage}.jsonl"


def _stage_header(stage: str, config: PipelineConfig) -> dict:
    return {
        "stage": stage,
        "fingerprint": config.fingerprint(),
        "config": config.to_dict(),
    }


def _write_stage(path: Path, header: dict, records: Iterable[dict]) -> None:
    tmp_path = path.with_name(path.name + ".tmp")
    with open(tmp_path, "w", encoding="utf-8") as fp:
        fp.write(json.dumps(header, ensure_ascii=False, sort_keys=True) + "\n")
        for record in records:
            fp.write(json.dumps(record, ensure_ascii=False) + "\n")
    os.replace(tmp_path, path)


def read_stage_records(path: str | Path) -> list[dict]:
    """Records of a stage file, header line excluded."""
    records = []
    with open(path, encoding="utf-8") as fp:
        for i, line in enumerate(fp):
            if not line.strip():
                continue
            record = json.loads(line)
            if i == 0:
                if "stage" not in record or "fingerprint" not in record:
                    raise ValueError(f"{path} is missing its stage header")
                continue
            records.append(record)
    return records


def _up_to_date(path: Path, fingerprint: str, extra_paths: Iterable[Path] = ()) -> bool:
    if not path.exists():
        return False
    for extra in extra_paths:
        if not extra.exists():
            return False
    try:
        with open(path, encoding="utf-8") as fp:
            header = json.loads(fp.readline())
        return header.get("fingerprint") == fingerprint
    except (OSError, json.JSONDecodeError):
        return False


def build_classifier(config: PipelineConfig) -> EntailmentClassifier:
    if config.classifier == "lexical":
        return LexicalClassifier()
    if config.classifier == "oracle":
        return OracleClassifier(load_claims(config.claims))
    classifier = RemoteClassifier(
        endpoint=config.remote.endpoint,
        batch_size=config.remote.batch_size,
        timeout=config.remote.timeout,
        max_retries=config.remote.max_retries,
        retry_backoff=config.remote.retry_backoff,
        max_in_flight=config.parallelism,
    )
    classifier.ping()
    return classifier


def run(config: PipelineConfig, force: bool = False) -> RunResult:
    """Run all stages, skipping the ones whose outputs are current."""
    workdir = Path(config.workdir)
    workdir.mkdir(parents=True, exist_ok=True)
    fingerprint = config.fingerprint()

    stage_extras: dict[str, list[Path]] = {
        "ingest": [Path(config.store) / corpus_mod.META_FILE],
        "index": [workdir / "index.json"],
    }
    runners: dict[str, Callable[[PipelineConfig, Path], Iterable[dict]]] = {
        "ingest": _stage_ingest,
        "index": _stage_index,
        "retrieve": _stage_retrieve,
        "classify": _stage_classify,
        "aggregate": _stage_aggregate,
        "score": _stage_score,
    }

    stages_run: list[str] = []
    stages_skipped: list[str] = []
    stale = force
    for stage in STAGES:
        out_path = workdir / f"{stage}.jsonl"
        if not stale and _up_to_date(out_path, fingerprint, stage_extras.get(stage, [])):
            logger.info("stage %s up to date", stage)
            stages_skipped.append(stage)
            continue
        stale = True
        logger.info("running stage %s", stage)
        try:
            records = runners[stage](config, workdir)
            _write_stage(out_path, _stage_header(stage, config), records)
        except Exception as exc:
            raise PipelineStageError(stage, exc) from exc
        stages_run.append(stage)

    if not stages_run:
        logger.info("all stages up to date")

    report = None
    score_records = read_stage_records(workdir / "score.jsonl")
    if score_records:
        report = _report_from_dict(score_records[0])
    return RunResult(
        report=report,
        stages_run=stages_run,
        stages_skipped=stages_skipped,
        workdir=workdir,
    )


def _report_from_dict(record: dict) -> ScoreReport:
    return ScoreReport(
        fever_score=record["fever_score"],
        label_accuracy=record["label_accuracy"],
        evidence_precision=record["evidence_precision"],
        evidence_recall=record["evidence_recall"],
        evidence_f1=record["evidence_f1"],
        confusion_labels=record["confusion"]["labels"],
        confusion_matrix=record["confusion"]["matrix"],
        claim_count=record["claim_count"],
        verifiable_count=record["verifiable_count"],
    )


def _stage_ingest(config: PipelineConfig, workdir: Path) -> Iterable[dict]:
    report = corpus_mod.ingest_dump(config.dump, config.store)
    return [report.to_dict()]


def _stage_index(config: PipelineConfig, workdir: Path) -> Iterable[dict]:
    store = corpus_mod.FileCorpus(config.store)
    try:
        index = build_document_index(store, config.retrieval.use_title_in_tfidf)
        index_path = workdir / "index.json"
        tmp_path = index_path.with_name(index_path.name + ".tmp")
        index.save(tmp_path)
        os.replace(tmp_path, index_path)
        return [{"index": "index.json", "documents": len(index)}]
    finally:
        store.close()


def _stage_retrieve(config: PipelineConfig, workdir: Path) -> Iterable[dict]:
    store = corpus_mod.FileCorpus(config.store)
    try:
        claims = load_claims(config.claims)
        index = TfidfIndex.load(workdir / "index.json")
        retrievals = retrieve_all(claims, config.retrieval, index, store)
        return [
            {"id": claim_id, "candidates": [[c.page, c.line] for c in candidates]}
            for claim_id, candidates in retrievals.items()
        ]
    finally:
        store.close()


def _load_retrieval_records(workdir: Path) -> list[tuple[int, list[tuple[str, int]]]]:
    records = read_stage_records(workdir / "retrieve.jsonl")
    return [
        (int(r["id"]), [(page, int(line)) for page, line in r["candidates"]])
        for r in records
    ]


def _stage_classify(config: PipelineConfig, workdir: Path) -> Iterable[dict]:
    store = corpus_mod.FileCorpus(config.store)
    try:
        claims = claims_by_id(load_claims(config.claims))
        classifier = build_classifier(config)
        candidates: list[EvidenceCandidate] = []
        skipped = 0
        for claim_id, pairs in _load_retrieval_records(workdir):
            resolved, missing = resolve_candidates(store, claim_id, pairs)
            candidates.extend(resolved)
            skipped += missing
        if skipped:
            logger.warning("skipped %d candidates referencing missing pages", skipped)
        premise_pairs = [
            PremisePair.from_candidate(c, claims[c.claim_id].text, titled=True)
            for c in candidates
        ]
        verdicts = classifier.classify_batch(premise_pairs)
        return [
            classified_to_record(candidate, verdict)
            for candidate, verdict in zip(candidates, verdicts)
        ]
    finally:
        store.close()


def _stage_aggregate(config: PipelineConfig, workdir: Path) -> Iterable[dict]:
    classified = [
        classified_from_record(record)
        for record in read_stage_records(workdir / "classify.jsonl")
    ]
    claim_ids = [claim_id for claim_id, _ in _load_retrieval_records(workdir)]
    submissions = aggregate_all(classified, claim_ids=claim_ids, max_evidence=config.max_evidence)
    return [submission.to_record() for submission in submissions]


def _stage_score(config: PipelineConfig, workdir: Path) -> Iterable[dict]:
    gold = load_claims(config.claims)
    submissions = [
        Submission.from_record(record)
        for record in read_stage_records(workdir / "aggregate.jsonl")
    ]
    report = fever_score(submissions, gold)
    return [report.to_dict()]

"""feverpipe: evidence retrieval, entailment aggregation, and scoring for
claim verification over an encyclopedia-style corpus."""

from .aggregation import Submission, aggregate, aggregate_all
from .analysis import TfidfIndex, Token, build_index, score_query, tokenize
from .claims import Claim, load_claims, parse_claim
from .corpus import (
    CorpusHandle,
    FileCorpus,
    IngestReport,
    InMemoryCorpus,
    Page,
    ingest_dump,
)
from .datasets import EntailmentExample, build_five, build_one, class_stats
from .entailment import (
    EntailmentClassifier,
    LexicalClassifier,
    OracleClassifier,
    PremisePair,
    RemoteClassificationError,
    RemoteClassifier,
    SentenceVerdict,
)
from .labels import ClaimLabel, SentenceLabel
from .pipeline import PipelineConfig, PipelineStageError, RunResult, run
from .retrieval import (
    EvidenceCandidate,
    RetrievalConfig,
    SentenceMode,
    extract_title_phrases,
    retrieve,
    retrieve_documents,
    select_sentences,
)
from .scoring import (
    ScoreReport,
    SupportMetrics,
    cohens_kappa,
    contingency_table,
    fever_score,
    retrieval_rate,
    support_metrics,
)

__version__ = "0.1.0"

__all__ = [
    "Claim",
    "ClaimLabel",
    "CorpusHandle",
    "EntailmentClassifier",
    "EntailmentExample",
    "EvidenceCandidate",
    "FileCorpus",
    "IngestReport",
    "InMemoryCorpus",
    "LexicalClassifier",
    "OracleClassifier",
    "Page",
    "PipelineConfig",
    "PipelineStageError",
    "PremisePair",
    "RemoteClassificationError",
    "RemoteClassifier",
    "RetrievalConfig",
    "RunResult",
    "ScoreReport",
    "SentenceLabel",
    "SentenceMode",
    "SentenceVerdict",
    "Submission",
    "SupportMetrics",
    "TfidfIndex",
    "Token",
    "aggregate",
    "aggregate_all",
    "build_five",
    "build_index",
    "build_one",
    "class_stats",
    "cohens_kappa",
    "contingency_table",
    "extract_title_phrases",
    "fever_score",
    "ingest_dump",
    "load_claims",
    "parse_claim",
    "retrieve",
    "retrieve_documents",
    "retrieval_rate",
    "run",
    "score_query",
    "select_sentences",
    "support_metrics",
    "tokenize",
]

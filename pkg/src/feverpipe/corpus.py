"""Corpus ingestion and page lookup.

The source dump has one JSON record per line with fields ``id`` (the page
title, underscore-separated), ``text``, and ``lines``.  The ``lines`` field
is a newline-joined list of ``lineno<TAB>sentence<TAB>anchor...`` records;
everything after the sentence field is link metadata and is dropped.

Ingestion writes a flat-file store (a JSONL page file plus a byte-offset
index) so a multi-gigabyte dump never has to fit in memory.  Titles keep
their escape sequences (``-LRB-`` and friends) verbatim; lookups always use
the stored forms.
"""

from __future__ import annotations

import json
import logging
import threading
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Iterator

logger = logging.getLogger(__name__)

PAGES_FILE = "pages.jsonl"
INDEX_FILE = "index.json"
META_FILE = "meta.json"

_TITLE_ESCAPES = {
    "-LRB-": "(",
    "-RRB-": ")",
    "-LSB-": "[",
    "-RSB-": "]",
    "-COLON-": ":",
}


def display_title(raw_title: str) -> str:
    """Underscores converted to spaces; escape sequences left alone."""
    return raw_title.replace("_", " ")


def decode_title_escapes(title: str) -> str:
    """Human-readable form of a title.  Never used for matching."""
    decoded = title
    for escape, char in _TITLE_ESCAPES.items():
        decoded = decoded.replace(escape, char)
    return decoded


@dataclass
class Page:
    """One corpus article: a raw title plus line-numbered sentences."""

    raw_title: str
    lines: list[tuple[int, str]] = field(default_factory=list)

    @property
    def display_title(self) -> str:
        return display_title(self.raw_title)

    def line_text(self, line_no: int) -> str | None:
        for no, sentence in self.lines:
            if no == line_no:
                return sentence
        return None

    def text(self) -> str:
        """All non-empty sentences joined; used as the document body."""
        return " ".join(sentence for _, sentence in self.lines if sentence)

    def to_record(self) -> dict:
        return {"id": self.raw_title, "lines": [[no, s] for no, s in self.lines]}

    @classmethod
    def from_record(cls, record: dict) -> "Page":
        return cls(
            raw_title=record["id"],
            lines=[(int(no), s) for no, s in record["lines"]],
        )


@dataclass
class IngestReport:
    pages: int = 0
    lines: int = 0
    malformed_records: int = 0
    malformed_lines: int = 0

    def to_dict(self) -> dict:
        return {
            "pages": self.pages,
            "lines": self.lines,
            "malformed_records": self.malformed_records,
            "malformed_lines": self.malformed_lines,
        }


def parse_lines_field(lines_field: str) -> tuple[list[tuple[int, str]], int]:
    """Parse the dump's ``lines`` field.

    Returns (lines, malformed_count).  Line numbers must be non-negative and
    strictly increasing; entries violating that are dropped.  Empty sentence
    text is preserved: gold evidence may reference any line number.
    """
    lines: list[tuple[int, str]] = []
    malformed = 0
    previous = -1
    for raw in lines_field.split("\n"):
        if not raw:
            continue
        fields = raw.split("\t")
        try:
            line_no = int(fields[0])
        except ValueError:
            malformed += 1
            continue
        if line_no < 0 or line_no <= previous:
            malformed += 1
            continue
        sentence = fields[1] if len(fields) > 1 else ""
        lines.append((line_no, sentence))
        previous = line_no
    return lines, malformed


def parse_dump_record(record: dict) -> tuple[Page, int]:
    """Build a Page from one decoded dump record.

    Returns (page, malformed_line_count).  Raises KeyError/ValueError on
    records without a usable id.
    """
    raw_title = record["id"]
    if not isinstance(raw_title, str) or not raw_title:
        raise ValueError("record id missing or empty")
    lines, malformed = parse_lines_field(record.get("lines", "") or "")
    return Page(raw_title=raw_title, lines=lines), malformed


class CorpusHandle:
    """Read-only page lookup.  Immutable after build, safe to share."""

    @property
    def page_count(self) -> int:
        raise NotImplementedError

    def _lookup_raw(self, raw_title: str) -> Page | None:
        raise NotImplementedError

    def iter_pages(self) -> Iterator[Page]:
        raise NotImplementedError

    def get_page(self, title: str) -> Page | None:
        """Exact match on raw_title or display_title; no fuzzy matching."""
        page = self._lookup_raw(title.replace(" ", "_"))
        if page is None:
            return None
        if title == page.raw_title or title == page.display_title:
            return page
        return None

    def __contains__(self, title: str) -> bool:
        return self.get_page(title) is not None


class InMemoryCorpus(CorpusHandle):
    """Dict-backed corpus used in tests and small runs."""

    def __init__(self, pages: Iterable[Page] = ()):
        self._pages: dict[str, Page] = {}
        for page in pages:
            self._pages[page.raw_title] = page

    @property
    def page_count(self) -> int:
        return len(self._pages)

    def _lookup_raw(self, raw_title: str) -> Page | None:
        return self._pages.get(raw_title)

    def iter_pages(self) -> Iterator[Page]:
        yield from self._pages.values()


class FileCorpus(CorpusHandle):
    """Flat-file store: JSONL pages plus a title -> byte offset index.

    Only the index lives in memory; page bodies are read on demand, so the
    store scales to dumps that do not fit in RAM.
    """

    def __init__(self, store_dir: str | Path):
        self.store_dir = Path(store_dir)
        with open(self.store_dir / INDEX_FILE, encoding="utf-8") as fp:
            self._offsets: dict[str, list[int]] = json.load(fp)
        with open(self.store_dir / META_FILE, encoding="utf-8") as fp:
            self.meta: dict = json.load(fp)
        self._pages_path = self.store_dir / PAGES_FILE
        self._handle = open(self._pages_path, "rb")
        self._lock = threading.Lock()

    @property
    def page_count(self) -> int:
        return len(self._offsets)

    @property
    def line_count(self) -> int:
        return int(self.meta.get("lines", 0))

    def _lookup_raw(self, raw_title: str) -> Page | None:
        entry = self._offsets.get(raw_title)
        if entry is None:
            return None
        offset, length = entry
        with self._lock:
            self._handle.seek(offset)
            payload = self._handle.read(length)
        return Page.from_record(json.loads(payload.decode("utf-8")))

    def iter_pages(self) -> Iterator[Page]:
        with open(self._pages_path, encoding="utf-8") as fp:
            for line in fp:
                if line.strip():
                    yield Page.from_record(json.loads(line))

    def close(self) -> None:
        self._handle.close()


def ingest_dump(dump_path: str | Path, out_store: str | Path) -> IngestReport:
    """Ingest a dump file into a persistent store directory.

    Malformed records are counted and skipped, never fatal.  Re-ingesting
    the same dump reproduces the store byte for byte.
    """
    dump_path = Path(dump_path)
    store_dir = Path(out_store)
    store_dir.mkdir(parents=True, exist_ok=True)

    report = IngestReport()
    offsets: dict[str, list[int]] = {}
    pages_path = store_dir / PAGES_FILE

    with open(dump_path, encoding="utf-8") as dump, open(pages_path, "wb") as out:
        position = 0
        for raw_line in dump:
            if not raw_line.strip():
                continue
            try:
                record = json.loads(raw_line)
                page, bad_lines = parse_dump_record(record)
            except (json.JSONDecodeError, KeyError, ValueError, TypeError):
                report.malformed_records += 1
                continue
            report.malformed_lines += bad_lines
            report.pages += 1
            report.lines += len(page.lines)
            payload = json.dumps(page.to_record(), ensure_ascii=False).encode("utf-8")
            if page.raw_title in offsets:
                logger.warning("duplicate page id %r; keeping last occurrence", page.raw_title)
            out.write(payload)
            out.write(b"\n")
            offsets[page.raw_title] = [position, len(payload)]
            position += len(payload) + 1

    with open(store_dir / INDEX_FILE, "w", encoding="utf-8") as fp:
        json.dump(offsets, fp, ensure_ascii=False, sort_keys=True)
    meta = report.to_dict()
    meta["page_count"] = len(offsets)
    with open(store_dir / META_FILE, "w", encoding="utf-8") as fp:
        json.dump(meta, fp, sort_keys=True)

    logger.info(
        "ingested %d pages (%d lines, %d malformed records) from %s",
        report.pages,
        report.lines,
        report.malformed_records,
        dump_path,
    )
    return report

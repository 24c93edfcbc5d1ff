"""Build a page store from a dump file and query it with TFIDF.

Walks through the lowest layer of the pipeline: ingesting the line-numbered
dump format, looking pages up by either title form, and ranking documents
against a query.
"""

import json
import tempfile
from pathlib import Path

from feverpipe import FileCorpus, build_index, ingest_dump, score_query
from feverpipe.retrieval import build_document_index

workdir = Path(tempfile.mkdtemp(prefix="feverpipe-demo-"))

# A dump has one JSON record per line; the "lines" field packs numbered
# sentences separated by tabs (anything after the sentence is link metadata).
records = [
    {"id": "Ann_Richards", "text": "", "lines": "0\tAnn Richards was a governor of Texas .\n1\tShe served from 1991 ."},
    {"id": "Texas", "text": "", "lines": "0\tTexas is a state in the south .\t\tTexas"},
    {"id": "Alien_-LRB-film-RRB-", "text": "", "lines": "0\tThe film follows a mining crew ."},
]
dump = workdir / "wiki.jsonl"
dump.write_text("\n".join(json.dumps(r) for r in records))

report = ingest_dump(dump, workdir / "store")
print(f"ingested {report.pages} pages, {report.lines} lines")

corpus = FileCorpus(workdir / "store")

# Lookups accept the raw underscore form or the display form, nothing else.
page = corpus.get_page("Ann Richards")
print(f"display title: {page.display_title!r}")
print(f"line 1: {page.line_text(1)!r}")
assert corpus.get_page("Ann_Richards").raw_title == page.raw_title
assert corpus.get_page("ann richards") is None

# Titles keep their escape sequences; "(film)" pages match the stored form.
print(f"film page found: {corpus.get_page('Alien -LRB-film-RRB-') is not None}")

# The document index ranks pages by cosine over tf-idf vectors
# (unigrams + bigrams, L2-normalized).
index = build_document_index(corpus, use_title_in_tfidf=True)
for doc_id, score in score_query(index, "Was Ann Richards the governor of Texas ?", k=3):
    print(f"  {score:.4f}  {doc_id}")

# The same machinery works on any (doc_id, text) collection.
sentences = build_index([("a", "the cat sat"), ("b", "the dog ran")])
print(score_query(sentences, "cat", k=2))

corpus.close()

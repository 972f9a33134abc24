"""Streaming corpus statistics, evaluation set construction and sampling."""
from __future__ import annotations

import random
from concurrent.futures import ThreadPoolExecutor
from collections import Counter
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Optional, Sequence

from .errors import CorpusError
from .graphemes import grapheme_length
from .pack import normalize_text
from .tokenizer import _pretokenize

# Frequency strata used for corpus reports: (label, low, high); high=None is open.
DEFAULT_STRATA: tuple[tuple[str, int, Optional[int]], ...] = (
    ("freq >= 100", 100, None),
    ("freq 10-99", 10, 99),
    ("freq 5-9", 5, 9),
    ("freq 3-4", 3, 4),
    ("freq 2", 2, 2),
    ("freq 1", 1, 1),
)


@dataclass
class CorpusCounts:
    counts: dict[str, int] = field(default_factory=dict)

    @property
    def total_occurrences(self) -> int:
        return sum(self.counts.values())

    @property
    def unique_types(self) -> int:
        return len(self.counts)


def _count_lines(lines: Iterable[str], normalization: str) -> Counter[str]:
    counter: Counter[str] = Counter()
    for line in lines:
        for kind, run in _pretokenize(normalize_text(line, normalization)):
            if kind == "word":
                counter[run] += 1
    return counter


def count_corpus(lines: Iterable[str], normalization: str = "NFC",
                 threads: int = 1) -> CorpusCounts:
    """Count word types over a stream of text lines.

    Pre-tokenization is identical to the tokenizer's: whitespace, punctuation
    and digit runs are not counted as words.  With threads > 1 the lines are
    sharded into chunks; the merge (counter addition) is order-independent,
    so output is deterministic regardless of thread count.
    """
    if threads <= 1:
        return CorpusCounts(counts=dict(_count_lines(lines, normalization)))
    chunks: list[list[str]] = []
    chunk: list[str] = []
    for line in lines:
        chunk.append(line)
        if len(chunk) >= 10000:
            chunks.append(chunk)
            chunk = []
    if chunk:
        chunks.append(chunk)
    total: Counter[str] = Counter()
    with ThreadPoolExecutor(max_workers=threads) as pool:
        for partial in pool.map(lambda c: _count_lines(c, normalization), chunks):
            total.update(partial)
    return CorpusCounts(counts=dict(total))


def iter_corpus_lines(path: str | Path) -> Iterable[str]:
    """Yield decoded lines; invalid UTF-8 is reported with its byte offset."""
    offset = 0
    with open(path, "rb") as fh:
        for raw in fh:
            try:
                yield raw.decode("utf-8")
            except UnicodeDecodeError as exc:
                raise CorpusError(
                    f"{path}: invalid UTF-8 at byte offset {offset + exc.start}") from None
            offset += len(raw)


def count_corpus_file(path: str | Path, normalization: str = "NFC",
                      threads: int = 1) -> CorpusCounts:
    return count_corpus(iter_corpus_lines(path), normalization, threads)


@dataclass
class CorpusStatsReport:
    strata: list[tuple[str, int, Optional[int], int]]  # label, low, high, type_count
    hapax_count: int
    hapax_rate: float
    total_occurrences: int
    unique_types: int
    avg_word_length_graphemes: float


def corpus_stats(counts: CorpusCounts,
                 strata_spec: Optional[Sequence[tuple[str, int, Optional[int]]]] = None,
                 eval_words: Optional[Sequence[str]] = None) -> CorpusStatsReport:
    """Bucket type counts into frequency strata and compute hapax statistics."""
    spec = tuple(strata_spec) if strata_spec is not None else DEFAULT_STRATA
    for _label, low, high in spec:
        if low < 1 or (high is not None and high < low):
            raise CorpusError("invalid strata: bounds must satisfy 1 <= low <= high")
    by_low = sorted(spec, key=lambda band: band[1])
    for prev, nxt in zip(by_low, by_low[1:]):
        if prev[2] is None or prev[2] >= nxt[1]:
            raise CorpusError("invalid strata: overlapping frequency bands")

    strata: list[tuple[str, int, Optional[int], int]] = []
    for label, low, high in spec:
        n = sum(1 for f in counts.counts.values()
                if f >= low and (high is None or f <= high))
        strata.append((label, low, high, n))
    hapax = sum(1 for f in counts.counts.values() if f == 1)
    types = counts.unique_types
    words = eval_words if eval_words is not None else list(counts.counts)
    avg_len = (sum(grapheme_length(w) for w in words) / len(words)) if words else 0.0
    return CorpusStatsReport(
        strata=strata,
        hapax_count=hapax,
        hapax_rate=(hapax / types) if types else 0.0,
        total_occurrences=counts.total_occurrences,
        unique_types=types,
        avg_word_length_graphemes=avg_len,
    )


def build_eval_set(counts: CorpusCounts, min_freq: int) -> list[str]:
    """Word types with frequency >= min_freq, descending frequency then lexicographic."""
    if min_freq < 1:
        raise CorpusError("min_freq must be >= 1")
    eligible = [(freq, word) for word, freq in counts.counts.items() if freq >= min_freq]
    eligible.sort(key=lambda item: (-item[0], item[1]))
    return [word for _freq, word in eligible]


def stratified_sample(counts: CorpusCounts, per_stratum: int,
                      rare_band: tuple[int, int] = (2, 5), seed: int = 0) -> list[str]:
    """Common + medium + rare word sample.

    Common: top per_stratum by frequency.  Medium: a per_stratum window around
    the median frequency rank of types with freq >= 2.  Rare: a seeded uniform
    sample from the rare frequency band.
    """
    ranked = sorted(counts.counts.items(), key=lambda item: (-item[1], item[0]))
    if len(ranked) < per_stratum:
        raise CorpusError("insufficient types for the common stratum")
    common = [w for w, _f in ranked[:per_stratum]]

    medium_pool = [w for w, f in ranked if f >= 2]
    if len(medium_pool) < per_stratum:
        raise CorpusError("insufficient types for the medium stratum")
    mid = len(medium_pool) // 2
    start = max(0, min(mid - per_stratum // 2, len(medium_pool) - per_stratum))
    medium = medium_pool[start:start + per_stratum]

    low, high = rare_band
    rare_pool = [w for w, f in ranked if low <= f <= high]
    if len(rare_pool) < per_stratum:
        raise CorpusError("insufficient types for the rare stratum")
    rng = random.Random(seed)
    rare = rng.sample(sorted(rare_pool), per_stratum)
    return common + medium + rare

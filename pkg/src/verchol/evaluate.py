"""Tokenizer comparison: fertility, tier distribution, root preservation, throughput.

Tokenizers are compared through a small adapter interface (word in, token
list and optional tier out), so external tools can join the comparison via a
newline-delimited subprocess protocol: one word per input line, one output
line of tab-separated tokens.
"""
from __future__ import annotations

import shlex
import subprocess
import time
from dataclasses import dataclass
from statistics import median
from typing import Optional, Protocol, Sequence

from .bpe import BpeModel, bpe_tokenize
from .errors import AlignmentError, CorpusError
from .pack import LanguagePack
from .tokenizer import Tokenizer


class TokenizerAdapter(Protocol):
    label: str
    vocab_size: Optional[int]

    def segment(self, word: str) -> tuple[list[str], Optional[int]]:
        """Return (token surfaces, tier or None)."""
        ...


class MorphologicalAdapter:
    def __init__(self, tokenizer: Tokenizer, label: str = "morphological") -> None:
        self.tokenizer = tokenizer
        self.label = label
        self.vocab_size: Optional[int] = len(tokenizer.vocab)

    def segment(self, word: str) -> tuple[list[str], Optional[int]]:
        seg = self.tokenizer.tokenize_word(word)
        return [t.surface for t in seg.tokens], seg.tier_used


class BpeAdapter:
    def __init__(self, model: BpeModel, label: str = "bpe") -> None:
        self.model = model
        self.label = label
        self.vocab_size: Optional[int] = model.vocab_size

    def segment(self, word: str) -> tuple[list[str], Optional[int]]:
        return bpe_tokenize(self.model, word), None


class ExternAdapter:
    """Runs an external tokenizer over the line-delimited subprocess protocol."""

    def __init__(self, command: str, label: Optional[str] = None) -> None:
        self.command = command
        self.label = label or f"extern:{command}"
        self.vocab_size: Optional[int] = None
        self._cache: dict[str, list[str]] = {}

    def prime(self, words: Sequence[str]) -> None:
        proc = subprocess.run(
            shlex.split(self.command), input="\n".join(words) + "\n",
            capture_output=True, text=True, encoding="utf-8")
        if proc.returncode != 0:
            raise CorpusError(f"external tokenizer failed: {proc.stderr.strip()}")
        lines = proc.stdout.splitlines()
        if len(lines) != len(words):
            raise CorpusError(
                f"external tokenizer returned {len(lines)} lines for {len(words)} words")
        for word, line in zip(words, lines):
            self._cache[word] = line.split("\t")

    def segment(self, word: str) -> tuple[list[str], Optional[int]]:
        if word not in self._cache:
            self.prime([word])
        return self._cache[word], None


@dataclass
class FertilityReport:
    tokenizer_label: str
    vocab_size: Optional[int]
    word_count: int
    token_count: int
    fertility: float  # exact ratio; rounding is presentation-only
    tier_histogram: Optional[dict[str, int]] = None
    tier_shares: Optional[dict[str, float]] = None
    root_preservation_rate: Optional[float] = None
    throughput_words_per_sec: Optional[float] = None

    @property
    def fertility_rounded(self) -> float:
        return round(self.fertility, 2)

    def machine_lines(self) -> list[str]:
        lines = [
            f"tokenizer\t{self.tokenizer_label}",
            f"vocab_size\t{self.vocab_size if self.vocab_size is not None else '-'}",
            f"word_count\t{self.word_count}",
            f"token_count\t{self.token_count}",
            f"fertility\t{self.fertility!r}",
            f"fertility_rounded\t{self.fertility_rounded:.2f}",
        ]
        if self.tier_histogram is not None:
            for tier, count in self.tier_histogram.items():
                lines.append(f"tier_{tier}\t{count}")
        if self.root_preservation_rate is not None:
            lines.append(f"root_preservation\t{self.root_preservation_rate!r}")
        if self.throughput_words_per_sec is not None:
            lines.append(f"throughput_words_per_sec\t{self.throughput_words_per_sec:.1f}")
        return lines


def evaluate(adapter: TokenizerAdapter, words: Sequence[str],
             weights: Optional[dict[str, int]] = None) -> FertilityReport:
    """Fertility and tier distribution over an evaluation word list.

    Each word counts once; pass ``weights`` (word -> frequency) for the
    frequency-weighted mode.  Surface alignment is verified for every word
    and any violation is a hard failure.
    """
    if not words:
        raise CorpusError("evaluation word list is empty")
    if isinstance(adapter, ExternAdapter):
        adapter.prime(words)
    word_total = 0
    token_total = 0
    histogram = {"0": 0, "1": 0, "2+": 0}
    saw_tiers = False
    for word in words:
        weight = weights.get(word, 0) if weights is not None else 1
        if weight == 0 and weights is not None:
            continue
        tokens, tier = adapter.segment(word)
        if "".join(tokens) != word and not any("⟨unk:" in t for t in tokens):
            raise AlignmentError(f"alignment violation: {word!r} -> {tokens!r}")
        word_total += weight
        token_total += weight * len(tokens)
        if tier is not None:
            saw_tiers = True
            histogram["0" if tier == 0 else "1" if tier == 1 else "2+"] += weight
    if word_total == 0:
        raise CorpusError("no evaluated words had nonzero weight")
    fertility = token_total / word_total
    shares = ({k: v / word_total for k, v in histogram.items()} if saw_tiers else None)
    return FertilityReport(
        tokenizer_label=adapter.label,
        vocab_size=adapter.vocab_size,
        word_count=word_total,
        token_count=token_total,
        fertility=fertility,
        tier_histogram=histogram if saw_tiers else None,
        tier_shares=shares,
    )


def root_preservation(tokenizer: Tokenizer, pack: LanguagePack,
                      words: Sequence[str]) -> Optional[float]:
    """Fraction of tier-1 words whose root token equals the matched lemma.

    Words matched only through an oblique stem count as not preserved.
    Returns None when no word in the input resolves at tier 1.
    """
    preserved = 0
    tier1 = 0
    for word in words:
        if word in tokenizer._whole_words:
            continue
        decomposition = tokenizer.decompose(word)
        if decomposition is None:
            continue
        tier1 += 1
        if decomposition.root_stem == decomposition.root.lemma:
            preserved += 1
    if tier1 == 0:
        return None
    return preserved / tier1


def throughput_bench(adapter: TokenizerAdapter, corpus_words: Sequence[str],
                     repetitions: int = 5) -> float:
    """Median words/sec over timed repetitions, with one untimed warm-up pass."""
    if repetitions < 3:
        raise CorpusError("repetitions must be >= 3")
    for word in corpus_words:
        adapter.segment(word)
    rates: list[float] = []
    for _ in range(repetitions):
        start = time.perf_counter()
        for word in corpus_words:
            adapter.segment(word)
        elapsed = time.perf_counter() - start
        rates.append(len(corpus_words) / elapsed if elapsed > 0 else float("inf"))
    return median(rates)


def format_report_table(reports: Sequence[FertilityReport]) -> str:
    """Human-readable comparison table (one row per tokenizer)."""
    header = f"{'Method':<28} {'Vocab':>8} {'Words':>10} {'Tokens':>10} {'Fertility':>9}  Tiers 0/1/2+"
    rows = [header, "-" * len(header)]
    for r in reports:
        vocab = str(r.vocab_size) if r.vocab_size is not None else "-"
        if r.tier_shares is not None:
            tiers = "/".join(f"{r.tier_shares[k] * 100:.1f}%" for k in ("0", "1", "2+"))
        else:
            tiers = "-"
        rows.append(f"{r.tokenizer_label:<28} {vocab:>8} {r.word_count:>10} "
                    f"{r.token_count:>10} {r.fertility_rounded:>9.2f}  {tiers}")
    return "\n".join(rows)

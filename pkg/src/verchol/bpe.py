"""Desk-scale byte-pair-encoding baseline.

Symbols are grapheme clusters (not bytes), so fertility numbers are
comparable with the morphological tokenizer.  Training follows the classic
iterative most-frequent-pair merge over a word-frequency-weighted corpus;
ties break on the lexicographically smaller pair.
"""
from __future__ import annotations

from collections import Counter, defaultdict
from dataclasses import dataclass
from pathlib import Path
from typing import TYPE_CHECKING

from .errors import BpeError
from .graphemes import split_graphemes

if TYPE_CHECKING:
    from .corpus import CorpusCounts


@dataclass(frozen=True)
class BpeModel:
    merges: tuple[tuple[str, str], ...]  # in training order
    base_alphabet: frozenset[str]
    vocab_size: int


def train_bpe(counts: "CorpusCounts", vocab_size: int) -> BpeModel:
    words: list[list[str]] = []
    freqs: list[int] = []
    alphabet: set[str] = set()
    for word in sorted(counts.counts):  # sorted for deterministic pair iteration
        symbols = split_graphemes(word)
        words.append(symbols)
        freqs.append(counts.counts[word])
        alphabet.update(symbols)
    if vocab_size <= len(alphabet):
        raise BpeError(
            f"vocab_size too small: base alphabet has {len(alphabet)} symbols, got {vocab_size}")

    pair_counts: Counter[tuple[str, str]] = Counter()
    pair_words: defaultdict[tuple[str, str], set[int]] = defaultdict(set)
    for idx, symbols in enumerate(words):
        freq = freqs[idx]
        for pair in zip(symbols, symbols[1:]):
            pair_counts[pair] += freq
            pair_words[pair].add(idx)

    merges: list[tuple[str, str]] = []
    budget = vocab_size - len(alphabet)
    while len(merges) < budget and pair_counts:
        best = min(pair_counts.items(), key=lambda item: (-item[1], item[0]))[0]
        if pair_counts[best] <= 0:
            break
        merges.append(best)
        merged = best[0] + best[1]
        for idx in list(pair_words[best]):
            symbols, freq = words[idx], freqs[idx]
            for pair in zip(symbols, symbols[1:]):
                pair_counts[pair] -= freq
                if pair_counts[pair] <= 0:
                    del pair_counts[pair]
                pair_words[pair].discard(idx)
            new_symbols: list[str] = []
            i = 0
            while i < len(symbols):
                if i + 1 < len(symbols) and (symbols[i], symbols[i + 1]) == best:
                    new_symbols.append(merged)
                    i += 2
                else:
                    new_symbols.append(symbols[i])
                    i += 1
            words[idx] = new_symbols
            for pair in zip(new_symbols, new_symbols[1:]):
                pair_counts[pair] += freq
                pair_words[pair].add(idx)
    return BpeModel(merges=tuple(merges), base_alphabet=frozenset(alphabet),
                    vocab_size=vocab_size)


def _merge_ranks(model: BpeModel) -> dict[tuple[str, str], int]:
    ranks = getattr(model, "_rank_cache", None)
    if ranks is None:
        ranks = {pair: i for i, pair in enumerate(model.merges)}
        object.__setattr__(model, "_rank_cache", ranks)  # memo on the frozen model
    return ranks


def bpe_tokenize(model: BpeModel, word: str) -> list[str]:
    """Split to base symbols and apply merges in training order."""
    if not word:
        raise BpeError("empty word")
    ranks = _merge_ranks(model)
    symbols: list[str] = []
    for cluster in split_graphemes(word):
        if cluster in model.base_alphabet:
            symbols.append(cluster)
        else:
            symbols.append(f"⟨unk:{cluster}⟩")  # out-of-alphabet marker token
    while len(symbols) > 1:
        best_rank = None
        best_pair = None
        for pair in zip(symbols, symbols[1:]):
            rank = ranks.get(pair)
            if rank is not None and (best_rank is None or rank < best_rank):
                best_rank, best_pair = rank, pair
        if best_pair is None:
            break
        merged = best_pair[0] + best_pair[1]
        out: list[str] = []
        i = 0
        while i < len(symbols):
            if i + 1 < len(symbols) and (symbols[i], symbols[i + 1]) == best_pair:
                out.append(merged)
                i += 2
            else:
                out.append(symbols[i])
                i += 1
        symbols = out
    return symbols


def save_bpe_model(model: BpeModel, path: str | Path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(f"bpe v1 vocab_size={model.vocab_size}\n")
        fh.write("#alphabet\t" + "\t".join(sorted(model.base_alphabet)) + "\n")
        for left, right in model.merges:
            fh.write(f"{left}\t{right}\n")


def load_bpe_model(path: str | Path) -> BpeModel:
    with open(path, encoding="utf-8") as fh:
        header = fh.readline().rstrip("\n")
        if not header.startswith("bpe v1 vocab_size="):
            raise BpeError(f"{path}: bad header {header!r}")
        try:
            vocab_size = int(header.rsplit("=", 1)[1])
        except ValueError:
            raise BpeError(f"{path}: bad vocab_size in header") from None
        alphabet_line = fh.readline().rstrip("\n")
        if not alphabet_line.startswith("#alphabet\t"):
            raise BpeError(f"{path}: missing alphabet line")
        alphabet = frozenset(alphabet_line.split("\t")[1:])
        merges: list[tuple[str, str]] = []
        for lineno, raw in enumerate(fh, start=3):
            line = raw.rstrip("\n")
            if not line:
                continue
            cols = line.split("\t")
            if len(cols) != 2:
                raise BpeError(f"{path}:{lineno}: expected left<TAB>right, got {line!r}")
            merges.append((cols[0], cols[1]))
    return BpeModel(merges=tuple(merges), base_alphabet=alphabet, vocab_size=vocab_size)

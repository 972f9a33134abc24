"""Four-tier tokenization engine.

Per word: Tier 0 whole-word vocabulary lookup, Tier 1 surface-aligned
morphological decomposition ([prefix*] root [suffix*]), Tier 2 syllable
segmentation, Tier 3 grapheme fallback.  Every tier splits the word into
contiguous spans, so concatenating token surfaces always reproduces the word.
"""
from __future__ import annotations

import unicodedata
from dataclasses import dataclass, field
from typing import Iterable, Optional, Union

from .errors import TokenizeError
from .graphemes import split_graphemes
from .pack import AffixEntry, LanguagePack, RootEntry, ScriptTable
from .vocab import UNK_ID, Vocabulary

CATEGORY_WHOLE_WORD = "whole_word"
CATEGORY_ROOT = "root"
CATEGORY_AFFIX = "affix"
CATEGORY_VERB_CHAIN = "verb_chain_element"
CATEGORY_SYLLABLE = "syllable"
CATEGORY_GRAPHEME = "grapheme"
CATEGORY_PUNCTUATION = "punctuation"
CATEGORY_NUMBER = "number"
CATEGORY_WHITESPACE = "whitespace"

# Character class -> syllable pattern symbol.
_SYMBOLS = {"consonant": "C", "vowel": "V", "vowel_sign": "V", "virama": "M", "modifier": "M"}


@dataclass(frozen=True)
class Token:
    surface: str
    tier: int  # 0..3; punctuation/number/whitespace tokens use tier 0 by convention
    category: str
    is_word_initial: bool = False


@dataclass(frozen=True)
class Segmentation:
    word: str
    tokens: tuple[Token, ...]
    tier_used: int


@dataclass(frozen=True)
class Separator:
    surface: str


Piece = Union[Segmentation, Separator]


@dataclass(frozen=True)
class TokenizerConfig:
    max_affix_chain: int = 6
    unknown_policy: str = "grapheme_tokens"  # or "single_unknown"

    def __post_init__(self) -> None:
        if self.max_affix_chain < 1:
            raise TokenizeError("max_affix_chain must be >= 1")
        if self.unknown_policy not in ("grapheme_tokens", "single_unknown"):
            raise TokenizeError(f"unknown unknown_policy: {self.unknown_policy}")


@dataclass(frozen=True)
class Decomposition:
    root: RootEntry
    root_stem: str
    prefixes: tuple[AffixEntry, ...]
    suffixes: tuple[AffixEntry, ...]
    chain_match: bool

    @property
    def token_count(self) -> int:
        return 1 + len(self.prefixes) + len(self.suffixes)

    def sort_key(self) -> tuple:
        # Lexicographic scoring: fewest tokens, longest root span, verb-chain
        # preferred, lowest chain_order sum, smallest affix-surface sequence.
        affixes = self.prefixes + self.suffixes
        return (
            self.token_count,
            -len(self.root_stem),
            0 if self.chain_match else 1,
            sum(a.chain_order for a in affixes),
            tuple(a.surface for a in affixes),
        )

    def tokens(self) -> tuple[Token, ...]:
        category = CATEGORY_VERB_CHAIN if self.chain_match else CATEGORY_AFFIX
        out = [Token(a.surface, 1, category) for a in self.prefixes]
        out.append(Token(self.root_stem, 1, CATEGORY_ROOT))
        out.extend(Token(a.surface, 1, category) for a in self.suffixes)
        return tuple(out)


class Tokenizer:
    """Immutable four-tier tokenizer over one language pack and vocabulary."""

    def __init__(self, pack: LanguagePack, vocab: Vocabulary,
                 config: Optional[TokenizerConfig] = None) -> None:
        if vocab.language_id is not None and vocab.language_id != pack.language_id:
            raise TokenizeError(
                f"vocabulary language {vocab.language_id!r} does not match pack {pack.language_id!r}")
        if vocab.normalization is not None and vocab.normalization != pack.normalization:
            raise TokenizeError("vocabulary and pack disagree on normalization form")
        self.pack = pack
        self.vocab = vocab
        self.config = config or TokenizerConfig()
        self._whole_words = vocab.whole_word_set()

        self._root_map: dict[str, list[RootEntry]] = {}
        for root in pack.roots:
            for stem in root.surface_stems:
                self._root_map.setdefault(stem, []).append(root)
        self._root_lens = sorted({len(s) for s in self._root_map}, reverse=True)

        self._suffix_map: dict[str, list[AffixEntry]] = {}
        self._prefix_map: dict[str, list[AffixEntry]] = {}
        for affix in pack.affixes:
            target = self._suffix_map if affix.position == "suffix" else self._prefix_map
            target.setdefault(affix.surface, []).append(affix)
        self._suffix_lens = sorted({len(s) for s in self._suffix_map})
        self._prefix_lens = sorted({len(s) for s in self._prefix_map})

        self._chain_templates = {t.sequence for t in pack.verb_chains}
        self._patterns = sorted(enumerate(pack.syllable_patterns),
                                key=lambda item: (-item[1].priority, item[0]))
        self._symbol_map = {ch: _SYMBOLS.get(cls) for ch, cls in pack.script.classes}

    # ----- Tier 1: morphological decomposition -------------------------------

    def _candidates(self, word: str, max_affixes: int) -> Iterable[Decomposition]:
        prefix_covers: list[tuple[int, tuple[AffixEntry, ...]]] = []

        def extend_prefixes(pos: int, max_order: float, acc: list[AffixEntry]) -> None:
            prefix_covers.append((pos, tuple(acc)))
            if len(acc) >= max_affixes or pos >= len(word):
                return
            for length in self._prefix_lens:
                if pos + length > len(word):
                    break
                for entry in self._prefix_map.get(word[pos:pos + length], ()):
                    # Reading left to right, prefix chain_order is non-increasing
                    # (outermost prefix first, lowest order next to the root).
                    if entry.chain_order <= max_order:
                        acc.append(entry)
                        extend_prefixes(pos + length, entry.chain_order, acc)
                        acc.pop()

        extend_prefixes(0, float("inf"), [])

        def suffix_covers(pos: int, min_order: int, budget: int,
                          acc: list[AffixEntry], out: list[tuple[AffixEntry, ...]]) -> None:
            if pos == len(word):
                out.append(tuple(acc))
                return
            if budget == 0:
                return
            for length in self._suffix_lens:
                if pos + length > len(word):
                    break
                for entry in self._suffix_map.get(word[pos:pos + length], ()):
                    if entry.chain_order >= min_order:
                        acc.append(entry)
                        suffix_covers(pos + length, entry.chain_order, budget - 1, acc, out)
                        acc.pop()

        for start, prefixes in prefix_covers:
            budget = max_affixes - len(prefixes)
            for length in self._root_lens:
                if start + length > len(word):
                    continue
                stem = word[start:start + length]
                roots = self._root_map.get(stem)
                if not roots:
                    continue
                covers: list[tuple[AffixEntry, ...]] = []
                suffix_covers(start + length, 0, budget, [], covers)
                for suffixes in covers:
                    chain = self._matches_chain(prefixes, suffixes)
                    for root in roots:
                        yield Decomposition(root, stem, prefixes, suffixes, chain)

    def _matches_chain(self, prefixes: tuple[AffixEntry, ...],
                       suffixes: tuple[AffixEntry, ...]) -> bool:
        if not self._chain_templates:
            return False
        if suffixes and tuple(a.category for a in suffixes) in self._chain_templates:
            return True
        return bool(prefixes) and tuple(a.category for a in prefixes) in self._chain_templates

    def decompose(self, word: str, require_affix: bool = False,
                  chain_only: bool = False) -> Optional[Decomposition]:
        """Best-scoring [prefix*] root [suffix*] cover of the word, if any."""
        best: Optional[Decomposition] = None
        best_key: Optional[tuple] = None
        for cand in self._candidates(word, self.config.max_affix_chain):
            if require_affix and cand.token_count == 1:
                continue
            if chain_only and not cand.chain_match:
                continue
            key = cand.sort_key()
            if best_key is None or key < best_key:
                best, best_key = cand, key
        return best

    def decompose_morphological(self, word: str) -> Optional[list[Token]]:
        result = self.decompose(word)
        return list(result.tokens()) if result is not None else None

    def match_verb_chain(self, word: str) -> Optional[list[Token]]:
        """Best decomposition whose affix category sequence matches a template."""
        result = self.decompose(word, chain_only=True)
        return list(result.tokens()) if result is not None else None

    # ----- Tier 2: syllabification --------------------------------------------

    def syllabify(self, word: str) -> list[Token]:
        symbols: list[str] = []
        for ch in word:
            sym = self._symbol_map.get(ch)
            if sym is None:
                raise TokenizeError(f"unsyllabifiable: {ch!r} has no syllable class")
            symbols.append(sym)
        tokens: list[Token] = []
        pos = 0
        while pos < len(word):
            for _idx, pattern in self._patterns:
                length = len(pattern.pattern)
                if pos + length <= len(word) and \
                        "".join(symbols[pos:pos + length]) == pattern.pattern:
                    tokens.append(Token(word[pos:pos + length], 2, CATEGORY_SYLLABLE))
                    pos += length
                    break
            else:
                raise TokenizeError(f"unsyllabifiable: no pattern matches at position {pos}")
        return tokens

    # ----- Tier 3: grapheme fallback ------------------------------------------

    def grapheme_split(self, word: str) -> list[Token]:
        return [Token(cluster, 3, CATEGORY_GRAPHEME)
                for cluster in split_graphemes(word, self.pack.script)]

    # ----- Word and text entry points -----------------------------------------

    def tokenize_word(self, word: str) -> Segmentation:
        """Segment one normalized, whitespace-free word; never fails on non-empty input."""
        if not word:
            raise TokenizeError("empty word")
        if word in self._whole_words:
            tokens = [Token(word, 0, CATEGORY_WHOLE_WORD, is_word_initial=True)]
            return Segmentation(word, tuple(tokens), 0)
        decomposition = self.decompose(word)
        if decomposition is not None:
            tokens = list(decomposition.tokens())
        else:
            try:
                tokens = self.syllabify(word)
            except TokenizeError:
                tokens = self.grapheme_split(word)
        tokens[0] = Token(tokens[0].surface, tokens[0].tier, tokens[0].category,
                          is_word_initial=True)
        return Segmentation(word, tuple(tokens), max(t.tier for t in tokens))

    def tokenize_text(self, text: str) -> list[Piece]:
        """Normalize, pre-tokenize and segment running text.

        Whitespace runs become Separator records; punctuation and digit runs
        become single-token segmentations and never enter tiers 0-3.
        """
        normalized = self.pack.normalize(text)
        pieces: list[Piece] = []
        for kind, run in _pretokenize(normalized):
            if kind == "space":
                pieces.append(Separator(run))
            elif kind == "word":
                pieces.append(self.tokenize_word(run))
            else:
                category = CATEGORY_NUMBER if kind == "number" else CATEGORY_PUNCTUATION
                token = Token(run, 0, category, is_word_initial=True)
                pieces.append(Segmentation(run, (token,), 0))
        return pieces

    # ----- ID mapping ----------------------------------------------------------

    def encode(self, text: str) -> list[int]:
        ids: list[int] = []
        for piece in self.tokenize_text(text):
            if isinstance(piece, Separator):
                self._encode_surface(piece.surface, True, ids)
            else:
                for token in piece.tokens:
                    self._encode_surface(token.surface, token.is_word_initial, ids)
        return ids

    def _encode_surface(self, surface: str, initial: bool, ids: list[int]) -> None:
        token_id = self.vocab.id_of(surface, initial)
        if token_id is not None:
            ids.append(token_id)
            return
        if self.config.unknown_policy == "single_unknown":
            ids.append(UNK_ID)
            return
        for i, cluster in enumerate(split_graphemes(surface, self.pack.script)):
            flag = initial if i == 0 else False
            cluster_id = self.vocab.id_of(cluster, flag)
            ids.append(cluster_id if cluster_id is not None else UNK_ID)

    def decode(self, ids: list[int]) -> str:
        return "".join(self.vocab.surface_of(i) for i in ids)


def detokenize(pieces: Iterable[Piece]) -> str:
    """Exact reconstruction of the normalized input text."""
    out: list[str] = []
    for piece in pieces:
        if isinstance(piece, Separator):
            out.append(piece.surface)
        else:
            out.extend(t.surface for t in piece.tokens)
    return "".join(out)


def _char_kind(ch: str) -> str:
    if ch.isspace():
        return "space"
    category = unicodedata.category(ch)
    if category == "Nd":
        return "number"
    if category[0] in ("P", "S"):
        return "punct"
    return "word"


def _pretokenize(text: str) -> list[tuple[str, str]]:
    """Split text into maximal runs of (space | number | punct | word) characters."""
    runs: list[tuple[str, str]] = []
    start = 0
    current: Optional[str] = None
    for i, ch in enumerate(text):
        kind = _char_kind(ch)
        if kind != current:
            if current is not None:
                runs.append((current, text[start:i]))
            current, start = kind, i
    if current is not None:
        runs.append((current, text[start:]))
    return runs

"""Vocabulary table and the three-phase vocabulary builder.

Phase 1 is the base linguistic inventory (root stems, affix surfaces,
generable syllables, script characters).  Phase 2 adds corpus-validated
root+affix combinations.  Phase 3 fills with attested high-frequency whole
words up to the target size.  The build is a pure function of its inputs.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from pathlib import Path
from typing import TYPE_CHECKING, Iterable, Optional

from .errors import VocabError
from .pack import LanguagePack

if TYPE_CHECKING:
    from .corpus import CorpusCounts

UNK, PAD, BOS, EOS = "<unk>", "<pad>", "<bos>", "<eos>"
SPECIALS = (UNK, PAD, BOS, EOS)
UNK_ID = 0

PROVENANCES = ("special", "phase1_root", "phase1_affix", "phase1_syllable",
               "phase1_char", "phase2_generated", "phase3_attested")

# Script-independent characters always present in phase 1 so that encode()
# can represent separators, digits and common punctuation.
_STRUCTURAL_CHARS = tuple(" \t\n0123456789.,;:!?\"'()-–—")


@dataclass(frozen=True)
class VocabEntry:
    surface: str
    word_initial: bool
    provenance: str


@dataclass
class Vocabulary:
    entries: list[VocabEntry] = field(default_factory=list)
    language_id: Optional[str] = None
    normalization: Optional[str] = None
    _index: dict[tuple[str, bool], int] = field(default_factory=dict, repr=False)

    def __post_init__(self) -> None:
        self._index = {(e.surface, e.word_initial): i for i, e in enumerate(self.entries)}
        if len(self._index) != len(self.entries):
            raise VocabError("duplicate (surface, flag) entries in vocabulary")

    def __len__(self) -> int:
        return len(self.entries)

    def id_of(self, surface: str, word_initial: bool) -> Optional[int]:
        return self._index.get((surface, word_initial))

    def surface_of(self, token_id: int) -> str:
        if not 0 <= token_id < len(self.entries):
            raise VocabError(f"invalid token id: {token_id}")
        return self.entries[token_id].surface

    def whole_word_set(self) -> frozenset[str]:
        """Surfaces usable as single-token whole words (Tier 0 lookup set)."""
        return frozenset(e.surface for e in self.entries
                         if e.word_initial and e.provenance != "special")


def empty_vocabulary(language_id: Optional[str] = None,
                     normalization: Optional[str] = None) -> Vocabulary:
    entries = [VocabEntry(s, True, "special") for s in SPECIALS]
    return Vocabulary(entries=entries, language_id=language_id, normalization=normalization)


@dataclass(frozen=True)
class VocabBuildConfig:
    target_size: int
    min_freq_phase2: int = 3
    min_freq_phase3: int = 3
    max_generated_affixes: int = 3

    def __post_init__(self) -> None:
        if self.target_size < 1:
            raise VocabError("target_size must be positive")
        if self.min_freq_phase2 < 1 or self.min_freq_phase3 < 1:
            raise VocabError("min_freq thresholds must be positive")
        if self.max_generated_affixes < 1:
            raise VocabError("max_generated_affixes must be positive")


def _generate_syllables(pack: LanguagePack) -> list[str]:
    """All syllable strings generable from patterns of up to four symbols.

    A V symbol expands to dependent vowel signs when it follows a C (abugida
    orthography) and to independent vowels otherwise.
    """
    mapping = pack.script.classes
    consonants = [c for c, cls in mapping if cls == "consonant"]
    vowels = [c for c, cls in mapping if cls == "vowel"]
    signs = [c for c, cls in mapping if cls == "vowel_sign"]
    modifiers = [c for c, cls in mapping if cls in ("virama", "modifier")]
    out: list[str] = []
    patterns = sorted(pack.syllable_patterns, key=lambda p: -p.priority)
    for pat in patterns:
        if len(pat.pattern) > 4:
            continue
        choices: list[list[str]] = []
        for i, sym in enumerate(pat.pattern):
            if sym == "C":
                choices.append(consonants)
            elif sym == "M":
                choices.append(modifiers)
            else:
                after_consonant = i > 0 and pat.pattern[i - 1] == "C"
                choices.append(signs if (after_consonant and signs) else vowels)
        if any(not c for c in choices):
            continue
        out.extend("".join(combo) for combo in itertools.product(*choices))
    return out


def build_phase1(pack: LanguagePack) -> list[VocabEntry]:
    """Base linguistic inventory: roots, affixes, syllables, characters."""
    entries: list[VocabEntry] = []
    seen: set[tuple[str, bool]] = set()

    def add(surface: str, initial: bool, provenance: str) -> None:
        key = (surface, initial)
        if surface and key not in seen:
            seen.add(key)
            entries.append(VocabEntry(surface, initial, provenance))

    for root in pack.roots:
        for stem in root.surface_stems:
            add(stem, True, "phase1_root")
    for affix in pack.affixes:
        add(affix.surface, affix.position == "prefix", "phase1_affix")
    for syllable in _generate_syllables(pack):
        add(syllable, True, "phase1_syllable")
        add(syllable, False, "phase1_syllable")
    for chars, _cls in pack.script.classes:
        add(chars, True, "phase1_char")
        add(chars, False, "phase1_char")
    for ch in _STRUCTURAL_CHARS:
        add(ch, True, "phase1_char")
        add(ch, False, "phase1_char")
    return entries


def build_phase2(pack: LanguagePack, counts: "CorpusCounts", cfg: VocabBuildConfig,
                 existing: Iterable[VocabEntry] = ()) -> list[VocabEntry]:
    """Corpus-validated root+affix surface forms.

    Generation intersects with the corpus vocabulary: only word types actually
    attested >= min_freq_phase2 times are tested for decomposability, so the
    combinatorial root x affix product is never materialized.
    """
    from .tokenizer import Tokenizer, TokenizerConfig

    taken = {(e.surface, e.word_initial) for e in existing}
    tok = Tokenizer(pack, empty_vocabulary(pack.language_id, pack.normalization),
                    TokenizerConfig(max_affix_chain=cfg.max_generated_affixes))
    candidates: list[tuple[int, str]] = []
    for word, freq in counts.counts.items():
        if freq < cfg.min_freq_phase2 or (word, True) in taken:
            continue
        if tok.decompose(word, require_affix=True) is not None:
            candidates.append((freq, word))
    candidates.sort(key=lambda item: (-item[0], item[1]))
    return [VocabEntry(word, True, "phase2_generated") for _freq, word in candidates]


def build_phase3(counts: "CorpusCounts", existing: Iterable[VocabEntry],
                 cfg: VocabBuildConfig) -> list[VocabEntry]:
    """Attested whole words, by descending frequency, until target_size."""
    existing = list(existing)
    taken = {(e.surface, e.word_initial) for e in existing}
    room = cfg.target_size - len(existing)
    if room < 0:
        raise VocabError(
            f"target_size too small: minimum feasible size is {len(existing)} "
            f"(phases 1-2 plus specials), got {cfg.target_size}")
    candidates = [(freq, word) for word, freq in counts.counts.items()
                  if freq >= cfg.min_freq_phase3 and (word, True) not in taken]
    candidates.sort(key=lambda item: (-item[0], item[1]))
    return [VocabEntry(word, True, "phase3_attested") for _freq, word in candidates[:room]]


def build_vocabulary(pack: LanguagePack, corpus_counts: "CorpusCounts",
                     cfg: VocabBuildConfig) -> Vocabulary:
    """Specials + phase 1 + phase 2 + phase 3, deterministically ordered."""
    entries = [VocabEntry(s, True, "special") for s in SPECIALS]
    phase1 = build_phase1(pack)
    floor = len(entries) + len(phase1)
    if cfg.target_size < floor:
        raise VocabError(
            f"target_size must cover the phase-1 inventory plus specials ({floor} entries)")
    entries.extend(phase1)
    entries.extend(build_phase2(pack, corpus_counts, cfg, existing=entries))
    entries.extend(build_phase3(corpus_counts, entries, cfg))
    return Vocabulary(entries=entries, language_id=pack.language_id,
                      normalization=pack.normalization)


def _escape(surface: str) -> str:
    return surface.replace("\\", "\\\\").replace("\t", "\\t").replace("\n", "\\n")


def _unescape(text: str) -> str:
    out: list[str] = []
    i = 0
    while i < len(text):
        if text[i] == "\\" and i + 1 < len(text):
            out.append({"\\": "\\", "t": "\t", "n": "\n"}.get(text[i + 1], text[i + 1]))
            i += 2
        else:
            out.append(text[i])
            i += 1
    return "".join(out)


def save_vocabulary(vocab: Vocabulary, path: str | Path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        for i, e in enumerate(vocab.entries):
            flag = "I" if e.word_initial else "C"
            fh.write(f"{i}\t{flag}\t{_escape(e.surface)}\t{e.provenance}\n")


def load_vocabulary(path: str | Path) -> Vocabulary:
    entries: list[VocabEntry] = []
    seen: dict[tuple[str, bool], int] = {}
    with open(path, encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.rstrip("\n")
            if not line:
                continue
            cols = line.split("\t")
            if len(cols) != 4:
                raise VocabError(f"{path}:{lineno}: expected 4 columns, got {len(cols)}")
            id_col, flag, surface_col, provenance = cols
            try:
                entry_id = int(id_col)
            except ValueError:
                raise VocabError(f"{path}:{lineno}: bad id {id_col!r}") from None
            if entry_id != len(entries):
                raise VocabError(f"{path}:{lineno}: ids must be dense and ascending, got {entry_id}")
            if flag not in ("I", "C"):
                raise VocabError(f"{path}:{lineno}: flag must be I or C, got {flag!r}")
            if provenance not in PROVENANCES:
                raise VocabError(f"{path}:{lineno}: unknown provenance {provenance!r}")
            surface = _unescape(surface_col)
            key = (surface, flag == "I")
            if key in seen:
                raise VocabError(
                    f"{path}:{lineno}: duplicate entry {surface!r}/{flag}, first at line {seen[key]}")
            seen[key] = lineno
            entries.append(VocabEntry(surface, flag == "I", provenance))
    if len(entries) < len(SPECIALS) or tuple(e.surface for e in entries[:4]) != SPECIALS:
        raise VocabError(f"{path}: lines 0-3 must be the specials {SPECIALS}")
    return Vocabulary(entries=entries)

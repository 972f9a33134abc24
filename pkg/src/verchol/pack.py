"""Declarative language pack: roots, affixes, verb chains, syllable patterns, script table.

A pack is a directory of UTF-8 tab-separated files (see ``PACK_FILES``).  All
language-specific knowledge lives here; the tokenizer core never hard-codes a
language.  Allomorphy and sandhi are encoded by exhaustive surface listing:
one AffixEntry per surface variant (grouped by ``allomorph_group``) and extra
oblique ``surface_stems`` on roots.
"""
from __future__ import annotations

import unicodedata
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Optional

from .errors import PackError

POS_TAGS = ("noun", "verb", "other")
POSITIONS = ("suffix", "prefix")
CATEGORIES = ("case", "tense", "png", "plural", "participle", "postposition", "clitic", "other")
SCRIPT_CLASSES = ("consonant", "vowel", "vowel_sign", "virama", "modifier", "digit", "other")
# Character classes that join onto the preceding base character in a grapheme cluster.
JOINING_CLASSES = frozenset({"vowel_sign", "virama", "modifier"})
NORMALIZATION_FORMS = ("NFC", "NFD", "NFKC", "none")
PACK_FILES = ("pack.meta", "roots.tsv", "affixes.tsv", "verb_chains.tsv", "syllables.tsv", "script.tsv")

SYLLABLE_SYMBOLS = frozenset("CVM")


def normalize_text(text: str, form: str) -> str:
    """Apply the pack's declared Unicode normalization form ('none' is identity)."""
    if form == "none":
        return text
    return unicodedata.normalize(form, text)


@dataclass(frozen=True)
class RootEntry:
    lemma: str
    surface_stems: tuple[str, ...]  # lemma plus oblique/alternate word-initial stems
    pos: str = "other"
    frequency_hint: Optional[int] = None


@dataclass(frozen=True)
class AffixEntry:
    surface: str
    position: str  # "suffix" | "prefix"
    category: str
    allomorph_group: str
    chain_order: int  # lower attaches closer to the root


@dataclass(frozen=True)
class VerbChainTemplate:
    name: str
    sequence: tuple[str, ...]  # affix categories outward from the root
    example: Optional[str] = None


@dataclass(frozen=True)
class SyllablePattern:
    pattern: str  # over symbols C (consonant), V (vowel/vowel sign), M (virama/modifier)
    priority: int  # higher tried first


@dataclass(frozen=True)
class ScriptTable:
    """Ordered map from character (or combining sequence) to character class."""

    classes: tuple[tuple[str, str], ...]

    @property
    def mapping(self) -> dict[str, str]:
        return dict(self.classes)

    def class_of(self, chars: str) -> Optional[str]:
        return self.mapping.get(chars)


@dataclass(frozen=True)
class LanguagePack:
    language_id: str
    roots: tuple[RootEntry, ...]
    affixes: tuple[AffixEntry, ...]
    verb_chains: tuple[VerbChainTemplate, ...]
    syllable_patterns: tuple[SyllablePattern, ...]
    script: ScriptTable
    normalization: str = "NFC"

    def normalize(self, text: str) -> str:
        return normalize_text(text, self.normalization)


@dataclass
class ValidationReport:
    violations: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def add(self, message: str) -> None:
        self.violations.append(message)


def _data_lines(path: Path) -> Iterable[tuple[int, str]]:
    with open(path, encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.rstrip("\n")
            if not line.strip() or line.lstrip().startswith("#"):
                continue
            yield lineno, line


def _parse_int(value: str, path: Path, lineno: int, what: str) -> int:
    try:
        return int(value)
    except ValueError:
        raise PackError(f"{path.name}:{lineno}: {what} must be an integer, got {value!r}") from None


def load_language_pack(directory_path: str | Path) -> LanguagePack:
    """Load and normalize a pack directory; entry order follows the files."""
    directory = Path(directory_path)
    for name in PACK_FILES:
        if not (directory / name).is_file():
            raise PackError(f"pack incomplete: {name}")

    meta: dict[str, str] = {}
    for lineno, line in _data_lines(directory / "pack.meta"):
        if "=" not in line:
            raise PackError(f"pack.meta:{lineno}: expected key=value, got {line!r}")
        key, _, value = line.partition("=")
        meta[key.strip()] = value.strip()
    language_id = meta.get("language_id")
    if not language_id:
        raise PackError("pack.meta: missing language_id")
    norm = meta.get("normalization", "NFC")
    if norm not in NORMALIZATION_FORMS:
        raise PackError(f"pack.meta: unknown normalization form {norm!r}")

    def n(text: str) -> str:
        return normalize_text(text, norm)

    roots: list[RootEntry] = []
    seen_roots: dict[tuple[str, str], int] = {}
    duplicates: list[str] = []
    path = directory / "roots.tsv"
    for lineno, line in _data_lines(path):
        cols = line.split("\t")
        if len(cols) not in (3, 4):
            raise PackError(f"{path.name}:{lineno}: expected 3 or 4 columns, got {len(cols)}")
        lemma, pos, stems_col = n(cols[0]), cols[1], cols[2]
        if pos not in POS_TAGS:
            raise PackError(f"{path.name}:{lineno}: unknown pos {pos!r}")
        stems = tuple(n(s) for s in stems_col.split(",") if s)
        hint = _parse_int(cols[3], path, lineno, "freq_hint") if len(cols) == 4 and cols[3] else None
        key = (lemma, pos)
        if key in seen_roots:
            duplicates.append(f"{path.name}:{lineno}: duplicate root ({lemma}, {pos}), first at line {seen_roots[key]}")
        seen_roots[key] = lineno
        roots.append(RootEntry(lemma=lemma, surface_stems=stems, pos=pos, frequency_hint=hint))

    affixes: list[AffixEntry] = []
    seen_affixes: dict[tuple, int] = {}
    path = directory / "affixes.tsv"
    for lineno, line in _data_lines(path):
        cols = line.split("\t")
        if len(cols) != 5:
            raise PackError(f"{path.name}:{lineno}: expected 5 columns, got {len(cols)}")
        surface, position, category, group = n(cols[0]), cols[1], cols[2], cols[3]
        if position not in POSITIONS:
            raise PackError(f"{path.name}:{lineno}: unknown position {position!r}")
        if category not in CATEGORIES:
            raise PackError(f"{path.name}:{lineno}: unknown category {category!r}")
        order = _parse_int(cols[4], path, lineno, "chain_order")
        entry = AffixEntry(surface=surface, position=position, category=category,
                           allomorph_group=group, chain_order=order)
        key = (surface, position, category, group, order)
        if key in seen_affixes:
            duplicates.append(f"{path.name}:{lineno}: duplicate affix {surface!r}, first at line {seen_affixes[key]}")
        seen_affixes[key] = lineno
        affixes.append(entry)

    chains: list[VerbChainTemplate] = []
    seen_chains: dict[str, int] = {}
    path = directory / "verb_chains.tsv"
    for lineno, line in _data_lines(path):
        cols = line.split("\t")
        if len(cols) not in (2, 3):
            raise PackError(f"{path.name}:{lineno}: expected 2 or 3 columns, got {len(cols)}")
        name, cats = cols[0], tuple(c for c in cols[1].split(",") if c)
        for cat in cats:
            if cat not in CATEGORIES:
                raise PackError(f"{path.name}:{lineno}: unknown category {cat!r}")
        if name in seen_chains:
            duplicates.append(f"{path.name}:{lineno}: duplicate verb chain {name!r}, first at line {seen_chains[name]}")
        seen_chains[name] = lineno
        example = n(cols[2]) if len(cols) == 3 and cols[2] else None
        chains.append(VerbChainTemplate(name=name, sequence=cats, example=example))

    patterns: list[SyllablePattern] = []
    path = directory / "syllables.tsv"
    for lineno, line in _data_lines(path):
        cols = line.split("\t")
        if len(cols) != 2:
            raise PackError(f"{path.name}:{lineno}: expected 2 columns, got {len(cols)}")
        pat = cols[0]
        if not pat or any(sym not in SYLLABLE_SYMBOLS for sym in pat):
            raise PackError(f"{path.name}:{lineno}: pattern must be over symbols C,V,M, got {pat!r}")
        patterns.append(SyllablePattern(pattern=pat, priority=_parse_int(cols[1], path, lineno, "priority")))

    classes: list[tuple[str, str]] = []
    seen_chars: dict[str, int] = {}
    path = directory / "script.tsv"
    for lineno, line in _data_lines(path):
        cols = line.split("\t")
        if len(cols) != 2:
            raise PackError(f"{path.name}:{lineno}: expected 2 columns, got {len(cols)}")
        chars, cls = n(cols[0]), cols[1]
        if cls not in SCRIPT_CLASSES:
            raise PackError(f"{path.name}:{lineno}: unknown character class {cls!r}")
        if chars in seen_chars:
            duplicates.append(f"{path.name}:{lineno}: duplicate script entry {chars!r}, first at line {seen_chars[chars]}")
        seen_chars[chars] = lineno
        classes.append((chars, cls))

    if duplicates:
        raise PackError("duplicate entries:\n" + "\n".join(duplicates))

    return LanguagePack(
        language_id=language_id,
        roots=tuple(roots),
        affixes=tuple(affixes),
        verb_chains=tuple(chains),
        syllable_patterns=tuple(patterns),
        script=ScriptTable(classes=tuple(classes)),
        normalization=norm,
    )


def save_language_pack(pack: LanguagePack, directory_path: str | Path) -> None:
    """Serialize a pack back to its directory format (loader roundtrip)."""
    directory = Path(directory_path)
    directory.mkdir(parents=True, exist_ok=True)
    (directory / "pack.meta").write_text(
        f"language_id={pack.language_id}\nnormalization={pack.normalization}\n", encoding="utf-8")
    with open(directory / "roots.tsv", "w", encoding="utf-8") as fh:
        for r in pack.roots:
            hint = "" if r.frequency_hint is None else f"\t{r.frequency_hint}"
            fh.write(f"{r.lemma}\t{r.pos}\t{','.join(r.surface_stems)}{hint}\n")
    with open(directory / "affixes.tsv", "w", encoding="utf-8") as fh:
        for a in pack.affixes:
            fh.write(f"{a.surface}\t{a.position}\t{a.category}\t{a.allomorph_group}\t{a.chain_order}\n")
    with open(directory / "verb_chains.tsv", "w", encoding="utf-8") as fh:
        for c in pack.verb_chains:
            example = f"\t{c.example}" if c.example else ""
            fh.write(f"{c.name}\t{','.join(c.sequence)}{example}\n")
    with open(directory / "syllables.tsv", "w", encoding="utf-8") as fh:
        for p in pack.syllable_patterns:
            fh.write(f"{p.pattern}\t{p.priority}\n")
    with open(directory / "script.tsv", "w", encoding="utf-8") as fh:
        for chars, cls in pack.script.classes:
            fh.write(f"{chars}\t{cls}\n")


def validate_pack(pack: LanguagePack) -> ValidationReport:
    """Check all pack invariants; violations are report entries, never exceptions."""
    report = ValidationReport()
    n = pack.normalize

    seen_roots: set[tuple[str, str]] = set()
    for r in pack.roots:
        if not r.surface_stems:
            report.add(f"root {r.lemma!r}: surface_stems is empty")
        elif r.lemma not in r.surface_stems:
            report.add(f"root {r.lemma!r}: surface_stems does not contain the lemma")
        for stem in r.surface_stems:
            if not n(stem):
                report.add(f"root {r.lemma!r}: empty surface stem")
            elif n(stem) != stem:
                report.add(f"root {r.lemma!r}: stem {stem!r} is not in {pack.normalization} form")
        if r.pos not in POS_TAGS:
            report.add(f"root {r.lemma!r}: unknown pos {r.pos!r}")
        if r.frequency_hint is not None and r.frequency_hint < 0:
            report.add(f"root {r.lemma!r}: negative frequency_hint")
        key = (r.lemma, r.pos)
        if key in seen_roots:
            report.add(f"duplicate root ({r.lemma}, {r.pos})")
        seen_roots.add(key)

    groups: dict[str, tuple[str, str]] = {}
    for a in pack.affixes:
        if not a.surface:
            report.add("affix with empty surface")
            continue
        if n(a.surface) != a.surface:
            report.add(f"affix {a.surface!r}: not in {pack.normalization} form")
        if a.position not in POSITIONS:
            report.add(f"affix {a.surface!r}: unknown position {a.position!r}")
        if a.category not in CATEGORIES:
            report.add(f"affix {a.surface!r}: unknown category {a.category!r}")
        if a.chain_order < 0:
            report.add(f"affix {a.surface!r}: chain_order must be >= 0")
        sig = (a.position, a.category)
        if a.allomorph_group in groups and groups[a.allomorph_group] != sig:
            report.add(
                f"allomorph group {a.allomorph_group!r}: inconsistent position/category "
                f"({groups[a.allomorph_group]} vs {sig})")
        groups.setdefault(a.allomorph_group, sig)

    for c in pack.verb_chains:
        if not c.sequence:
            report.add(f"verb chain {c.name!r}: empty sequence")
        for cat in c.sequence:
            if cat not in CATEGORIES:
                report.add(f"verb chain {c.name!r}: unknown category {cat!r}")

    for p in pack.syllable_patterns:
        if not p.pattern:
            report.add("empty syllable pattern")
            continue
        if any(sym not in SYLLABLE_SYMBOLS for sym in p.pattern):
            report.add(f"syllable pattern {p.pattern!r}: symbols must be C, V or M")
        elif "V" not in p.pattern and "C" not in p.pattern:
            # Final-consonant patterns (C with trailing modifiers) are allowed;
            # a pattern of bare modifiers is not a syllable.
            report.add(f"syllable pattern {p.pattern!r}: needs a vowel or a standalone consonant")

    mapping = pack.script.mapping
    for cls in mapping.values():
        if cls not in SCRIPT_CLASSES:
            report.add(f"script table: unknown class {cls!r}")

    def check_classified(surface: str, owner: str) -> None:
        i = 0
        keys_by_len = sorted({len(k) for k in mapping}, reverse=True)
        while i < len(surface):
            for length in keys_by_len:
                if surface[i:i + length] in mapping:
                    i += length
                    break
            else:
                report.add(f"{owner}: character {surface[i]!r} (U+{ord(surface[i]):04X}) not classified in script table")
                i += 1

    for r in pack.roots:
        for stem in r.surface_stems:
            check_classified(stem, f"root {r.lemma!r}")
    for a in pack.affixes:
        check_classified(a.surface, f"affix {a.surface!r}")

    return report


def allomorph_surfaces(pack: LanguagePack, group: str) -> set[str]:
    """All surface variants registered under one allomorph group."""
    surfaces = {a.surface for a in pack.affixes if a.allomorph_group == group}
    if not surfaces:
        raise PackError(f"no such allomorph group: {group}")
    return surfaces

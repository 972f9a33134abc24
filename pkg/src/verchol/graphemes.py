"""Extended grapheme cluster segmentation driven by a script table.

Characters classified as vowel signs or viramas/modifiers join the preceding
base character; unclassified combining marks (categories Mn, Mc, Me) and the
zero-width joiner fall back to Unicode default joining.  Multi-character
script-table entries (ligature sequences) are matched greedily, longest first.
"""
from __future__ import annotations

import unicodedata
from typing import Optional

from .pack import JOINING_CLASSES, ScriptTable

_ZWJ = "‍"
_ZWNJ = "‌"


def _default_joins(ch: str) -> bool:
    return ch in (_ZWJ, _ZWNJ) or unicodedata.category(ch) in ("Mn", "Mc", "Me")


def split_graphemes(text: str, script: Optional[ScriptTable] = None) -> list[str]:
    """Split text into extended grapheme clusters.

    A word-initial combining mark forms its own cluster.
    """
    mapping = script.mapping if script is not None else {}
    seq_lens = sorted({len(k) for k in mapping if len(k) > 1}, reverse=True)
    clusters: list[str] = []
    i = 0
    while i < len(text):
        # Explicit multi-character sequences win over per-character joining.
        for length in seq_lens:
            if text[i:i + length] in mapping:
                clusters.append(text[i:i + length])
                i += length
                break
        else:
            ch = text[i]
            cls = mapping.get(ch)
            joins = cls in JOINING_CLASSES if cls is not None else _default_joins(ch)
            if joins and clusters:
                clusters[-1] += ch
            else:
                clusters.append(ch)
            i += 1
    return clusters


def grapheme_length(text: str, script: Optional[ScriptTable] = None) -> int:
    return len(split_graphemes(text, script))

"""Independent exhaustive-search oracle for morphological decomposition.

Deliberately naive and structurally different from the production matcher:
it enumerates every cover of the word by known surfaces via plain recursion,
labels spans in every possible way, filters validity afterwards, and takes
the minimum under the shared scoring rule.
"""
from itertools import product


def _covers(word, surfaces):
    """All ways to split word into spans, each present in `surfaces`."""
    results = []

    def rec(pos, acc):
        if pos == len(word):
            results.append(tuple(acc))
            return
        for end in range(pos + 1, len(word) + 1):
            span = word[pos:end]
            if span in surfaces:
                acc.append(span)
                rec(end, acc)
                acc.pop()

    rec(0, [])
    return results


def oracle_decompose(pack, word, max_affix_chain=6):
    """Best (root_lemma, root_stem, [token surfaces]) cover or None."""
    stems = {}
    for root in pack.roots:
        for stem in root.surface_stems:
            stems.setdefault(stem, []).append(root)
    prefixes = {}
    suffixes = {}
    for affix in pack.affixes:
        (prefixes if affix.position == "prefix" else suffixes).setdefault(
            affix.surface, []).append(affix)
    templates = {t.sequence for t in pack.verb_chains}
    all_surfaces = set(stems) | set(prefixes) | set(suffixes)

    candidates = []
    for cover in _covers(word, all_surfaces):
        for root_pos, root_span in enumerate(cover):
            roots = stems.get(root_span)
            if not roots:
                continue
            before, after = cover[:root_pos], cover[root_pos + 1:]
            if len(before) + len(after) > max_affix_chain:
                continue
            if not all(span in prefixes for span in before):
                continue
            if not all(span in suffixes for span in after):
                continue
            for pre_entries in product(*(prefixes[s] for s in before)):
                orders = [a.chain_order for a in pre_entries]
                if any(orders[i] < orders[i + 1] for i in range(len(orders) - 1)):
                    continue  # reading order must be non-increasing toward the root
                for suf_entries in product(*(suffixes[s] for s in after)):
                    orders = [a.chain_order for a in suf_entries]
                    if any(orders[i] > orders[i + 1] for i in range(len(orders) - 1)):
                        continue
                    chain = bool(
                        (suf_entries and tuple(a.category for a in suf_entries) in templates)
                        or (pre_entries and tuple(a.category for a in pre_entries) in templates))
                    for root in roots:
                        affixes = pre_entries + suf_entries
                        key = (
                            1 + len(affixes),
                            -len(root_span),
                            0 if chain else 1,
                            sum(a.chain_order for a in affixes),
                            tuple(a.surface for a in affixes),
                        )
                        tokens = list(before) + [root_span] + list(after)
                        candidates.append((key, root.lemma, root_span, tokens))
    if not candidates:
        return None
    key, lemma, stem, tokens = min(candidates, key=lambda c: c[0])
    return lemma, stem, tokens

import pytest

from verchol import (VocabBuildConfig, VocabError, Vocabulary, build_vocabulary,
                     load_vocabulary, save_vocabulary)
from verchol.corpus import CorpusCounts
from verchol.vocab import (SPECIALS, UNK_ID, VocabEntry, build_phase1, build_phase2,
                           build_phase3, empty_vocabulary)


def counts_of(**words):
    return CorpusCounts(counts=dict(words))


def test_specials_occupy_ids_0_to_3(tr_pack):
    vocab = build_vocabulary(tr_pack, counts_of(ev=5),
                             VocabBuildConfig(target_size=6000))
    assert tuple(e.surface for e in vocab.entries[:4]) == SPECIALS
    assert UNK_ID == 0
    assert vocab.surface_of(0) == "<unk>"


def test_phase1_contains_stems_affixes_syllables_chars(tr_pack):
    entries = build_phase1(tr_pack)
    by_key = {(e.surface, e.word_initial): e.provenance for e in entries}
    assert by_key[("ev", True)] == "phase1_root"
    assert by_key[("ler", False)] == "phase1_affix"   # suffix: continuation flag
    assert ("ler", True) in by_key                     # also a generated syllable/char form
    assert by_key[("a", True)] == "phase1_char" or by_key[("a", True)] == "phase1_syllable"
    assert (" ", True) in by_key and ("7", False) in by_key


def test_phase1_prefixes_carry_initial_flag(sw_pack):
    entries = build_phase1(sw_pack)
    provs = {(e.surface, e.word_initial): e.provenance for e in entries}
    assert provs[("ni", True)] == "phase1_affix"


def test_phase2_frequency_threshold_and_order(tr_pack):
    counts = counts_of(evler=5, evden=2, evlerden=4)
    cfg = VocabBuildConfig(target_size=6000, min_freq_phase2=3)
    phase2 = build_phase2(tr_pack, counts, cfg)
    assert [e.surface for e in phase2] == ["evler", "evlerden"]
    assert all(e.provenance == "phase2_generated" for e in phase2)

    relaxed = VocabBuildConfig(target_size=6000, min_freq_phase2=2)
    phase2 = build_phase2(tr_pack, counts, relaxed)
    assert [e.surface for e in phase2] == ["evler", "evlerden", "evden"]


def test_phase2_requires_at_least_one_affix(tr_pack):
    # a bare root attested in the corpus is not a phase-2 entry
    phase2 = build_phase2(tr_pack, counts_of(ev=50), VocabBuildConfig(target_size=6000))
    assert phase2 == []


def test_phase2_skips_non_decomposable_words(tr_pack):
    phase2 = build_phase2(tr_pack, counts_of(zzz=99, evler=99),
                          VocabBuildConfig(target_size=6000))
    assert [e.surface for e in phase2] == ["evler"]


def test_phase3_fills_to_target_with_attested_words(tr_pack):
    existing = [VocabEntry(s, True, "special") for s in SPECIALS]
    counts = counts_of(kedi=9, zebra=9, abc=4, nadir=1)
    cfg = VocabBuildConfig(target_size=7, min_freq_phase3=3)
    phase3 = build_phase3(counts, existing, cfg)
    # room for 3; freq desc then lexicographic: kedi/zebra tie at 9
    assert [e.surface for e in phase3] == ["kedi", "zebra", "abc"]
    assert all(e.provenance == "phase3_attested" for e in phase3)


def test_phase3_respects_min_freq(tr_pack):
    existing = [VocabEntry(s, True, "special") for s in SPECIALS]
    phase3 = build_phase3(counts_of(tek=1), existing,
                          VocabBuildConfig(target_size=10, min_freq_phase3=2))
    assert phase3 == []


def test_target_size_boundaries(tr_pack):
    floor = len(build_phase1(tr_pack)) + 4  # phase 1 plus the four specials
    with pytest.raises(VocabError, match="must cover the phase-1 inventory"):
        build_vocabulary(tr_pack, counts_of(), VocabBuildConfig(target_size=floor - 1))
    # smallest legal target with no phase-2/3 material
    vocab = build_vocabulary(tr_pack, counts_of(), VocabBuildConfig(target_size=floor))
    assert len(vocab) == floor

    counts = counts_of(evler=9, evlerden=9)
    with pytest.raises(VocabError, match="target_size too small"):
        build_vocabulary(tr_pack, counts, VocabBuildConfig(target_size=floor + 1))


def test_build_is_deterministic_and_order_independent(tr_pack):
    cfg = VocabBuildConfig(target_size=6000)
    a = build_vocabulary(tr_pack, counts_of(evler=5, okul=4, evlerden=5), cfg)
    b = build_vocabulary(tr_pack, counts_of(evlerden=5, okul=4, evler=5), cfg)
    assert a.entries == b.entries


def test_save_load_roundtrip_with_escapes(tmp_path):
    entries = [VocabEntry(s, True, "special") for s in SPECIALS]
    entries += [
        VocabEntry("a\tb", True, "phase3_attested"),
        VocabEntry("back\\slash", True, "phase3_attested"),
        VocabEntry("\n", False, "phase1_char"),
        VocabEntry(" ", True, "phase1_char"),
    ]
    vocab = Vocabulary(entries)
    path = tmp_path / "v.vocab"
    save_vocabulary(vocab, path)
    loaded = load_vocabulary(path)
    assert loaded.entries == vocab.entries
    assert loaded.id_of("a\tb", True) == 4


def test_load_rejects_duplicates_naming_both_lines(tmp_path):
    path = tmp_path / "v.vocab"
    lines = [f"{i}\tI\t{s}\tspecial" for i, s in enumerate(SPECIALS)]
    lines += ["4\tI\tev\tphase1_root", "5\tI\tev\tphase1_root"]
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")
    with pytest.raises(VocabError, match=r"v.vocab:6: duplicate entry 'ev'/I, first at line 5"):
        load_vocabulary(path)


def test_load_rejects_bad_specials(tmp_path):
    path = tmp_path / "v.vocab"
    path.write_text("0\tI\tev\tphase1_root\n", encoding="utf-8")
    with pytest.raises(VocabError, match="specials"):
        load_vocabulary(path)


def test_load_rejects_sparse_ids(tmp_path):
    path = tmp_path / "v.vocab"
    lines = [f"{i}\tI\t{s}\tspecial" for i, s in enumerate(SPECIALS)]
    lines += ["7\tI\tev\tphase1_root"]
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")
    with pytest.raises(VocabError, match="dense"):
        load_vocabulary(path)


def test_whole_word_set_excludes_specials_and_continuations():
    entries = [VocabEntry(s, True, "special") for s in SPECIALS]
    entries += [VocabEntry("ev", True, "phase1_root"),
                VocabEntry("ler", False, "phase1_affix")]
    vocab = Vocabulary(entries)
    assert vocab.whole_word_set() == frozenset({"ev"})


def test_empty_vocabulary_has_only_specials():
    vocab = empty_vocabulary()
    assert len(vocab) == 4
    assert vocab.whole_word_set() == frozenset()

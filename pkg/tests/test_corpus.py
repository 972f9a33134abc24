import pytest

from verchol import (CorpusCounts, CorpusError, build_eval_set, corpus_stats,
                     count_corpus, count_corpus_file, stratified_sample)

from conftest import FIXTURES


def test_counting_skips_punctuation_digits_whitespace():
    counts = count_corpus(["ev, evler! 42\n", "ev\tokul\n"])
    assert counts.counts == {"ev": 2, "evler": 1, "okul": 1}
    assert counts.total_occurrences == 4
    assert counts.unique_types == 3


def test_counting_applies_normalization():
    # NFD input folds to the composed form under NFC counting
    counts = count_corpus(["év eév\n"], normalization="NFC")
    assert counts.counts == {"év": 1, "eév": 1}


def test_threaded_counts_match_single_threaded():
    lines = [f"ev evler okul{i % 7}x dene\n" for i in range(25000)]
    single = count_corpus(iter(lines), threads=1)
    multi = count_corpus(iter(lines), threads=4)
    assert single.counts == multi.counts


def test_fixture_corpus_loads(tr_pack):
    counts = count_corpus_file(FIXTURES / "corpus_tr.txt")
    assert counts.counts["ev"] > 0
    assert counts.counts["evlerinden"] > 0


def test_invalid_utf8_reports_byte_offset(tmp_path):
    path = tmp_path / "bad.txt"
    path.write_bytes(b"hello\nworld \xff\xfe\n")
    with pytest.raises(CorpusError, match="invalid UTF-8 at byte offset 12"):
        count_corpus_file(path)


def test_corpus_stats_strata_and_hapax():
    counts = CorpusCounts(counts={"a": 150, "b": 12, "c": 7, "d": 3, "e": 2,
                                  "f": 1, "g": 1, "h": 1})
    report = corpus_stats(counts)
    assert [n for _l, _lo, _hi, n in report.strata] == [1, 1, 1, 1, 1, 3]
    assert report.hapax_count == 3
    assert report.hapax_rate == pytest.approx(3 / 8)
    assert report.total_occurrences == 150 + 12 + 7 + 3 + 2 + 3
    assert report.unique_types == 8


def test_hapax_rate_example():
    # 3 hapaxes out of 5 types -> 0.6
    counts = CorpusCounts(counts={"a": 9, "b": 2, "c": 1, "d": 1, "e": 1})
    assert corpus_stats(counts).hapax_rate == pytest.approx(0.6)


def test_avg_word_length_uses_eval_words_when_given():
    counts = CorpusCounts(counts={"ab": 5, "abcdef": 1})
    assert corpus_stats(counts).avg_word_length_graphemes == pytest.approx(4.0)
    report = corpus_stats(counts, eval_words=["ab"])
    assert report.avg_word_length_graphemes == pytest.approx(2.0)


def test_overlapping_strata_rejected():
    counts = CorpusCounts(counts={"a": 1})
    with pytest.raises(CorpusError, match="overlapping frequency bands"):
        corpus_stats(counts, strata_spec=[("x", 1, 5), ("y", 5, 10)])
    with pytest.raises(CorpusError, match="overlapping frequency bands"):
        corpus_stats(counts, strata_spec=[("x", 1, None), ("y", 10, 20)])
    with pytest.raises(CorpusError, match="bounds must satisfy"):
        corpus_stats(counts, strata_spec=[("x", 5, 2)])
    with pytest.raises(CorpusError, match="bounds must satisfy"):
        corpus_stats(counts, strata_spec=[("x", 0, 2)])


def test_build_eval_set_ordering_and_threshold():
    counts = CorpusCounts(counts={"b": 5, "a": 5, "c": 9, "d": 1})
    assert build_eval_set(counts, min_freq=2) == ["c", "a", "b"]
    assert build_eval_set(counts, min_freq=1) == ["c", "a", "b", "d"]
    with pytest.raises(CorpusError, match="min_freq"):
        build_eval_set(counts, min_freq=0)


def test_stratified_sample_minimal():
    counts = CorpusCounts(counts={"a": 100, "b": 10, "c": 3})
    assert stratified_sample(counts, per_stratum=1, rare_band=(2, 5), seed=0) == \
        ["a", "b", "c"]


def test_stratified_sample_is_seed_stable():
    counts = CorpusCounts(counts={f"w{i}": f for i, f in
                                  enumerate([100, 90, 40, 30, 9, 8, 7, 5, 4, 3, 2, 2, 2])})
    one = stratified_sample(counts, per_stratum=3, seed=7)
    two = stratified_sample(counts, per_stratum=3, seed=7)
    assert one == two
    assert len(one) == 9


def test_stratified_sample_insufficient_types():
    with pytest.raises(CorpusError, match="insufficient types for the rare stratum"):
        stratified_sample(CorpusCounts(counts={"a": 100}), per_stratum=1)
    with pytest.raises(CorpusError, match="insufficient types for the medium stratum"):
        stratified_sample(CorpusCounts(counts={"a": 100, "b": 1}), per_stratum=2)
    with pytest.raises(CorpusError, match="insufficient types for the common stratum"):
        stratified_sample(CorpusCounts(counts={"a": 100}), per_stratum=5)

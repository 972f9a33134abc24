"""Language-parametric morphological tokenizer framework.

Four-tier segmentation (whole-word lookup, morphological decomposition,
syllabification, grapheme fallback), a three-phase vocabulary builder, a
grapheme-level BPE baseline, and a fertility evaluation harness.
"""

from .bpe import BpeModel, bpe_tokenize, load_bpe_model, save_bpe_model, train_bpe
from .corpus import (CorpusCounts, CorpusStatsReport, build_eval_set, corpus_stats,
                     count_corpus, count_corpus_file, stratified_sample)
from .errors import (AlignmentError, BpeError, CorpusError, PackError, TokenizeError,
                     VercholError, VocabError)
from .evaluate import (BpeAdapter, ExternAdapter, FertilityReport, MorphologicalAdapter,
                       TokenizerAdapter, evaluate, format_report_table,
                       root_preservation, throughput_bench)
from .graphemes import grapheme_length, split_graphemes
from .pack import (AffixEntry, LanguagePack, RootEntry, ScriptTable, SyllablePattern,
                   ValidationReport, VerbChainTemplate, allomorph_surfaces,
                   load_language_pack, normalize_text, save_language_pack, validate_pack)
from .tokenizer import (Segmentation, Separator, Token, Tokenizer, TokenizerConfig,
                        detokenize)
from .vocab import (SPECIALS, UNK_ID, VocabBuildConfig, VocabEntry, Vocabulary,
                    build_phase1, build_phase2, build_phase3, build_vocabulary,
                    empty_vocabulary, load_vocabulary, save_vocabulary)

__version__ = "0.1.0"

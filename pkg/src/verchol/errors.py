"""Exception hierarchy shared by all verchol modules."""


class VercholError(Exception):
    """Base class for data and usage errors raised by this package."""


class PackError(VercholError):
    """Language pack is missing, malformed, or internally inconsistent."""


class VocabError(VercholError):
    """Vocabulary file or build configuration problem."""


class BpeError(VercholError):
    """BPE model training or file problem."""


class CorpusError(VercholError):
    """Corpus stream or statistics problem."""


class TokenizeError(VercholError):
    """Invalid tokenizer input (empty word, bad token id, ...)."""


class AlignmentError(VercholError):
    """A tokenizer produced tokens that do not concatenate back to the word."""

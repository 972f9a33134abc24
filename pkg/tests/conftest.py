import pytest

from pathlib import Path

from verchol import Tokenizer, empty_vocabulary, load_language_pack

REPO = Path(__file__).resolve().parent.parent
PACKS = REPO / "packs"
FIXTURES = Path(__file__).resolve().parent / "fixtures"


@pytest.fixture(scope="session")
def tr_pack():
    return load_language_pack(PACKS / "tr")


@pytest.fixture(scope="session")
def fi_pack():
    return load_language_pack(PACKS / "fi")


@pytest.fixture(scope="session")
def sw_pack():
    return load_language_pack(PACKS / "sw")


@pytest.fixture(scope="session")
def ta_pack():
    return load_language_pack(PACKS / "ta-sample")


def bare_tokenizer(pack, **config_kwargs):
    from verchol import TokenizerConfig
    return Tokenizer(pack, empty_vocabulary(pack.language_id, pack.normalization),
                     TokenizerConfig(**config_kwargs) if config_kwargs else None)


@pytest.fixture(scope="session")
def tr_tok(tr_pack):
    return bare_tokenizer(tr_pack)


@pytest.fixture(scope="session")
def fi_tok(fi_pack):
    return bare_tokenizer(fi_pack)


@pytest.fixture(scope="session")
def sw_tok(sw_pack):
    return bare_tokenizer(sw_pack)


@pytest.fixture(scope="session")
def ta_tok(ta_pack):
    return bare_tokenizer(ta_pack)

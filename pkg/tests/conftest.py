import random

import pytest

from qshuffle.parser import parse_poly
from qshuffle.scalars import PolyRing
from qshuffle.scalars import QSeriesRing
from qshuffle.scalars import RationalRing
from qshuffle.word_algebra import EulerAlphabet
from qshuffle.word_algebra import QAlphabet
from qshuffle.word_algebra import ZAlphabet
from qshuffle.word_algebra import ZeroAlphabet

Z = ZAlphabet(RationalRing())
Q = QAlphabet(PolyRing(("eps",)))
E2 = EulerAlphabet(RationalRing(), 2)
E3 = EulerAlphabet(RationalRing(), 3)
ZERO = ZeroAlphabet(RationalRing())


def poly(text: str, alphabet=Z):
    return parse_poly(text, alphabet)


@pytest.fixture
def z():
    return Z


@pytest.fixture
def q():
    return Q


@pytest.fixture
def euler2():
    return E2


@pytest.fixture
def zero():
    return ZERO


@pytest.fixture(params=["z", "q", "euler3", "zero"])
def alphabet(request):
    return {"z": Z, "q": Q, "euler3": E3, "zero": ZERO}[request.param]


@pytest.fixture
def qseries_alphabet():
    return QAlphabet(QSeriesRing(20))


@pytest.fixture
def rng():
    return random.Random(20240611)


@pytest.fixture
def settings(monkeypatch, tmp_path):
    from config import Settings

    monkeypatch.chdir(tmp_path)
    for name in ("ALPHABET", "COEFF", "TRUNC", "FORMAT", "SEED", "MAXLEN", "DEBUG"):
        monkeypatch.delenv(f"QSHUFFLE_{name}", raising=False)
    return Settings(_env_file=None)

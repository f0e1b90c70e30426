import pytest
from hypothesis import HealthCheck, settings

from khovanov.corpus import CORPUS, corpus_diagrams
from khovanov.diagram import faces, parse_pd

settings.register_profile("default", max_examples=40, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

TREFOIL = "X(1,4,2,5) X(3,6,4,1) X(5,2,6,3)"
TREFOIL_MIRROR = "X(1,5,2,4) X(3,1,4,6) X(5,3,6,2)"
HOPF = "X(1,3,2,4) X(3,1,4,2)"
KINK_POS = "X(1,2,2,1)"
KINK_NEG = "X(1,1,2,2)"

SMALL = [name for name, d in corpus_diagrams().items() if d.n <= 6]


@pytest.fixture(scope="session")
def corpus():
    return corpus_diagrams()


@pytest.fixture
def trefoil():
    return parse_pd(TREFOIL)


@pytest.fixture
def hopf():
    return parse_pd(HOPF)


def r2_sites(d, limit=3):
    """Pairs of distinct edges on a common face, usable as R2 sites."""
    out = []
    for face in faces(d):
        labels = sorted({d.crossings[k][s] for k, s in face})
        for a in labels:
            for b in labels:
                if a != b and (a, b) not in out:
                    out.append((a, b))
    return out[:limit]


def all_names():
    return list(CORPUS)

import pytest

from langcomp import ModelParams

# Reference statuses used throughout the numerical experiments: M1 is the
# lower-status language, the rate scale is 400.
REF = dict(s_m1=0.3, s_m2=0.7, lam=400.0)


@pytest.fixture
def coexistence_params():
    """alpha - beta = -2.5: the interior equilibrium attracts globally."""
    return ModelParams(s_b=0.1, alpha=1.1, beta=3.6, **REF)


@pytest.fixture
def band_e6_params():
    """alpha - beta = 0.9, s_b between the monolingual statuses."""
    return ModelParams(s_b=0.6, alpha=2.0, beta=1.1, **REF)


@pytest.fixture
def band_e4_params():
    """alpha - beta = 0.9, s_b below the lower status: bilinguals collapse."""
    return ModelParams(s_b=0.1, alpha=2.0, beta=1.1, **REF)


@pytest.fixture
def limit_e4_params():
    """alpha - beta -> 1 from below with intermediate s_b."""
    return ModelParams(s_b=0.5, alpha=2.0999, beta=1.1, **REF)


@pytest.fixture
def limit_e3_params():
    """alpha - beta -> 1 from below with s_b above both statuses."""
    return ModelParams(s_b=0.9, alpha=2.0999, beta=1.1, **REF)


def bistable_params(s_b):
    """alpha - beta = 2.9: all-bilingual and bilingual-free states coexist."""
    return ModelParams(s_b=s_b, alpha=4.0, beta=1.1, **REF)

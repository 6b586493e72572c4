import numpy as np
import pytest

from fqrc import _kernels
from fqrc.core import FourTuple, MembershipModel

# Walkthrough test vector and the membership grid shown for it
# (rows: features, columns: Insidecity, Coast, Opencountry, Forest).
WALKTHROUGH_X = (-0.1545, -1.7597)
WALKTHROUGH_MU = (
    (1.0, 0.3046, 0.5406, 0.7508),
    (1.0, 0.1558, 0.0000, 1.0000),
)
WALKTHROUGH_R = (0.5561, 0.0264, 0.0000, 0.4175)
WALKTHROUGH_CLASSES = ("Insidecity", "Coast", "Opencountry", "Forest")

# Eight-class outputs and their published interpretations (the "q" before
# the cross marks the image under discussion and is not a symbol).
EIGHT_CLASSES = ("T", "I", "S", "H", "C", "O", "M", "F")
EIGHT_CLASS_ROWS = [
    ((0.4562, 0.4562, 0.0876, 0, 0, 0, 0, 0), "T≡I>S, q×H,C,O,M,F"),
    ((0.7644, 0.2356, 0, 0, 0, 0, 0, 0), "T≫I, q×S,H,C,O,M,F"),
    ((0, 0.3339, 0.0308, 0.4725, 0.0497, 0.1131, 0, 0), "H>I>O>C>S, q×T,M,F"),
    ((0, 0.5880, 0.0499, 0.3094, 0, 0.0526, 0, 0), "I>H>O>S, q×T,C,M,F"),
    ((0.0726, 0.2631, 0.4202, 0, 0, 0, 0, 0.2440), "S>I>F>T, q×H,C,O,M"),
    ((0.1412, 0.3456, 0.4361, 0, 0, 0.0005, 0.0119, 0.0647), "S>I>T>F>M>O, q×H,C"),
    ((0.0811, 0.2826, 0.4183, 0, 0, 0, 0.0245, 0.1935), "S>I>F>T>M, q×H,C,O"),
]


def tuple_with_membership(x, mu):
    """A four-tuple whose membership at ``x`` is ``mu`` (up to rounding)."""
    if mu == 1.0:
        return FourTuple(x - 1.0, x + 1.0, 0.5, 0.5)
    if mu == 0.0:
        return FourTuple(x + 1.0, x + 2.0, 0.5, 0.5)
    return FourTuple(x + (1.0 - mu), x + 2.0, 1.0, 0.5)


def walkthrough_model():
    tuples = [
        [tuple_with_membership(WALKTHROUGH_X[j], m) for m in WALKTHROUGH_MU[j]]
        for j in range(2)
    ]
    return MembershipModel(tuples, WALKTHROUGH_CLASSES, ("f1", "f2"))


@pytest.fixture
def fig5_model():
    return walkthrough_model()


@pytest.fixture(params=["python", "cython"])
def backend(request):
    try:
        return _kernels.get_backend(request.param)
    except ImportError:
        pytest.skip("compiled kernels not built")


def random_model(rng, J, K):
    """Random tuple grid; roughly a fifth of the ramps are zero-width steps."""
    tuples = []
    for _ in range(J):
        row = []
        for _ in range(K):
            a = rng.uniform(-2, 2)
            b = a + rng.uniform(0, 1)
            alpha = 0.0 if rng.random() < 0.2 else rng.uniform(0, 1.5)
            beta = 0.0 if rng.random() < 0.2 else rng.uniform(0, 1.5)
            row.append(FourTuple(a, b, alpha, beta))
        tuples.append(row)
    return MembershipModel(tuples, [f"c{k}" for k in range(K)], [f"f{j}" for j in range(J)])


@pytest.fixture
def rng():
    return np.random.default_rng(12345)

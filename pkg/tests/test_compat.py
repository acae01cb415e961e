import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from _support import compatible_pairs
from qcluster import fixtures
from qcluster.compat import (
    check_compatible,
    check_ell_compatible,
    coprime_to_d,
    mutate_ell_pair,
    mutate_pair,
    track_strict_lift,
)
from qcluster.errors import NotCompatible, NotEllCompatible, NotSkewSymmetric
from qcluster.intlin import IntMatrix
from qcluster.seeds import ExchangeData, mutate_matrix

PAIRS = compatible_pairs()


def random_path(rng, p, length):
    return [rng.choice(p.B.ex) for _ in range(length)]


def test_fixture_symmetrizers():
    D = {name: p.D for name, p in PAIRS}
    assert D == {"kronecker": (2, 2), "a2": (1, 1), "a4": (1, 1, 1, 1), "b3x1": (1,), "b3x2": (1, 1)}


def test_failure_reasons():
    B = fixtures.kronecker_exchange()
    with pytest.raises(NotCompatible) as e:
        check_compatible(fixtures.KRONECKER_LAMBDA_PRINTED, B)
    assert e.value.reason == "nonpositive-d" and "try -Lambda" in str(e.value)
    with pytest.raises(NotCompatible) as e:
        check_compatible([[0, 1, 0], [-1, 0, 1], [0, -1, 0]], fixtures.b3x1_exchange())
    assert e.value.reason == "frozen-block-nonzero"
    A4 = ExchangeData.square([[0, 1, 0, 0], [-1, 0, 1, 0], [0, -1, 0, 1], [0, 0, -1, 0]])
    with pytest.raises(NotCompatible) as e:
        check_compatible([[0, 1, 0, 0], [-1, 0, 0, 0], [0, 0, 0, 1], [0, 0, -1, 0]], A4)
    assert e.value.reason == "off-diagonal"
    with pytest.raises(NotSkewSymmetric):
        check_compatible([[0, 1], [1, 0]], B)


@settings(max_examples=100, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_pair_mutation_involutive_and_sign_independent(s):
    rng = random.Random(s)
    name, p = rng.choice(PAIRS)
    for k in random_path(rng, p, rng.randint(0, 3)):
        p = mutate_pair(p, k)
    k = rng.choice(p.B.ex)
    plus, minus = mutate_pair(p, k, 1), mutate_pair(p, k, -1)
    assert plus == minus
    assert plus.B == mutate_matrix(p.B, k)
    assert mutate_pair(plus, k) == p


@settings(max_examples=100, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_d_invariant_along_paths(s):
    rng = random.Random(s)
    name, p0 = rng.choice(PAIRS)
    path = random_path(rng, p0, rng.randint(1, 6))
    p = p0
    for k in path:
        p = mutate_pair(p, k)
        assert p.D == p0.D
        # the product stays [D 0] in the mutated coordinates
        assert check_compatible(p.Lambda, p.B).D == p0.D
    assert track_strict_lift(p0, path) == p.Lambda


@settings(max_examples=100, deadline=None)
@given(st.integers(0, 2**32 - 1), st.sampled_from([3, 5, 7]))
def test_ell_pair_mutation_tracks_reduction(s, ell):
    rng = random.Random(s)
    name, p = rng.choice(PAIRS)
    q = p.reduce(ell)
    for k in random_path(rng, p, rng.randint(1, 5)):
        p, q = mutate_pair(p, k), mutate_ell_pair(q, k, rng.choice((1, -1)))
        assert q.Omega.entries == p.Lambda.mod(ell)
        assert q.B == p.B


def test_ell_compatibility():
    B = fixtures.kronecker_exchange()
    ep = check_ell_compatible(IntMatrix(fixtures.KRONECKER_LAMBDA), B, 5)
    assert ep.D == (2, 2)
    # the printed form is ℓ-compatible too, with D̄ = -2 mod ℓ
    assert check_ell_compatible(IntMatrix(fixtures.KRONECKER_LAMBDA_PRINTED), B, 5).D == (3, 3)
    with pytest.raises(NotEllCompatible):
        check_ell_compatible(IntMatrix(fixtures.KRONECKER_LAMBDA), B, 2)
    with pytest.raises(NotEllCompatible):
        check_ell_compatible(IntMatrix(fixtures.KRONECKER_LAMBDA), B, 5, D=(1, 1))


def test_coprime_to_d():
    assert coprime_to_d(5, (2, 2))
    assert not coprime_to_d(4, (2, 2))

import pytest

from _support import A4_B, a4_lambda
from qcluster import fixtures
from qcluster.acyclic import (
    CONVENTIONS,
    classical_presentation,
    is_acyclic,
    presentation_exponents,
    quantum_presentation,
    relations_json,
)
from qcluster.errors import HasFrozen, HypothesisViolated, NotAcyclic, NotCompatible
from qcluster.seeds import ExchangeData

A4 = ExchangeData.square(A4_B)
CYCLE3 = ExchangeData.square([[0, 1, -1], [-1, 0, 1], [1, -1, 0]])


def test_acyclicity():
    assert is_acyclic(fixtures.kronecker_exchange())
    assert is_acyclic(A4)
    assert not is_acyclic(CYCLE3)
    assert is_acyclic(ExchangeData.square([[0, 1, 1], [-1, 0, 1], [-1, -1, 0]]))


def test_classical_presentation_kronecker():
    rels = classical_presentation(fixtures.kronecker_exchange())
    assert [(r["lhs"], r["rhs"]) for r in rels] == [("x1*x1'", "x2^2 + 1"), ("x2*x2'", "x1^2 + 1")]


def test_classical_presentation_a4():
    rels = classical_presentation(A4)
    assert [r["rhs"] for r in rels] == ["x2 + 1", "x1 + x3", "x2 + x4", "x3 + 1"]


def test_presentation_preconditions():
    with pytest.raises(HasFrozen):
        classical_presentation(fixtures.b3x2_exchange())
    with pytest.raises(NotAcyclic):
        classical_presentation(CYCLE3)
    with pytest.raises(HypothesisViolated):
        quantum_presentation(fixtures.kronecker_exchange(), fixtures.KRONECKER_LAMBDA, 4)
    # D = (6, 6) is not coprime to 3
    with pytest.raises(HypothesisViolated):
        quantum_presentation(fixtures.kronecker_exchange(), [[0, -3], [3, 0]], 3)
    with pytest.raises(NotCompatible):
        quantum_presentation(fixtures.kronecker_exchange(), fixtures.KRONECKER_LAMBDA_PRINTED, 3)


@pytest.mark.parametrize("ell", [3, 5, 7])
def test_quantum_presentation_kronecker(ell):
    pres = quantum_presentation(fixtures.kronecker_exchange(), fixtures.KRONECKER_LAMBDA, ell)
    assert pres["convention"] == "phi_ij = Lambda_ji"
    assert pres["tried"] == [c[0] for c in CONVENTIONS]
    rel = relations_json(pres)
    assert rel[0] == ["y1*y2", f"eps^{ell - 1}*y2*y1"]
    assert [r[0] for r in rel[1:]] == ["y1'*y1", "y2'*y2"]
    for r in pres["exchange"]:
        assert pres["primes"][r["k"] - 1] * fixtures.kronecker_seed(ell).vars[r["k"] - 1] == r["poly"]


@pytest.mark.parametrize("ell", [3, 5])
def test_quantum_presentation_a4(ell):
    pres = quantum_presentation(A4, a4_lambda(), ell)
    assert len(pres["exchange"]) == 4
    assert len(pres["commutation"]) == 6
    classical = classical_presentation(A4)
    for q, c in zip(pres["exchange"], classical):
        assert q["poly"].specialize_commutative() == c["poly"]


def test_presentation_exponents_simple_column():
    # b = (0, 2) for k = 0: only the positive double sum and the φ(i, k) term contribute
    L = fixtures.KRONECKER_LAMBDA
    phi = lambda i, j: L[j][i]
    mu, nu = presentation_exponents((0, 2), phi, 0)
    assert (mu, nu) == (-2 * L[0][1], 0)

"""Bundled example seeds used by the test suites and the CLI."""

from __future__ import annotations

from .intlin import IntMatrix
from .seeds import ExchangeData, initial_seed

KRONECKER_B = ((0, -2), (2, 0))
# compatible with B: B^T Λ = diag(2, 2)
KRONECKER_LAMBDA = ((0, -1), (1, 0))
# the form as printed alongside the example; B^T Λ = -diag(2, 2)
KRONECKER_LAMBDA_PRINTED = ((0, 1), (-1, 0))

A2_B = ((0, 1), (-1, 0))
A2_LAMBDA = ((0, 1), (-1, 0))

# one mutable index, one inverted and one non-inverted frozen index
B3X1 = ((0,), (1,), (-1,))
B3X1_CENTRAL = ((0, -1, 0), (1, 0, 0), (0, 0, 0))
B3X1_NONCENTRAL = ((0, 0, 1), (0, 0, 0), (-1, 0, 0))
# non-central frozen index whose generic stratum keeps the full PI degree
B3X1_EQUAL_DEGREE = ((0, -2, -1), (2, 0, 0), (1, 0, 0))

# acyclic 3x2: two mutable indices and one non-inverted frozen index
B3X2 = ((0, 1), (-1, 0), (1, 1))
B3X2_LAMBDA = ((0, 1, 0), (-1, 0, 0), (0, 0, 0))


def kronecker_exchange() -> ExchangeData:
    return ExchangeData.square(KRONECKER_B)


def kronecker_seed(ell: int | None = None, Lambda=KRONECKER_LAMBDA):
    return initial_seed(kronecker_exchange(), Lambda, ell)


def a2_exchange() -> ExchangeData:
    return ExchangeData.square(A2_B)


def b3x1_exchange() -> ExchangeData:
    return ExchangeData(3, [0], [1], [2], B3X1)


def b3x2_exchange() -> ExchangeData:
    return ExchangeData(3, [0, 1], [], [2], B3X2)


def as_matrix(rows) -> IntMatrix:
    return IntMatrix(rows)

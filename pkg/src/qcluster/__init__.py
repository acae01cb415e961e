"""Exact computations with cluster algebras, their Poisson structures and root-of-unity quantizations."""

from .cyclo import CycloContext, CycloNumber, context
from .errors import ClusterError
from .intlin import IntMatrix
from .seeds import ExchangeData, Seed, initial_seed, mutate_seed
from .tlaurent import TwistedLaurentPoly, TwistMatrix

__all__ = [
    "ClusterError",
    "CycloContext",
    "CycloNumber",
    "ExchangeData",
    "IntMatrix",
    "Seed",
    "TwistMatrix",
    "TwistedLaurentPoly",
    "context",
    "initial_seed",
    "mutate_seed",
]

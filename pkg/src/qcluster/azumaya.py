"""PI degrees, non-central frozen indices and frozen-stratum degrees."""

from __future__ import annotations

from math import isqrt
from typing import Sequence

from .errors import DimensionMismatch, HypothesisViolated, NotPerfectSquare, NotSkewSymmetric
from .intlin import IntMatrix, lattice_index_mod
from .tlaurent import TwistMatrix


def _omega(Omega, ell: int | None) -> tuple[IntMatrix, int]:
    if isinstance(Omega, TwistMatrix):
        if Omega.ell is None:
            return Omega.entries, ell or 1
        if ell is not None and ell != Omega.ell:
            raise DimensionMismatch("ell disagrees with the twist's root of unity")
        return Omega.entries, Omega.ell
    if ell is None:
        raise ValueError("ell is required for an integer matrix")
    M = IntMatrix.coerce(Omega).mod(ell)
    if not M.is_skew(ell):
        raise NotSkewSymmetric("Omega must be skew-symmetric mod ell")
    return M, ell


def pi_degree(Omega, ell: int | None = None) -> int:
    M, ell = _omega(Omega, ell)
    index = lattice_index_mod(M, ell)
    root = isqrt(index)
    if root * root != index:
        raise NotPerfectSquare(f"kernel index {index} is not a perfect square")
    return root


def noncentral_frozen(Omega, ninv: Sequence[int], ell: int | None = None) -> list[int]:
    M, ell = _omega(Omega, ell)
    return [i for i in sorted(ninv) if any(M[r, i] % ell for r in range(M.nrows))]


def frozen_stratum_pi_degree(Omega, j: int, ell: int | None = None, ninv: Sequence[int] | None = None) -> int:
    M, ell = _omega(Omega, ell)
    if ninv is not None and j not in ninv:
        raise HypothesisViolated(f"index {j + 1} is not a non-inverted frozen index")
    return pi_degree(M.delete(j), ell)


def azumaya_bound_report(seed) -> dict:
    """Structured summary of the Azumaya-locus bounds for a quantum seed."""
    if not seed.is_quantum:
        raise HypothesisViolated("azumaya report needs a root-of-unity seed (set 'ell')")
    Omega = seed.form
    ninv = seed.exchange.ninv
    deg = pi_degree(Omega)
    nc = noncentral_frozen(Omega, ninv)
    strata = []
    for j in ninv:
        d = frozen_stratum_pi_degree(Omega, j)
        rel = "<" if d < deg else "="
        entry = {"j": j + 1, "degree": d, "relation": rel, "central": j not in nc}
        if j in nc and d < deg:
            entry["note"] = f"excluded from A; degree drops from {deg} to {d}"
        elif j not in nc:
            entry["note"] = "does not cut the Azumaya locus"
        else:
            entry["note"] = "non-central but the generic stratum degree equals the PI degree"
        strata.append(entry)
    all_ninv = ", ".join(str(j + 1) for j in ninv)
    nc_s = ", ".join(str(j + 1) for j in nc)
    lower = "Y(B)^reg" + (f" minus union of V(x_i), i in {{{all_ninv}}}" if ninv else "")
    upper = "Y(B)" + (f" minus union of V(x_i), i in {{{nc_s}}}" if nc else "")
    return {
        "pi_degree": deg,
        "nc": [i + 1 for i in nc],
        "strata": strata,
        "lower_bound": lower,
        "upper_bound": upper,
        "bounds_coincide": not ninv,
    }

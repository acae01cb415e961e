"""Compatible pairs over Z and over Z/ℓ, and their mutation."""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import Sequence

from .errors import DimensionMismatch, InternalInconsistency, NotCompatible, NotEllCompatible, NotSkewSymmetric
from .intlin import IntMatrix, rank
from .seeds import ExchangeData, build_es_fs, mutate_matrix
from .tlaurent import TwistMatrix


@dataclass(frozen=True)
class CompatiblePair:
    Lambda: IntMatrix
    B: ExchangeData
    D: tuple  # d_j for j in ex, in ex order

    def reduce(self, ell: int) -> "EllCompatiblePair":
        return EllCompatiblePair(TwistMatrix(self.Lambda, ell), self.B, tuple(d % ell for d in self.D), ell)


@dataclass(frozen=True)
class EllCompatiblePair:
    Omega: TwistMatrix
    B: ExchangeData
    D: tuple  # residues in [1, ℓ)
    ell: int


def _product_blocks(B: ExchangeData, M: IntMatrix) -> IntMatrix:
    if M.shape != (B.n, B.n):
        raise DimensionMismatch(f"form must be {B.n}x{B.n}")
    return B.B.T @ M  # |ex| × N


def check_compatible(Lambda, B: ExchangeData) -> CompatiblePair:
    """Verify B̃ᵀΛ = [D 0] with D positive diagonal (the D block indexed by ex)."""
    Lambda = IntMatrix.coerce(Lambda)
    if not Lambda.is_skew():
        raise NotSkewSymmetric("Lambda must be skew-symmetric")
    P = _product_blocks(B, Lambda)
    D = []
    for r, k in enumerate(B.ex):
        for j in range(B.n):
            v = P[r, j]
            if j == k:
                D.append(v)
            elif v:
                if j in B.ex:
                    raise NotCompatible(
                        f"(B^T Lambda)[{k + 1},{j + 1}] = {v} is off the diagonal", "off-diagonal"
                    )
                raise NotCompatible(
                    f"(B^T Lambda)[{k + 1},{j + 1}] = {v} lies in the frozen block", "frozen-block-nonzero"
                )
    bad = [(k + 1, d) for k, d in zip(B.ex, D) if d <= 0]
    if bad:
        hint = " (try -Lambda)" if all(d < 0 for d in D) else ""
        raise NotCompatible(f"diagonal entries must be positive, got {bad}{hint}", "nonpositive-d", D=D)
    if rank(B.B) != len(B.ex):
        raise InternalInconsistency("a compatible pair must have B of full rank")
    return CompatiblePair(Lambda, B, tuple(D))


def mutate_pair(p: CompatiblePair, k: int, s: int = 1) -> CompatiblePair:
    E, _ = build_es_fs(p.B, k, s)
    lam = E.T @ p.Lambda @ E
    B2 = mutate_matrix(p.B, k)
    try:
        out = check_compatible(lam, B2)
    except NotCompatible as e:
        raise InternalInconsistency(f"mutation broke compatibility: {e}") from e
    if out.D != p.D:
        raise InternalInconsistency("mutation changed the skew-symmetrizer D")
    return out


def track_strict_lift(p: CompatiblePair, history: Sequence[int]) -> IntMatrix:
    for k in history:
        p = mutate_pair(p, k)
    return p.Lambda


def check_ell_compatible(Omega, B: ExchangeData, ell: int, D: Sequence[int] | None = None) -> EllCompatiblePair:
    """Verify B̃ᵀΩ ≡ [D̄ 0] mod ℓ.

    With ``D`` given (e.g. from a strict lift) the congruence is checked for it;
    otherwise D̄ is read off as the smallest positive residues on the diagonal.
    """
    if not isinstance(Omega, TwistMatrix):
        Omega = TwistMatrix(Omega, ell)
    if Omega.ell != ell:
        raise NotEllCompatible("Omega lives at a different root of unity")
    P = _product_blocks(B, Omega.entries).mod(ell)
    found = []
    for r, k in enumerate(B.ex):
        for j in range(B.n):
            if j != k and P[r, j]:
                raise NotEllCompatible(f"entry ({k + 1},{j + 1}) of B^T Omega is {P[r, j]} mod {ell}, expected 0")
        found.append(P[r, k])
    if D is not None:
        want = [d % ell for d in D]
        if list(found) != want:
            raise NotEllCompatible(f"diagonal {found} does not match D = {list(D)} mod {ell}")
        return EllCompatiblePair(Omega, B, tuple(D), ell)
    if any(d == 0 for d in found):
        raise NotEllCompatible(f"diagonal {found} has entries divisible by {ell}")
    return EllCompatiblePair(Omega, B, tuple(found), ell)


def mutate_ell_pair(p: EllCompatiblePair, k: int, s: int = 1) -> EllCompatiblePair:
    E, _ = build_es_fs(p.B, k, s)
    Om = TwistMatrix(E.T @ p.Omega.entries @ E, p.ell)
    return check_ell_compatible(Om, mutate_matrix(p.B, k), p.ell, p.D)


def coprime_to_d(ell: int, D: Sequence[int]) -> bool:
    return all(gcd(ell, d) == 1 for d in D)

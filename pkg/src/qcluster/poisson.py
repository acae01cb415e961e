"""Log-canonical Poisson brackets, torus weights and anticanonical coefficients."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from typing import Sequence

from .errors import ContextMismatch, DimensionMismatch, InternalInconsistency, NotSkewSymmetric
from .intlin import IntMatrix, kernel_basis, skew_rank
from .seeds import ExchangeData, Seed, mutate_matrix
from .tlaurent import TwistedLaurentPoly


@dataclass(frozen=True)
class GSVBracketContext:
    Lambda: IntMatrix

    def __post_init__(self):
        object.__setattr__(self, "Lambda", IntMatrix.coerce(self.Lambda))
        if not self.Lambda.is_skew():
            raise NotSkewSymmetric("Lambda must be skew-symmetric")

    @classmethod
    def from_pair(cls, pair) -> "GSVBracketContext":
        return cls(pair.Lambda)

    @property
    def rank2r(self) -> int:
        return skew_rank(self.Lambda)


def gsv_bracket(a: TwistedLaurentPoly, b: TwistedLaurentPoly, ctx: GSVBracketContext) -> TwistedLaurentPoly:
    """{x^f, x^g} = Λ(f,g) x^{f+g}, extended bilinearly."""
    if not (a.twist.is_classical and b.twist.is_classical):
        raise ContextMismatch("the GSV bracket acts on the classical Laurent ring")
    if a.n != ctx.Lambda.nrows or b.n != ctx.Lambda.nrows:
        raise DimensionMismatch("bracket rank mismatch")
    out = {}
    L = ctx.Lambda
    for f, c in a.terms.items():
        for g, d in b.terms.items():
            lam = L.bilinear(f, g)
            if lam:
                h = tuple(x + y for x, y in zip(f, g))
                out[h] = out.get(h, 0) + lam * c * d
    return TwistedLaurentPoly(a.twist, out)


# ---------------------------------------------------------------------------
# torus weights


@dataclass(frozen=True)
class WeightVector:
    nu: tuple

    def dot(self, f: Sequence[int]) -> int:
        return sum(a * b for a, b in zip(self.nu, f))


def in_kernel(nu: Sequence[int], B: ExchangeData) -> bool:
    return not any(B.B.T.apply(tuple(nu)))


def torus_weights(B: ExchangeData) -> list[WeightVector]:
    return [WeightVector(v) for v in kernel_basis(B.B.T)]


def mutate_weight(nu, B: ExchangeData, k: int) -> WeightVector:
    v = tuple(nu.nu if isinstance(nu, WeightVector) else nu)
    if len(v) != B.n:
        raise DimensionMismatch("weight length must be N")
    if not in_kernel(v, B):
        raise ValueError("weight is not in Ker(B^T)")
    b = B.column(k)
    new = list(v)
    new[k] = sum(x * max(0, y) for x, y in zip(v, b)) - v[k]
    B2 = mutate_matrix(B, k)
    if not in_kernel(new, B2):
        raise InternalInconsistency("mutated weight left the kernel of the mutated matrix")
    return WeightVector(tuple(new))


def weight_homogeneity_check(seed: Seed, nu) -> list[dict]:
    w = nu if isinstance(nu, WeightVector) else WeightVector(tuple(nu))
    report = []
    for i, v in enumerate(seed.vars):
        degrees = sorted({w.dot(f) for f in v.terms})
        report.append({"index": i + 1, "ok": len(degrees) == 1, "degrees": degrees})
    return report


# ---------------------------------------------------------------------------
# exterior algebra


def _wedge(a: dict, b: dict) -> dict:
    out: dict = {}
    for s, x in a.items():
        for t, y in b.items():
            if set(s) & set(t):
                continue
            merged = s + t
            # sign of the sort permutation: count inversions
            inv = sum(1 for i in s for j in t if i > j)
            key = tuple(sorted(merged))
            val = out.get(key, 0) + (-x * y if inv % 2 else x * y)
            if val:
                out[key] = val
            else:
                out.pop(key, None)
    return out


def anticanonical_coefficient(Lambda, weights: Sequence) -> Fraction:
    """Coefficient of e₁∧…∧e_N in v₁∧…∧v_m∧β^{∧r}, β = Σ_{i<k} Λ_ik e_i∧e_k."""
    L = IntMatrix.coerce(Lambda)
    N = L.nrows
    two_r = skew_rank(L)
    vecs = [tuple(w.nu if isinstance(w, WeightVector) else w) for w in weights]
    if (N - len(vecs)) % 2:
        raise DimensionMismatch("N minus the number of weights must be even")
    if len(vecs) != N - two_r:
        raise DimensionMismatch(f"expected {N - two_r} weights, got {len(vecs)}")
    if any(len(v) != N for v in vecs):
        raise DimensionMismatch("weight length must be N")
    acc: dict = {(): Fraction(1)}
    for v in vecs:
        acc = _wedge(acc, {(i,): Fraction(x) for i, x in enumerate(v) if x})
    beta = {(i, k): Fraction(L[i, k]) for i in range(N) for k in range(i + 1, N) if L[i, k]}
    for _ in range(two_r // 2):
        acc = _wedge(acc, beta)
    return acc.get(tuple(range(N)), Fraction(0))


def pfaffian_normalization(r: int) -> int:
    """β^{∧r} = r!·Pf(Λ) e₁∧…∧e_{2r} for a nondegenerate 2r×2r form."""
    return factorial(r)


# ---------------------------------------------------------------------------
# frozen divisibility


def frozen_poisson_divisibility(i: int, b: TwistedLaurentPoly, ctx: GSVBracketContext, ninv: Sequence[int] = ()):
    """Return ({x_i, b}·x_i⁻¹, ok); ok checks nonnegativity at ninv indices when b has it."""
    xi = TwistedLaurentPoly.generator(b.twist, i)
    q = gsv_bracket(xi, b, ctx) * xi.inverse_monomial()
    had = all(f[j] >= 0 for f in b.terms for j in ninv)
    keeps = all(f[j] >= 0 for f in q.terms for j in ninv)
    return q, (keeps or not had)

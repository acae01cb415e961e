"""Poisson-order derivations on root-of-unity quantum tori."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Sequence

from .compat import CompatiblePair, track_strict_lift
from .cyclo import CycloContext, CycloNumber, context
from .errors import HypothesisViolated, InternalInconsistency, NoExactQuotient, NotSkewSymmetric
from .intlin import IntMatrix
from .seeds import Seed, mutate_seed
from .tlaurent import TwistedLaurentPoly, TwistMatrix


class QLaurentScalar:
    """Laurent polynomial in one variable u with coefficients in Q(ζ)."""

    __slots__ = ("ctx", "coeffs")

    def __init__(self, ctx: CycloContext, coeffs: dict):
        self.ctx = ctx
        self.coeffs = {int(k): ctx(v) for k, v in coeffs.items() if v}

    @classmethod
    def u_power(cls, ctx, k: int, c=1) -> "QLaurentScalar":
        return cls(ctx, {k: c})

    def __add__(self, other):
        out = dict(self.coeffs)
        for k, v in other.coeffs.items():
            out[k] = out[k] + v if k in out else v
        return QLaurentScalar(self.ctx, out)

    def __neg__(self):
        return QLaurentScalar(self.ctx, {k: -v for k, v in self.coeffs.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        out: dict = {}
        for a, x in self.coeffs.items():
            for b, y in other.coeffs.items():
                out[a + b] = out[a + b] + x * y if a + b in out else x * y
        return QLaurentScalar(self.ctx, out)

    def __eq__(self, other):
        return isinstance(other, QLaurentScalar) and self.coeffs == other.coeffs

    def divide_linear(self, root: CycloNumber) -> "QLaurentScalar":
        """Exact quotient by (u − root); NoExactQuotient if root is not a zero."""
        if not self.coeffs:
            return self
        lo, hi = min(self.coeffs), max(self.coeffs)
        # synthetic division of the polynomial u^{-lo}·self, top degree down
        poly = [self.coeffs.get(lo + i, self.ctx.zero) for i in range(hi - lo + 1)]
        quot = [self.ctx.zero] * (len(poly) - 1)
        carry = self.ctx.zero
        for i in range(len(poly) - 1, 0, -1):
            carry = poly[i] + carry * root
            quot[i - 1] = carry
        rem = poly[0] + carry * root
        if rem:
            raise NoExactQuotient("polynomial does not vanish at the given root")
        return QLaurentScalar(self.ctx, {lo + i: c for i, c in enumerate(quot)})

    def evaluate(self, value: CycloNumber) -> CycloNumber:
        total = self.ctx.zero
        for k, c in self.coeffs.items():
            total = total + c * value**k
        return total


@dataclass(frozen=True)
class DerivationSpec:
    LambdaPrime: IntMatrix
    ell: int

    def __post_init__(self):
        L = IntMatrix.coerce(self.LambdaPrime)
        if not L.is_skew():
            raise NotSkewSymmetric("LambdaPrime must be skew-symmetric")
        object.__setattr__(self, "LambdaPrime", L)

    @property
    def twist(self) -> TwistMatrix:
        return TwistMatrix(self.LambdaPrime, self.ell)

    @property
    def ctx(self) -> CycloContext:
        return context(self.ell)

    def monomial(self, f) -> TwistedLaurentPoly:
        return TwistedLaurentPoly.monomial(self.twist, f)


def derivation_partial(spec: DerivationSpec, f: Sequence[int], a: TwistedLaurentPoly) -> TwistedLaurentPoly:
    """∂′_{M(ℓf)} on a: M(g) ↦ (1/ℓ)Λ′(f,g)·M(ℓf+g), extended linearly."""
    ell = spec.ell
    L = spec.LambdaPrime
    out = {}
    for g, c in a.terms.items():
        lam = L.bilinear(f, g)
        if lam:
            h = tuple(ell * x + y for x, y in zip(f, g))
            out[h] = c * Fraction(lam, ell)
    return TwistedLaurentPoly(a.twist, out)


def central_bracket(spec: DerivationSpec, k: int, i: int) -> TwistedLaurentPoly:
    N, ell = spec.LambdaPrime.nrows, spec.ell
    ek = tuple(ell * int(j == k) for j in range(N))
    ei = tuple(ell * int(j == i) for j in range(N))
    lhs = derivation_partial(spec, tuple(int(j == k) for j in range(N)), spec.monomial(ei))
    rhs = spec.monomial(ek) * spec.monomial(ei) * spec.LambdaPrime[k, i]
    if lhs != rhs:
        raise InternalInconsistency("central bracket disagrees with the log-canonical formula")
    return lhs


def difference_quotient_check(spec: DerivationSpec, f: Sequence[int], g: Sequence[int]) -> dict:
    """Compare the specialization derivation with 2ℓ²ζ⁻¹·∂′ on M(ℓf), M(g)."""
    ctx, ell = spec.ctx, spec.ell
    L = spec.LambdaPrime.bilinear(f, g)
    zeta = ctx.zeta
    # [M_q(ℓf), M_q(g)] = (u^{Λ′(ℓf,g)} − u^{Λ′(g,ℓf)}) M_q(ℓf+g)
    comm = QLaurentScalar.u_power(ctx, ell * L) - QLaurentScalar.u_power(ctx, -ell * L)
    scalar = comm.divide_linear(zeta).evaluate(zeta)
    h = tuple(ell * x + y for x, y in zip(f, g))
    lhs = spec.monomial(h) * scalar
    partial = derivation_partial(spec, f, spec.monomial(g))
    constant = zeta.inverse() * (2 * ell * ell)
    rhs = partial * constant
    return {
        "f": list(f),
        "g": list(g),
        "lambda": L,
        "ok": lhs == rhs,
        "lhs": lhs.render(),
        "rhs": rhs.render(),
    }


def _check_hypotheses(ell: int, D: Sequence[int]):
    if ell % 2 == 0:
        raise HypothesisViolated(f"ell = {ell} must be odd")
    bad = [d for d in D if gcd(ell, d) != 1]
    if bad:
        raise HypothesisViolated(f"ell = {ell} is not coprime to d = {bad}")


def central_ell_power_mutation_check(seed: Seed, k: int, strict: CompatiblePair) -> dict:
    """Check M′(e_k)^ℓ·(μ_k M′(e_k))^ℓ = ∏(M′(e_i)^ℓ)^{[b′_ik]₊} + ∏(M′(e_i)^ℓ)^{[−b′_ik]₊}."""
    if not seed.is_quantum:
        raise HypothesisViolated("a root-of-unity seed is required")
    ell = seed.ell
    _check_hypotheses(ell, strict.D)
    lift = strict.Lambda
    if lift.mod(ell) != seed.form.entries:
        lift = track_strict_lift(strict, seed.history)
        if lift.mod(ell) != seed.form.entries:
            raise HypothesisViolated("the compatible pair is not a strict lift of this seed")
    b = seed.exchange.column(k)
    powers = [v.ell_power(ell) for v in seed.vars]
    new = mutate_seed(seed, k).vars[k]
    lhs = powers[k] * new.ell_power(ell)
    tw = seed.ring
    pos = TwistedLaurentPoly.one(tw)
    neg = TwistedLaurentPoly.one(tw)
    for i, bi in enumerate(b):
        if bi > 0:
            pos = pos * powers[i] ** bi
        elif bi < 0:
            neg = neg * powers[i] ** (-bi)
    rhs = pos + neg
    central = all(p * v == v * p for p in powers for v in seed.vars)
    return {"k": k + 1, "ell": ell, "ok": lhs == rhs and central, "central": central, "terms": len(lhs)}

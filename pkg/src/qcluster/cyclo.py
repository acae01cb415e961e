"""Exact arithmetic in the cyclotomic field Q(ζ), ζ a primitive ℓ-th root of unity.

Elements are residues modulo the ℓ-th cyclotomic polynomial Φ_ℓ, stored as
tuples of Fractions (constant term first) with trailing zeros stripped.
"""

from __future__ import annotations

import cmath
from fractions import Fraction
from functools import lru_cache
from math import gcd
from numbers import Rational

from .errors import ContextMismatch


def _poly_divmod_int(num: list[int], den: list[int]) -> tuple[list[int], list[int]]:
    """Divide integer polynomials (constant term first); den must be monic."""
    num = list(num)
    q = [0] * max(len(num) - len(den) + 1, 1)
    for shift in range(len(num) - len(den), -1, -1):
        c = num[shift + len(den) - 1]
        if c:
            q[shift] = c
            for i, d in enumerate(den):
                num[shift + i] -= c * d
    rem = num[: len(den) - 1]
    return q, rem


@lru_cache(maxsize=None)
def cyclotomic_polynomial(n: int) -> tuple[int, ...]:
    """Integer coefficients of Φₙ, constant term first."""
    if n < 1:
        raise ValueError("cyclotomic polynomial needs n >= 1")
    poly = [-1] + [0] * (n - 1) + [1]  # xⁿ - 1
    for d in range(1, n):
        if n % d == 0:
            poly, rem = _poly_divmod_int(poly, list(cyclotomic_polynomial(d)))
            if any(rem):
                raise ArithmeticError("cyclotomic division left a remainder")
    while len(poly) > 1 and poly[-1] == 0:
        poly.pop()
    return tuple(poly)


def euler_phi(n: int) -> int:
    return sum(1 for k in range(1, n + 1) if gcd(k, n) == 1)


def _strip(coeffs):
    coeffs = list(coeffs)
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    return tuple(coeffs)


class CycloContext:
    """The field Q(ζ_ℓ). One instance per ℓ (cached by :func:`context`)."""

    def __init__(self, ell: int):
        if ell < 1:
            raise ValueError("ell must be a positive integer")
        self.ell = ell
        self.cyclotomic_polynomial = cyclotomic_polynomial(ell)
        self.degree = len(self.cyclotomic_polynomial) - 1
        if self.degree != euler_phi(ell):
            raise ArithmeticError(f"Φ_{ell} has wrong degree")
        self._powers = [self._reduce_power(k) for k in range(ell)]
        self.zero = CycloNumber(self, ())
        self.one = CycloNumber(self, (Fraction(1),))

    def __repr__(self):
        return f"CycloContext({self.ell})"

    def __reduce__(self):
        return (context, (self.ell,))

    def _reduce(self, coeffs) -> tuple[Fraction, ...]:
        """Reduce a coefficient list modulo Φ_ℓ (which is monic)."""
        c = [Fraction(x) for x in coeffs]
        phi = self.cyclotomic_polynomial
        d = self.degree
        for top in range(len(c) - 1, d - 1, -1):
            t = c[top]
            if t:
                for i, p in enumerate(phi):
                    c[top - d + i] -= t * p
        return _strip(c[:d])

    def _reduce_power(self, k: int):
        return self._reduce([0] * k + [1])

    def __call__(self, value) -> "CycloNumber":
        if isinstance(value, CycloNumber):
            if value.ctx is not self:
                raise ContextMismatch("cyclotomic context mismatch")
            return value
        return CycloNumber(self, (Fraction(value),) if value else ())

    def root_power(self, k: int) -> "CycloNumber":
        """Canonical representative of ζᵏ (k any integer)."""
        return CycloNumber(self, self._powers[k % self.ell])

    @property
    def zeta(self) -> "CycloNumber":
        return self.root_power(1)

    def from_coefficients(self, coeffs) -> "CycloNumber":
        return CycloNumber(self, self._reduce(coeffs))


@lru_cache(maxsize=None)
def context(ell: int) -> CycloContext:
    return CycloContext(ell)


def root_power(ctx: CycloContext, k: int) -> "CycloNumber":
    return ctx.root_power(k)


class CycloNumber:
    __slots__ = ("ctx", "coeffs")

    def __init__(self, ctx: CycloContext, coeffs):
        self.ctx = ctx
        self.coeffs = coeffs

    # -- coercion -------------------------------------------------------
    def _lift(self, other):
        if isinstance(other, CycloNumber):
            if other.ctx is not self.ctx:
                raise ContextMismatch(f"cannot combine Q(ζ_{self.ctx.ell}) with Q(ζ_{other.ctx.ell})")
            return other
        if isinstance(other, (int, Rational)):
            return CycloNumber(self.ctx, (Fraction(other),) if other else ())
        return NotImplemented

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        o = self._lift(other) if isinstance(other, (CycloNumber, int, Rational)) else NotImplemented
        if o is NotImplemented:
            return NotImplemented
        return self.coeffs == o.coeffs

    def __hash__(self):
        if len(self.coeffs) <= 1:
            return hash(self.coeffs[0] if self.coeffs else 0)
        return hash((self.ctx.ell, self.coeffs))

    def __repr__(self):
        return f"CycloNumber(ell={self.ctx.ell}, {self.render()})"

    def render(self) -> str:
        return "(" + ",".join(str(c) for c in self.coeffs) + ")"

    # -- arithmetic -----------------------------------------------------
    def __add__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        a, b = self.coeffs, o.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, x in enumerate(b):
            out[i] += x
        return CycloNumber(self.ctx, _strip(out))

    __radd__ = __add__

    def __neg__(self):
        return CycloNumber(self.ctx, tuple(-x for x in self.coeffs))

    def __sub__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        a, b = self.coeffs, o.coeffs
        if not a or not b:
            return self.ctx.zero
        if len(b) == 1:
            return CycloNumber(self.ctx, tuple(x * b[0] for x in a))
        if len(a) == 1:
            return CycloNumber(self.ctx, tuple(x * a[0] for x in b))
        prod = [Fraction(0)] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    prod[i + j] += x * y
        return CycloNumber(self.ctx, self.ctx._reduce(prod))

    __rmul__ = __mul__

    def inverse(self) -> "CycloNumber":
        """Extended Euclid of the representative against Φ_ℓ over Q."""
        if not self.coeffs:
            raise ZeroDivisionError("inverse of zero in Q(ζ)")
        if len(self.coeffs) == 1:
            return CycloNumber(self.ctx, (1 / self.coeffs[0],))
        r0, r1 = [Fraction(x) for x in self.ctx.cyclotomic_polynomial], list(self.coeffs)
        s0, s1 = [], [Fraction(1)]
        while any(r1):
            q, r = _fpoly_divmod(r0, r1)
            r0, r1 = r1, r
            s0, s1 = s1, _fpoly_sub(s0, _fpoly_mul(q, s1))
        # r0 is a nonzero constant because Φ_ℓ is irreducible
        lead = r0[0]
        return CycloNumber(self.ctx, self.ctx._reduce([x / lead for x in s0]))

    def __truediv__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return self * o.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        result, base = self.ctx.one, self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def root_decomposition(self):
        """(c, k) with self = c·ζ^k, c rational, or None.

        For even ℓ, where −1 is itself a power of ζ, the decomposition with c > 0 is chosen.
        """
        if not self.coeffs:
            return Fraction(0), 0
        found = None
        for k in range(self.ctx.ell):
            t = self * self.ctx.root_power(-k)
            if len(t.coeffs) == 1:
                if t.coeffs[0] > 0:
                    return t.coeffs[0], k
                found = found or (t.coeffs[0], k)
        return found

    def specialize_to_one(self) -> Fraction:
        """Image under ζ ↦ 1.

        ζ ↦ 1 is not a ring map on Q(ζ) (Φ_ℓ(1) ≠ 0), so this is defined
        piecewise: c·ζ^k maps to c, which is multiplicative on that set. Any
        other element is written as Σ_{k<ℓ} c_k ζ^k shifted by a multiple of
        1 + ζ + … + ζ^{ℓ−1} so that min c_k = 0, and maps to Σ c_k. For prime ℓ
        this recovers q ↦ 1 on sums of powers with nonnegative coefficients
        that miss at least one residue class.
        """
        dec = self.root_decomposition()
        if dec is not None:
            return dec[0]
        ell = self.ctx.ell
        full = list(self.coeffs) + [Fraction(0)] * (ell - len(self.coeffs))
        return sum(full, Fraction(0)) - ell * min(full)

    def conjugate_inverse_root(self) -> "CycloNumber":
        """Galois image under ζ ↦ ζ⁻¹."""
        out = self.ctx.zero
        for k, c in enumerate(self.coeffs):
            if c:
                out = out + self.ctx.root_power(-k) * c
        return out

    def approx(self) -> complex:
        """Debug-only floating-point value with ζ = exp(2πi/ℓ)."""
        z = cmath.exp(2j * cmath.pi / self.ctx.ell)
        return sum(float(c) * z**k for k, c in enumerate(self.coeffs))


def _fpoly_strip(p):
    p = list(p)
    while p and p[-1] == 0:
        p.pop()
    return p


def _fpoly_divmod(a, b):
    a = _fpoly_strip(a)
    b = _fpoly_strip(b)
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 1)
    while len(a) >= len(b) and a:
        shift = len(a) - len(b)
        c = a[-1] / b[-1]
        q[shift] = c
        for i, y in enumerate(b):
            a[shift + i] -= c * y
        a = _fpoly_strip(a)
    return q, a


def _fpoly_mul(a, b):
    if not a or not b:
        return []
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return _fpoly_strip(out)


def _fpoly_sub(a, b):
    n = max(len(a), len(b))
    a = list(a) + [Fraction(0)] * (n - len(a))
    b = list(b) + [Fraction(0)] * (n - len(b))
    return _fpoly_strip([x - y for x, y in zip(a, b)])


def cyclo_arith(a: CycloNumber, b: CycloNumber, op: str) -> CycloNumber:
    if a.ctx is not b.ctx:
        raise ContextMismatch("operands live in different cyclotomic fields")
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    raise ValueError(f"unknown operation {op!r}")


def specialize_to_one(a) -> Fraction:
    if isinstance(a, CycloNumber):
        return a.specialize_to_one()
    return Fraction(a)

"""Twisted Laurent polynomials.

A single representation covers the classical Laurent ring (zero twist,
rational coefficients) and the root-of-unity quantum torus, where
x^f · x^g = ζ^{Ω(f,g)} x^{f+g} with ζ a primitive ℓ-th root of unity.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .cyclo import CycloNumber, context
from .errors import ContextMismatch, DimensionMismatch, NoExactQuotient, NotSkewSymmetric
from .intlin import IntMatrix

Exponent = tuple


class TwistMatrix:
    """Skew form Ω on Zⁿ, stored mod ℓ; ``ell=None`` is the classical zero twist."""

    __slots__ = ("n", "entries", "ell", "ctx")

    def __init__(self, entries, ell: int | None = None):
        M = IntMatrix.coerce(entries)
        if not M.is_square():
            raise DimensionMismatch("twist matrix must be square")
        if ell is None:
            if any(any(r) for r in M.rows):
                raise ContextMismatch("a nonzero twist needs a root-of-unity order ell")
            self.ctx = None
        else:
            if ell < 1:
                raise ValueError("ell must be a positive integer")
            M = M.mod(ell)
            if not M.is_skew(ell):
                raise NotSkewSymmetric("twist is not skew-symmetric mod ell")
            self.ctx = context(ell)
        self.n = M.nrows
        self.entries = M
        self.ell = ell

    @classmethod
    def classical(cls, n: int) -> "TwistMatrix":
        return cls(IntMatrix.zeros(n, n))

    @property
    def is_classical(self) -> bool:
        return self.ell is None

    def form(self, f: Sequence[int], g: Sequence[int]) -> int:
        if self.ell is None:
            return 0
        return self.entries.bilinear(f, g) % self.ell

    def __eq__(self, other):
        return isinstance(other, TwistMatrix) and self.ell == other.ell and self.entries == other.entries

    def __hash__(self):
        return hash((self.ell, self.entries))

    def __repr__(self):
        return f"TwistMatrix({self.entries.tolist()}, ell={self.ell})"

    def scalar(self, value):
        """Coerce a number into this ring's scalar domain."""
        if self.ctx is None:
            if isinstance(value, CycloNumber):
                raise ContextMismatch("cyclotomic scalar in a classical ring")
            return Fraction(value)
        return self.ctx(value)

    def twist_scalar(self, f, g):
        if self.ctx is None:
            return Fraction(1)
        return self.ctx.root_power(self.form(f, g))


def _key(f):
    return tuple(reversed(f))


class TwistedLaurentPoly:
    """Immutable element Σ c_f x^f of the twisted Laurent ring."""

    __slots__ = ("twist", "terms")

    def __init__(self, twist: TwistMatrix, terms: Mapping | Iterable = ()):
        self.twist = twist
        items = terms.items() if isinstance(terms, Mapping) else terms
        clean = {}
        for f, c in items:
            f = tuple(int(x) for x in f)
            if len(f) != twist.n:
                raise DimensionMismatch(f"exponent {f} has length {len(f)}, expected {twist.n}")
            c = twist.scalar(c)
            if c:
                prev = clean.get(f)
                c = c if prev is None else prev + c
                if c:
                    clean[f] = c
                else:
                    del clean[f]
        self.terms = clean

    # -- constructors ---------------------------------------------------
    @classmethod
    def monomial(cls, twist: TwistMatrix, f: Sequence[int], c=1) -> "TwistedLaurentPoly":
        if len(f) != twist.n:
            raise DimensionMismatch(f"exponent has length {len(f)}, expected {twist.n}")
        return cls(twist, [(tuple(f), c)])

    @classmethod
    def generator(cls, twist: TwistMatrix, i: int) -> "TwistedLaurentPoly":
        return cls.monomial(twist, tuple(int(j == i) for j in range(twist.n)))

    @classmethod
    def one(cls, twist: TwistMatrix) -> "TwistedLaurentPoly":
        return cls.monomial(twist, (0,) * twist.n)

    @classmethod
    def zero(cls, twist: TwistMatrix) -> "TwistedLaurentPoly":
        return cls(twist, ())

    # -- basic protocol -------------------------------------------------
    @property
    def n(self):
        return self.twist.n

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def __eq__(self, other):
        if isinstance(other, TwistedLaurentPoly):
            return self.twist == other.twist and self.terms == other.terms
        if isinstance(other, (int, Fraction, CycloNumber)):
            return self == self._const(other)
        return NotImplemented

    def __hash__(self):
        return hash(self.render())

    def __repr__(self):
        return f"TwistedLaurentPoly({self.render()})"

    def _check(self, other):
        if isinstance(other, TwistedLaurentPoly):
            if other.twist != self.twist:
                raise ContextMismatch("operands use different twists")
            return other
        return self._const(other)

    def _const(self, c):
        return TwistedLaurentPoly(self.twist, [((0,) * self.n, c)])

    def sorted_terms(self):
        """Terms in descending term order (leading term first)."""
        return sorted(self.terms.items(), key=lambda t: _key(t[0]), reverse=True)

    def leading_term(self):
        if not self.terms:
            raise ValueError("zero has no leading term")
        f = max(self.terms, key=_key)
        return f, self.terms[f]

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def coefficient(self, f):
        return self.terms.get(tuple(f), self.twist.scalar(0))

    def support(self):
        return sorted(self.terms, key=_key, reverse=True)

    # -- ring operations ------------------------------------------------
    def __add__(self, other):
        other = self._check(other)
        out = dict(self.terms)
        for f, c in other.terms.items():
            out[f] = out[f] + c if f in out else c
        return TwistedLaurentPoly(self.twist, out)

    __radd__ = __add__

    def __neg__(self):
        return TwistedLaurentPoly(self.twist, {f: -c for f, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._check(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, TwistedLaurentPoly):
            c = self.twist.scalar(other)
            return TwistedLaurentPoly(self.twist, {f: v * c for f, v in self.terms.items()})
        other = self._check(other)
        tw = self.twist
        out: dict = {}
        for f, a in self.terms.items():
            for g, b in other.terms.items():
                h = tuple(x + y for x, y in zip(f, g))
                c = a * b if tw.ctx is None else a * b * tw.twist_scalar(f, g)
                out[h] = out[h] + c if h in out else c
        return TwistedLaurentPoly(tw, out)

    def __rmul__(self, other):
        # scalars are central
        return self * other

    def __pow__(self, k: int):
        if k < 0:
            if not self.is_monomial():
                raise NoExactQuotient("only monomials can be inverted")
            return self.inverse_monomial() ** (-k)
        result = TwistedLaurentPoly.one(self.twist)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def ell_power(self, ell: int | None = None) -> "TwistedLaurentPoly":
        ell = self.twist.ell if ell is None else ell
        if ell is None:
            raise ValueError("ell_power needs an exponent in the classical ring")
        return self ** ell

    def inverse_monomial(self) -> "TwistedLaurentPoly":
        if not self.is_monomial():
            raise NoExactQuotient("only monomials are units")
        (f, c), = self.terms.items()
        neg = tuple(-x for x in f)
        # x^f x^{-f} = ζ^{Ω(f,-f)} = 1
        return TwistedLaurentPoly(self.twist, [(neg, 1 / c)])

    def commutator(self, other) -> "TwistedLaurentPoly":
        return self * other - other * self

    def exact_divide_right(self, b: "TwistedLaurentPoly") -> "TwistedLaurentPoly":
        """Return q with self = q·b, or raise NoExactQuotient."""
        b = self._check(b)
        if not b:
            raise ZeroDivisionError("division by zero polynomial")
        tw = self.twist
        if not self:
            return TwistedLaurentPoly.zero(tw)
        if b.is_monomial():
            return self * b.inverse_monomial()
        n = self.n
        lo = [min(f[i] for f in self.terms) - min(g[i] for g in b.terms) for i in range(n)]
        hi = [max(f[i] for f in self.terms) - max(g[i] for g in b.terms) for i in range(n)]
        if any(l > h for l, h in zip(lo, hi)):
            raise NoExactQuotient("support of the dividend is too small for the divisor")
        g, d = b.leading_term()
        rem = dict(self.terms)
        quot = {}
        while rem:
            f = max(rem, key=_key)
            c = rem[f]
            h = tuple(x - y for x, y in zip(f, g))
            if any(x < l or x > u for x, l, u in zip(h, lo, hi)):
                raise NoExactQuotient(f"quotient exponent {h} falls outside the admissible box")
            t = c / (d * tw.twist_scalar(h, g)) if tw.ctx else c / d
            quot[h] = t
            for gg, dd in b.terms.items():
                e = tuple(x + y for x, y in zip(h, gg))
                v = t * dd * tw.twist_scalar(h, gg) if tw.ctx else t * dd
                nv = rem.get(e, 0) - v
                if nv:
                    rem[e] = nv
                else:
                    rem.pop(e, None)
        return TwistedLaurentPoly(tw, quot)

    def specialize_commutative(self) -> "TwistedLaurentPoly":
        tw = TwistMatrix.classical(self.n)
        out = {}
        for f, c in self.terms.items():
            out[f] = c.specialize_to_one() if isinstance(c, CycloNumber) else Fraction(c)
        return TwistedLaurentPoly(tw, out)

    def retwist(self, twist: TwistMatrix) -> "TwistedLaurentPoly":
        """Same coefficients and exponents viewed in another ring of equal rank."""
        if twist.n != self.n:
            raise DimensionMismatch("rank mismatch")
        return TwistedLaurentPoly(twist, self.terms)

    # -- classical helpers ----------------------------------------------
    def _require_classical(self):
        if not self.twist.is_classical:
            raise ContextMismatch("operation defined only in the classical ring")

    def partial(self, i: int) -> "TwistedLaurentPoly":
        """∂/∂x_i in the classical ring."""
        self._require_classical()
        out = {}
        for f, c in self.terms.items():
            if f[i]:
                g = list(f)
                g[i] -= 1
                out[tuple(g)] = c * f[i]
        return TwistedLaurentPoly(self.twist, out)

    def evaluate(self, point: Sequence, one=1):
        """Evaluate a classical element at ``point`` (any field supporting ** and /)."""
        self._require_classical()
        total = one * 0
        for f, c in self.terms.items():
            term = one * c
            for x, e in zip(point, f):
                if e:
                    term = term * (x ** e if e > 0 else (one / x) ** (-e))
            total = total + term
        return total

    def exponent_bounds(self):
        if not self.terms:
            return None
        return [
            (min(f[i] for f in self.terms), max(f[i] for f in self.terms))
            for i in range(self.n)
        ]

    # -- rendering / serialization --------------------------------------
    def render(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for f, c in self.sorted_terms():
            cs = c.render() if isinstance(c, CycloNumber) else str(c)
            parts.append(f"{cs}*x^({','.join(str(x) for x in f)})")
        return " + ".join(parts)

    def to_json(self) -> list:
        out = []
        for f, c in self.sorted_terms():
            if isinstance(c, CycloNumber):
                out.append([list(f), [str(x) for x in c.coeffs]])
            else:
                out.append([list(f), str(c)])
        return out

    @classmethod
    def from_json(cls, twist: TwistMatrix, data) -> "TwistedLaurentPoly":
        terms = []
        for f, c in data:
            if isinstance(c, list):
                if twist.ctx is None:
                    raise ContextMismatch("cyclotomic coefficient in a classical ring")
                terms.append((tuple(f), twist.ctx.from_coefficients([Fraction(x) for x in c])))
            else:
                terms.append((tuple(f), Fraction(c)))
        return cls(twist, terms)


def monomial(twist: TwistMatrix, f, c=1) -> TwistedLaurentPoly:
    return TwistedLaurentPoly.monomial(twist, f, c)


def multiply(a: TwistedLaurentPoly, b: TwistedLaurentPoly) -> TwistedLaurentPoly:
    return a * b


def exact_divide_right(a: TwistedLaurentPoly, b: TwistedLaurentPoly) -> TwistedLaurentPoly:
    return a.exact_divide_right(b)


def ell_power(a: TwistedLaurentPoly, ell: int) -> TwistedLaurentPoly:
    return a ** ell


def specialize_commutative(a: TwistedLaurentPoly) -> TwistedLaurentPoly:
    return a.specialize_commutative()


def ordered_product(factors: Sequence[TwistedLaurentPoly], exponents: Sequence[int], twist: TwistMatrix):
    """∏ factors[i]^{exponents[i]} multiplied in increasing index order."""
    out = TwistedLaurentPoly.one(twist)
    for v, e in zip(factors, exponents):
        if e:
            out = out * (v ** e)
    return out

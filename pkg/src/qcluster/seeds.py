"""Seeds, mutation and exchange-graph exploration.

Indices are 0-based throughout the library; the JSON format and the CLI use
1-based indices. Cluster variables are always stored as elements of the
initial (possibly twisted) Laurent ring.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd, lcm
from typing import Sequence

from .errors import (
    DimensionMismatch,
    InternalInconsistency,
    NotMutable,
    NotSkewSymmetric,
    SeedFormatError,
)
from .intlin import IntMatrix
from .tlaurent import TwistedLaurentPoly, TwistMatrix


def skew_symmetrizer(B: IntMatrix) -> tuple[int, ...] | None:
    """Smallest positive integer diagonal D with D·B skew-symmetric, or None."""
    n = B.nrows
    d: list[Fraction | None] = [None] * n
    for start in range(n):
        if d[start] is not None:
            continue
        d[start] = Fraction(1)
        stack = [start]
        while stack:
            i = stack.pop()
            for j in range(n):
                a, b = B[i, j], B[j, i]
                if (a == 0) != (b == 0) or (a and (a > 0) == (b > 0)):
                    return None
                if i == j and a:
                    return None
                if a == 0:
                    continue
                # d_i b_ij = -d_j b_ji
                want = d[i] * a / (-b)
                if d[j] is None:
                    d[j] = want
                    stack.append(j)
                elif d[j] != want:
                    return None
    m = lcm(*(x.denominator for x in d)) if d else 1
    ints = [int(x * m) for x in d]
    g = gcd(*ints) if ints else 1
    return tuple(x // g for x in ints)


class ExchangeData:
    """Exchange matrix B̃ (N × |ex|) with the frozen partition."""

    __slots__ = ("n", "ex", "inv", "ninv", "B", "D")

    def __init__(self, n: int, ex: Sequence[int], inv: Sequence[int], ninv: Sequence[int], B):
        ex, inv, ninv = tuple(sorted(ex)), tuple(sorted(inv)), tuple(sorted(ninv))
        if sorted(ex + inv + ninv) != list(range(n)):
            raise DimensionMismatch("ex, inv and ninv must partition the index range")
        B = IntMatrix.coerce(B)
        if not ex and B.nrows == 0:
            B = IntMatrix([()] * n, ncols=0)
        if B.nrows != n or B.ncols != len(ex):
            raise DimensionMismatch(f"B must be {n}x{len(ex)}, got {B.nrows}x{B.ncols}")
        self.n, self.ex, self.inv, self.ninv, self.B = n, ex, inv, ninv, B
        D = skew_symmetrizer(self.principal)
        if D is None:
            raise NotSkewSymmetric("principal part of B is not skew-symmetrizable")
        self.D = D

    @classmethod
    def square(cls, B) -> "ExchangeData":
        B = IntMatrix.coerce(B)
        return cls(B.nrows, range(B.nrows), (), (), B)

    @property
    def principal(self) -> IntMatrix:
        return self.B.submatrix(self.ex, range(len(self.ex)))

    def col(self, k: int) -> int:
        try:
            return self.ex.index(k)
        except ValueError:
            raise NotMutable(f"index {k + 1} is not mutable") from None

    def column(self, k: int) -> tuple[int, ...]:
        return self.B.column(self.col(k))

    def with_matrix(self, B: IntMatrix) -> "ExchangeData":
        return ExchangeData(self.n, self.ex, self.inv, self.ninv, B)

    def __eq__(self, other):
        return isinstance(other, ExchangeData) and (self.n, self.ex, self.inv, self.ninv, self.B) == (
            other.n, other.ex, other.inv, other.ninv, other.B)

    def __hash__(self):
        return hash((self.n, self.ex, self.inv, self.ninv, self.B))

    def __repr__(self):
        return f"ExchangeData(n={self.n}, ex={self.ex}, inv={self.inv}, ninv={self.ninv}, B={self.B.tolist()})"


def _as_exchange(B, ex=None) -> ExchangeData:
    if isinstance(B, ExchangeData):
        return B
    B = IntMatrix.coerce(B)
    if ex is None:
        return ExchangeData.square(B)
    ex = tuple(ex)
    rest = [i for i in range(B.nrows) if i not in ex]
    return ExchangeData(B.nrows, ex, rest, (), B)


def build_es_fs(B, k: int, s: int) -> tuple[IntMatrix, IntMatrix]:
    """The matrices E_s (N×N) and F_s (ex×ex) for mutation in direction k."""
    data = _as_exchange(B)
    if s not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    c = data.col(k)
    N, m = data.n, len(data.ex)
    E = [[int(i == j) for j in range(N)] for i in range(N)]
    for i in range(N):
        E[i][k] = -1 if i == k else max(0, -s * data.B[i, c])
    F = [[int(i == j) for j in range(m)] for i in range(m)]
    for j in range(m):
        F[c][j] = -1 if j == c else max(0, s * data.B[k, j])
    return IntMatrix(E, ncols=N), IntMatrix(F, ncols=m)


def _mutate_direct(data: ExchangeData, k: int) -> IntMatrix:
    c = data.col(k)
    B = data.B
    rows = []
    for i in range(data.n):
        row = []
        for j in range(len(data.ex)):
            if i == k or j == c:
                row.append(-B[i, j])
            else:
                bik, bkj = B[i, c], B[k, j]
                row.append(B[i, j] + (abs(bik) * bkj + bik * abs(bkj)) // 2)
        rows.append(row)
    return IntMatrix(rows, ncols=len(data.ex))


def mutate_matrix(B, k: int, ex=None):
    """Matrix mutation μ_k, cross-checked against E_s·B̃·F_s for both signs.

    Accepts an ExchangeData (returns ExchangeData) or a square IntMatrix with
    every index mutable (returns IntMatrix).
    """
    data = _as_exchange(B, ex)
    new = _mutate_direct(data, k)
    for s in (1, -1):
        E, F = build_es_fs(data, k, s)
        if E @ data.B @ F != new:
            raise InternalInconsistency(f"E_s B F_s disagrees with direct mutation for s={s}")
    if isinstance(B, ExchangeData):
        return data.with_matrix(new)
    return new


def mutate_form(form: IntMatrix, E: IntMatrix) -> IntMatrix:
    return E.T @ form @ E


@dataclass(frozen=True)
class Seed:
    exchange: ExchangeData
    ring: TwistMatrix  # twist of the initial Laurent ring, where vars live
    form: TwistMatrix  # the seed's own twist Ω′ (equal to ring initially)
    vars: tuple
    history: tuple = ()
    lam: IntMatrix | None = None  # integer lift of the form, mutated alongside

    @property
    def n(self):
        return self.exchange.n

    @property
    def ell(self):
        return self.ring.ell

    @property
    def is_quantum(self) -> bool:
        return self.ring.ell is not None

    def key(self):
        return (self.exchange.B, tuple(v.render() for v in self.vars))

    def __eq__(self, other):
        return isinstance(other, Seed) and (
            self.exchange, self.ring, self.form, self.vars, self.history, self.lam
        ) == (other.exchange, other.ring, other.form, other.vars, other.history, other.lam)

    def __hash__(self):
        return hash(self.key())

    def same_seed(self, other) -> bool:
        """Equality ignoring the mutation history."""
        return (self.exchange, self.form, self.vars, self.lam) == (other.exchange, other.form, other.vars, other.lam)

    def frame_monomial(self, h: Sequence[int]) -> TwistedLaurentPoly:
        """M′(h) for h ≥ 0: the current toric frame evaluated in the initial ring."""
        if any(x < 0 for x in h):
            raise ValueError("frame_monomial expects a nonnegative exponent vector")
        out = TwistedLaurentPoly.one(self.ring)
        twist_exp = 0
        for p, hp in enumerate(h):
            if hp:
                out = out * (self.vars[p] ** hp)
        if self.is_quantum:
            for p in range(self.n):
                for q in range(p + 1, self.n):
                    if h[p] and h[q]:
                        twist_exp += h[p] * h[q] * self.form.entries[p, q]
            out = out * self.ring.ctx.root_power(-twist_exp)
        return out


def initial_seed(exchange: ExchangeData, Lambda=None, ell: int | None = None, Omega=None) -> Seed:
    """Seed whose variables are the generators of the initial ring."""
    N = exchange.n
    lam = None
    if Lambda is not None:
        lam = IntMatrix.coerce(Lambda)
        if lam.shape != (N, N):
            raise DimensionMismatch("Lambda must be N x N")
        if not lam.is_skew():
            raise NotSkewSymmetric("Lambda must be skew-symmetric")
    if ell is None:
        twist = TwistMatrix.classical(N)
    else:
        base = Omega if Omega is not None else lam
        if base is None:
            raise SeedFormatError("a quantum seed needs Lambda or Omega")
        twist = TwistMatrix(base, ell)
    vars_ = tuple(TwistedLaurentPoly.generator(twist, i) for i in range(N))
    return Seed(exchange, twist, twist, vars_, (), lam)


def mutate_seed(seed: Seed, k: int) -> Seed:
    data = seed.exchange
    b = data.column(k)
    N = data.n
    pos = tuple(max(0, x) for x in b)
    neg = tuple(max(0, -x) for x in b)
    ek = tuple(int(i == k) for i in range(N))
    tw = seed.ring
    total = TwistedLaurentPoly.zero(tw)
    for h in (pos, neg):
        term = seed.frame_monomial(h)
        if seed.is_quantum:
            # M′(h - e_k) · M′(e_k) = ζ^{Ω′(h, e_k)} M′(h)
            term = term * tw.ctx.root_power(seed.form.form(h, ek))
        total = total + term
    new_var = total.exact_divide_right(seed.vars[k])
    E, _ = build_es_fs(data, k, 1)
    new_data = mutate_matrix(data, k)
    if seed.is_quantum:
        form = TwistMatrix(mutate_form(seed.form.entries, E), seed.ell)
    else:
        form = seed.form
    lam = mutate_form(seed.lam, E) if seed.lam is not None else None
    vars_ = seed.vars[:k] + (new_var,) + seed.vars[k + 1:]
    return Seed(new_data, tw, form, vars_, seed.history + (k,), lam)


def mutate_sequence(seed: Seed, ks: Sequence[int]) -> Seed:
    for k in ks:
        seed = mutate_seed(seed, k)
    return seed


def quantum_commutation_defects(seed: Seed) -> list[tuple[int, int]]:
    """Pairs (i, k) violating vars[i]·vars[k] = ζ^{2Ω′(e_i,e_k)} vars[k]·vars[i]."""
    if not seed.is_quantum:
        return []
    bad = []
    N = seed.n
    for i in range(N):
        for k in range(i + 1, N):
            z = seed.ring.ctx.root_power(2 * seed.form.entries[i, k])
            if seed.vars[i] * seed.vars[k] != seed.vars[k] * seed.vars[i] * z:
                bad.append((i, k))
    return bad


# ---------------------------------------------------------------------------
# exploration


@dataclass
class ExchangeGraph:
    nodes: list = field(default_factory=list)  # Seeds, in discovery order
    edges: list = field(default_factory=list)  # (a, b, k) with a < b
    truncated: bool = False

    def cluster_count(self) -> int:
        """Distinct clusters as unordered variable sets, ignoring labels and B."""
        return len({frozenset(v.render() for v in s.vars) for s in self.nodes})

    def to_json(self) -> dict:
        return {
            "nodes": [
                {
                    "id": i,
                    "history": [k + 1 for k in s.history],
                    "B": s.exchange.B.tolist(),
                    "vars": [v.render() for v in s.vars],
                }
                for i, s in enumerate(self.nodes)
            ],
            "edges": [[a, b, k + 1] for a, b, k in self.edges],
            "truncated": self.truncated,
            "clusters": self.cluster_count(),
        }

    def to_dot(self) -> str:
        lines = ["graph exchange {"]
        for i, s in enumerate(self.nodes):
            label = ".".join(str(k + 1) for k in s.history) or "init"
            lines.append(f'  n{i} [label="{label}"];')
        for a, b, k in self.edges:
            lines.append(f'  n{a} -- n{b} [label="{k + 1}"];')
        lines.append("}")
        return "\n".join(lines) + "\n"


def explore(seed: Seed, depth: int = 6) -> ExchangeGraph:
    if depth < 0:
        raise ValueError("depth must be nonnegative")
    graph = ExchangeGraph(nodes=[seed])
    index = {seed.key(): 0}
    edges = set()
    frontier = [0]
    for level in range(depth + 1):
        last = level == depth
        nxt = []
        for a in frontier:
            for k in seed.exchange.ex:
                m = mutate_seed(graph.nodes[a], k)
                key = m.key()
                b = index.get(key)
                if b is None:
                    if last:
                        graph.truncated = True
                        continue
                    b = len(graph.nodes)
                    index[key] = b
                    graph.nodes.append(m)
                    nxt.append(b)
                edges.add((min(a, b), max(a, b), k))
        frontier = nxt
        if not frontier:
            break
    graph.edges = sorted(edges)
    return graph


def check_mixed_laurent(seed: Seed) -> list[dict]:
    """Per variable: every exponent is nonnegative at the non-inverted frozen indices."""
    report = []
    for idx, v in enumerate(seed.vars):
        witnesses = [list(f) for f in v.support() if any(f[i] < 0 for i in seed.exchange.ninv)]
        report.append({"index": idx + 1, "ok": not witnesses, "witnesses": witnesses})
    return report


# ---------------------------------------------------------------------------
# JSON


def seed_to_json(seed: Seed) -> dict:
    d = seed.exchange
    out = {
        "n": d.n,
        "ex": [i + 1 for i in d.ex],
        "inv": [i + 1 for i in d.inv],
        "ninv": [i + 1 for i in d.ninv],
        "B": d.B.tolist(),
    }
    if seed.lam is not None:
        out["Lambda"] = seed.lam.tolist()
    if seed.is_quantum:
        out["ell"] = seed.ell
        if seed.lam is None or seed.lam.mod(seed.ell) != seed.form.entries:
            out["Omega"] = seed.form.entries.tolist()
    initial = all(v == TwistedLaurentPoly.generator(seed.ring, i) for i, v in enumerate(seed.vars))
    if seed.history or not initial:
        out["history"] = [k + 1 for k in seed.history]
        out["vars"] = [v.to_json() for v in seed.vars]
        if seed.is_quantum:
            out["ring"] = seed.ring.entries.tolist()
    return out


def _int_list(obj, name):
    if not isinstance(obj, list) or not all(isinstance(x, int) and not isinstance(x, bool) for x in obj):
        raise SeedFormatError(f"'{name}' must be an array of integers")
    return obj


def _matrix(obj, name):
    if not isinstance(obj, list):
        raise SeedFormatError(f"'{name}' must be an array of rows")
    return [_int_list(r, name) for r in obj]


def seed_from_json(obj) -> Seed:
    if not isinstance(obj, dict):
        raise SeedFormatError("seed JSON must be an object")
    known = {"n", "ex", "inv", "ninv", "B", "Lambda", "ell", "Omega", "history", "vars", "ring"}
    extra = set(obj) - known
    if extra:
        raise SeedFormatError(f"unknown keys: {sorted(extra)}")
    try:
        n = obj["n"]
        ex = [i - 1 for i in _int_list(obj["ex"], "ex")]
        inv = [i - 1 for i in _int_list(obj.get("inv", []), "inv")]
        ninv = [i - 1 for i in _int_list(obj.get("ninv", []), "ninv")]
        B = _matrix(obj["B"], "B")
    except KeyError as e:
        raise SeedFormatError(f"missing key {e}") from None
    if not isinstance(n, int) or n < 0:
        raise SeedFormatError("'n' must be a nonnegative integer")
    data = ExchangeData(n, ex, inv, ninv, B)
    lam = IntMatrix(_matrix(obj["Lambda"], "Lambda"), ncols=n) if "Lambda" in obj else None
    ell = obj.get("ell")
    if ell is not None and (not isinstance(ell, int) or ell < 1):
        raise SeedFormatError("'ell' must be a positive integer")
    omega = IntMatrix(_matrix(obj["Omega"], "Omega"), ncols=n) if "Omega" in obj else None
    if lam is not None and (lam.shape != (n, n) or not lam.is_skew()):
        raise NotSkewSymmetric("Lambda must be a skew-symmetric N x N matrix")
    if ell is None and omega is not None:
        raise SeedFormatError("'Omega' requires 'ell'")
    if "vars" not in obj:
        seed = initial_seed(data, lam, ell, omega)
        if "history" in obj and obj["history"]:
            raise SeedFormatError("'history' given without 'vars'")
        return seed
    history = tuple(k - 1 for k in _int_list(obj.get("history", []), "history"))
    if ell is None:
        ring = TwistMatrix.classical(n)
        form = ring
    else:
        if "ring" not in obj:
            raise SeedFormatError("quantum seed with 'vars' needs 'ring'")
        ring = TwistMatrix(_matrix(obj["ring"], "ring"), ell)
        base = omega if omega is not None else lam
        if base is None:
            raise SeedFormatError("a quantum seed needs Lambda or Omega")
        form = TwistMatrix(base, ell)
    raw = obj["vars"]
    if not isinstance(raw, list) or len(raw) != n:
        raise SeedFormatError("'vars' must list N variables")
    try:
        vars_ = tuple(TwistedLaurentPoly.from_json(ring, v) for v in raw)
    except (TypeError, ValueError) as e:
        raise SeedFormatError(f"bad variable encoding: {e}") from None
    return Seed(data, ring, form, vars_, history, lam)


def load_seed(path) -> Seed:
    with open(path, encoding="utf-8") as fh:
        try:
            obj = json.load(fh)
        except json.JSONDecodeError as e:
            raise SeedFormatError(f"invalid JSON: {e}") from None
    return seed_from_json(obj)


def dump_seed(seed: Seed) -> str:
    return json.dumps(seed_to_json(seed), sort_keys=False) + "\n"


__all__ = [
    "ExchangeData",
    "ExchangeGraph",
    "Seed",
    "build_es_fs",
    "check_mixed_laurent",
    "dump_seed",
    "explore",
    "initial_seed",
    "load_seed",
    "mutate_matrix",
    "mutate_seed",
    "mutate_sequence",
    "quantum_commutation_defects",
    "seed_from_json",
    "seed_to_json",
    "skew_symmetrizer",
]

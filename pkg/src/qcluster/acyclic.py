"""Acyclic exchange matrices and their explicit presentations."""

from __future__ import annotations

from math import gcd

from .compat import check_compatible
from .errors import HasFrozen, HypothesisViolated, NotAcyclic, VerificationFailed
from .seeds import ExchangeData, initial_seed, mutate_seed
from .tlaurent import TwistedLaurentPoly, ordered_product


def is_acyclic(B: ExchangeData) -> bool:
    P = B.principal
    m = P.nrows
    succ = [[j for j in range(m) if P[i, j] > 0] for i in range(m)]
    state = [0] * m  # 0 new, 1 on stack, 2 done
    for root in range(m):
        if state[root]:
            continue
        stack = [(root, iter(succ[root]))]
        state[root] = 1
        while stack:
            v, it = stack[-1]
            nxt = next(it, None)
            if nxt is None:
                state[v] = 2
                stack.pop()
            elif state[nxt] == 1:
                return False
            elif state[nxt] == 0:
                state[nxt] = 1
                stack.append((nxt, iter(succ[nxt])))
    return True


def _require(B: ExchangeData):
    if len(B.ex) != B.n:
        raise HasFrozen("presentations need every index to be mutable")
    if not is_acyclic(B):
        raise NotAcyclic("the exchange graph has an oriented cycle")


def _binomial_exponents(B: ExchangeData, k: int):
    b = B.column(k)
    return tuple(max(0, x) for x in b), tuple(max(0, -x) for x in b)


def _render_product(exps, name="x"):
    parts = []
    for i, e in enumerate(exps):
        if e:
            parts.append(f"{name}{i + 1}" + (f"^{e}" if e != 1 else ""))
    return "*".join(parts) or "1"


def _render_binomial(pos, neg, mu, nu, name):
    """Render ζ^mu·∏^{pos} + ζ^nu·∏^{neg}, nontrivial monomials first."""
    def one(exps, k):
        mono = _render_product(exps, name)
        if not k:
            return mono
        scal = f"eps^({k}/2)"
        return scal if mono == "1" else f"{scal}*{mono}"

    terms = [(exps, k) for exps, k in ((pos, mu), (neg, nu))]
    if pos == neg and mu == nu:
        return "2" if not any(pos) and not mu else f"2*{one(pos, mu)}"
    terms.sort(key=lambda t: not any(t[0]))
    return " + ".join(one(e, k) for e, k in terms)


def classical_presentation(B: ExchangeData) -> list[dict]:
    """x_k·x′_k = ∏ x_i^{[b_ik]₊} + ∏ x_i^{[−b_ik]₊}, verified in the Laurent ring."""
    _require(B)
    seed = initial_seed(B)
    tw = seed.ring
    out = []
    for k in B.ex:
        pos, neg = _binomial_exponents(B, k)
        rhs = TwistedLaurentPoly.monomial(tw, pos) + TwistedLaurentPoly.monomial(tw, neg)
        xk = seed.vars[k]
        xk_new = mutate_seed(seed, k).vars[k]
        if xk * xk_new != rhs:
            raise VerificationFailed(f"classical exchange relation {k + 1} does not hold")
        rendered = _render_binomial(pos, neg, 0, 0, "x")
        out.append({"k": k + 1, "lhs": f"x{k + 1}*x{k + 1}'", "rhs": rendered, "poly": rhs})
    return out


def presentation_exponents(b, phi, k):
    """The displayed double sums μ_k, ν_k for column b and frame matrix φ."""
    N = len(b)
    mu = sum(b[i] * b[j] * phi(i, j) for i in range(N) for j in range(i + 1, N) if b[i] > 0 and b[j] > 0)
    mu -= sum(b[i] * phi(i, k) for i in range(N) if b[i] > 0)
    nu = sum(b[i] * b[j] * phi(i, j) for i in range(N) for j in range(i + 1, N) if b[i] < 0 and b[j] < 0)
    nu += sum(b[i] * phi(i, k) for i in range(N) if b[i] < 0)
    return mu, nu


CONVENTIONS = (
    ("phi_ij = Lambda_ij", lambda L: (lambda i, j: L[i, j])),
    ("phi_ij = Lambda_ji", lambda L: (lambda i, j: L[j, i])),
)


def quantum_presentation(B: ExchangeData, Lambda, ell: int) -> dict:
    """Generator and exchange relations, each verified by expansion in the twisted ring.

    The exchange relations are read as y′_k·y_k = ζ^{μ_k}·∏y_i^{[b_ik]₊} + ζ^{ν_k}·∏y_i^{[−b_ik]₊}
    (products in increasing index order, ζ = ε^{1/2}). The displayed exponent
    formula is tried under each convention in CONVENTIONS; the first one that
    verifies for every k is used and reported.
    """
    _require(B)
    pair = check_compatible(Lambda, B)
    if ell % 2 == 0:
        raise HypothesisViolated(f"ell = {ell} must be odd")
    if any(gcd(ell, d) != 1 for d in pair.D):
        raise HypothesisViolated(f"ell = {ell} must be coprime to D = {list(pair.D)}")
    L = pair.Lambda
    seed = initial_seed(B, L, ell)
    tw, ctx = seed.ring, seed.ring.ctx
    y = seed.vars
    N = B.n

    commutation = []
    for j in range(N):
        for k in range(j + 1, N):
            lam = L[j, k] % ell
            ok = y[j] * y[k] == y[k] * y[j] * ctx.root_power(2 * lam)
            if not ok:
                raise VerificationFailed(f"y{j + 1} y{k + 1} = eps^{lam} y{k + 1} y{j + 1} fails")
            commutation.append({"j": j + 1, "k": k + 1, "eps_power": lam})

    primes = [mutate_seed(seed, k).vars[k] for k in range(N)]
    tried = []
    for name, make in CONVENTIONS:
        phi = make(L)
        rels = []
        good = True
        for k in range(N):
            pos, neg = _binomial_exponents(B, k)
            mu, nu = presentation_exponents(B.column(k), phi, k)
            rhs = (
                ordered_product(y, pos, tw) * ctx.root_power(mu)
                + ordered_product(y, neg, tw) * ctx.root_power(nu)
            )
            if primes[k] * y[k] != rhs:
                good = False
                break
            rels.append({
                "k": k + 1,
                "lhs": f"y{k + 1}'*y{k + 1}",
                "mu": mu % ell,
                "nu": nu % ell,
                "rhs": _render_binomial(pos, neg, mu % ell, nu % ell, "y"),
                "poly": rhs,
            })
        tried.append(name)
        if good:
            return {
                "ell": ell,
                "convention": name,
                "tried": tried,
                "commutation": commutation,
                "exchange": rels,
                "primes": primes,
            }
    raise VerificationFailed(f"no exponent convention verified; tried {tried}")


def relations_json(pres: dict) -> list:
    """Relations as (lhs, rhs) rendering pairs."""
    out = [[f"y{c['j']}*y{c['k']}", f"eps^{c['eps_power']}*y{c['k']}*y{c['j']}"] for c in pres["commutation"]]
    out += [[r["lhs"], r["rhs"]] for r in pres["exchange"]]
    return out

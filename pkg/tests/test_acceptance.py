"""Acceptance criteria 1-9, one test each; every test prints a single PASS/FAIL line.

Run directly with ``python3 tests/test_acceptance.py`` for the summary alone.
"""

import contextlib
import csv
import io
import random
import sys
import time
from itertools import combinations, product

from _support import (
    brute_kernel_size,
    compatible_pairs,
    multivector_oracle,
    pair_fixtures,
    random_exchange,
    random_skew,
)
from qcluster import fixtures
from qcluster.azumaya import frozen_stratum_pi_degree, noncentral_frozen, pi_degree
from qcluster.cli import main as cli_main
from qcluster.compat import check_compatible, mutate_pair
from qcluster.intlin import IntMatrix, lattice_index_mod, skew_rank
from qcluster.kronecker import conic_residual, run_suite
from qcluster.poisson import (
    GSVBracketContext,
    anticanonical_coefficient,
    gsv_bracket,
    in_kernel,
    mutate_weight,
    torus_weights,
)
from qcluster.porder import (
    DerivationSpec,
    central_ell_power_mutation_check,
    derivation_partial,
    difference_quotient_check,
)
from qcluster.seeds import initial_seed, mutate_matrix, mutate_sequence
from qcluster.tlaurent import TwistedLaurentPoly, TwistMatrix

RESULTS = {}


def report(n, ok, detail=""):
    line = f"criterion {n}: {'PASS' if ok else 'FAIL'}" + (f"  {detail}" if detail else "")
    RESULTS[n] = line
    sys.__stdout__.write(line + "\n")
    sys.__stdout__.flush()


@contextlib.contextmanager
def criterion(n):
    """Record PASS/FAIL for criterion n; failures re-raise so pytest sees them."""
    info = {"detail": ""}
    try:
        yield info
    except BaseException as e:
        report(n, False, f"{type(e).__name__}: {e}"[:300])
        raise
    report(n, True, info["detail"])


# 1 ---------------------------------------------------------------------------


def test_criterion_1_classical_suite():
    with criterion(1) as info:
        t0 = time.perf_counter()
        results = [run_suite(name) for name in ("z-identities", "casimir", "recursion")]
        elapsed = time.perf_counter() - t0
        checks = [c for r in results for c in r["checks"]]
        names = {c["name"] for c in checks}
        failed = [c["name"] for c in checks if not c["ok"]]
        assert not failed, failed
        assert "2x1x2z - 2x1^2 - 2x2^2 - 2 = 2f" in names
        assert "x6x8 = x7^2 + 1" in names
        assert all(f"x{n} has a monomial denominator" in names for n in range(3, 9))
        assert sum(n.startswith("periodic values") for n in names) == 4
        assert elapsed < 5.0, f"{elapsed:.2f}s"
        info["detail"] = f"{len(checks)} exact checks in {elapsed:.2f}s"


# 2 ---------------------------------------------------------------------------


def test_criterion_2_quantum_suite():
    with criterion(2) as info:
        t0 = time.perf_counter()
        rep = run_suite("quantum")
        elapsed = time.perf_counter() - t0
        assert rep["ok"], rep["failed"]
        names = {c["name"] for c in rep["checks"]}
        for ell in (3, 5, 7):
            for rel in ("x1x2 = eps x2x1", "x1'x1 = eps^-1 x2^2 + 1", "x2'x2 = eps x1^2 + 1",
                        "presentation verified", "PI degree = l"):
                assert f"l={ell}: {rel}" in names
        assert elapsed < 10.0, f"{elapsed:.2f}s"
        info["detail"] = f"ell in (3, 5, 7), {len(rep['checks'])} checks in {elapsed:.2f}s"


# 3 ---------------------------------------------------------------------------


def test_criterion_3_central_power_mutation():
    with criterion(3) as info:
        pairs = dict(compatible_pairs())
        runs = 0
        for ell in (3, 5):
            kr = pairs["kronecker"]
            for k in (0, 1):
                assert central_ell_power_mutation_check(fixtures.kronecker_seed(ell), k, kr)["ok"]
                runs += 1
            b32 = pairs["b3x2"]
            seed = initial_seed(b32.B, b32.Lambda, ell)
            for k in (0, 1):
                assert central_ell_power_mutation_check(seed, k, b32)["ok"]
                runs += 1
        info["detail"] = f"{runs} symbolic identities (Kronecker and 3x2 acyclic)"


# 4 ---------------------------------------------------------------------------


def test_criterion_4_difference_quotient():
    with criterion(4) as info:
        total = 0
        for name, B, L in pair_fixtures():
            for ell in (3, 5):
                rng = random.Random(f"dq-{name}-{ell}")
                spec = DerivationSpec(L, ell)
                for _ in range(50):
                    f = tuple(rng.randint(-2, 2) for _ in range(B.n))
                    g = tuple(rng.randint(-3, 3) for _ in range(B.n))
                    rep = difference_quotient_check(spec, f, g)
                    assert rep["ok"], rep
                    total += 1
        info["detail"] = f"{total} pairs over {len(pair_fixtures())} fixtures"


# 5 ---------------------------------------------------------------------------

CASES = 100


def _prop_matrix_involution(rng):
    B = random_exchange(rng)
    k = rng.choice(B.ex)
    assert mutate_matrix(mutate_matrix(B, k), k) == B


def _prop_seed_involution(rng):
    B = random_exchange(rng, max_mut=3, max_frozen=1, bound=1)
    s = mutate_sequence(initial_seed(B), [rng.choice(B.ex) for _ in range(rng.randint(0, 2))])
    k = rng.choice(B.ex)
    assert mutate_sequence(s, [k, k]).same_seed(s)


PAIRS = compatible_pairs()


def _random_pair(rng, steps):
    _, p = rng.choice(PAIRS)
    for _ in range(steps):
        p = mutate_pair(p, rng.choice(p.B.ex))
    return p


def _prop_pair_involution(rng):
    p = _random_pair(rng, rng.randint(0, 3))
    k = rng.choice(p.B.ex)
    assert mutate_pair(mutate_pair(p, k), k) == p


def _random_weight(rng, B):
    basis = torus_weights(B)
    coeffs = [rng.randint(-2, 2) for _ in basis]
    return tuple(sum(c * w.nu[i] for c, w in zip(coeffs, basis)) for i in range(B.n))


def _prop_weight_involution(rng):
    B = random_exchange(rng, max_frozen=3)
    nu = _random_weight(rng, B)
    k = rng.choice(B.ex)
    assert mutate_weight(mutate_weight(nu, B, k), mutate_matrix(B, k), k).nu == nu


def _prop_sign_independence(rng):
    p = _random_pair(rng, rng.randint(0, 3))
    k = rng.choice(p.B.ex)
    assert mutate_pair(p, k, 1) == mutate_pair(p, k, -1)


def _prop_d_invariance(rng):
    _, p0 = rng.choice(PAIRS)
    p = p0
    for _ in range(rng.randint(1, 6)):
        p = mutate_pair(p, rng.choice(p.B.ex))
        assert check_compatible(p.Lambda, p.B).D == p0.D


def _prop_weight_kernel(rng):
    B = random_exchange(rng, max_frozen=3)
    nu = _random_weight(rng, B)
    k = rng.choice(B.ex)
    assert in_kernel(mutate_weight(nu, B, k).nu, mutate_matrix(B, k))


def _prop_jacobi(rng):
    n = rng.randint(2, 4)
    ctx = GSVBracketContext(random_skew(rng, n, 3))
    tw = TwistMatrix.classical(n)
    a, b, c = (TwistedLaurentPoly.monomial(tw, [rng.randint(-2, 2) for _ in range(n)], rng.randint(1, 3))
               for _ in range(3))
    br = lambda p, q: gsv_bracket(p, q, ctx)
    assert not (br(a, br(b, c)) + br(b, br(c, a)) + br(c, br(a, b)))


def _random_element(rng, tw, terms=3, span=2):
    out = TwistedLaurentPoly.zero(tw)
    for _ in range(terms):
        f = [rng.randint(-span, span) for _ in range(tw.n)]
        c = rng.randint(-3, 3) or 1
        if tw.ctx is not None:
            c = tw.ctx.root_power(rng.randrange(tw.ell)) * c
        out = out + TwistedLaurentPoly.monomial(tw, f, c)
    return out


def _prop_leibniz(rng):
    name, B, L = rng.choice(pair_fixtures())
    spec = DerivationSpec(L, rng.choice((3, 5, 7)))
    f = tuple(rng.randint(-2, 2) for _ in range(B.n))
    a, b = _random_element(rng, spec.twist), _random_element(rng, spec.twist)
    d = lambda x: derivation_partial(spec, f, x)
    assert d(a * b) == d(a) * b + a * d(b)


def _random_twist(rng):
    n = rng.randint(1, 3)
    ell = rng.choice((None, 3, 5, 7))
    return TwistMatrix.classical(n) if ell is None else TwistMatrix(random_skew(rng, n, 6), ell)


def _prop_associativity(rng):
    tw = _random_twist(rng)
    a, b, c = (_random_element(rng, tw) for _ in range(3))
    assert (a * b) * c == a * (b * c)


def _prop_exact_divide(rng):
    tw = _random_twist(rng)
    q, b = _random_element(rng, tw), _random_element(rng, tw, terms=rng.randint(1, 3))
    if b:
        assert (q * b).exact_divide_right(b) == q


PROPERTIES = [
    ("matrix mutation involution", _prop_matrix_involution),
    ("seed mutation involution", _prop_seed_involution),
    ("pair mutation involution", _prop_pair_involution),
    ("weight mutation involution", _prop_weight_involution),
    ("E+/E- sign independence", _prop_sign_independence),
    ("D invariance on paths <= 6", _prop_d_invariance),
    ("kernel membership after weight mutation", _prop_weight_kernel),
    ("GSV Jacobi on monomial triples", _prop_jacobi),
    ("Leibniz for the derivation", _prop_leibniz),
    ("associativity of twisted product", _prop_associativity),
    ("exact_divide round trip", _prop_exact_divide),
]


def test_criterion_5_property_suites():
    with criterion(5) as info:
        for name, prop in PROPERTIES:
            rng = random.Random(f"prop-{name}")
            for i in range(CASES):
                try:
                    prop(rng)
                except AssertionError as e:
                    raise AssertionError(f"{name}, case {i}: {e}") from None
        info["detail"] = f"{len(PROPERTIES)} properties x {CASES} cases"


# 6 ---------------------------------------------------------------------------


def test_criterion_6_azumaya_dichotomy():
    with criterion(6) as info:
        for ell in (3, 5, 7):
            for L, central in ((fixtures.B3X1_CENTRAL, True), (fixtures.B3X1_NONCENTRAL, False)):
                Om = TwistMatrix(L, ell)
                nc = noncentral_frozen(Om, [2])
                deg, stratum = pi_degree(Om), frozen_stratum_pi_degree(Om, 2)
                assert (nc == []) == central
                assert (stratum < deg) == (not central), (ell, L, stratum, deg)
                assert (stratum == deg) == central
        # a non-central index whose stratum keeps the full degree (see the report note)
        Om = TwistMatrix(fixtures.B3X1_EQUAL_DEGREE, 3)
        note = "non-central index with equal stratum degree exists" if (
            noncentral_frozen(Om, [2]) == [2] and frozen_stratum_pi_degree(Om, 2) == pi_degree(Om)
        ) else ""
        info["detail"] = "central '=' / non-central '<' for ell in (3, 5, 7)" + (f"; note: {note}" if note else "")


# 7 ---------------------------------------------------------------------------


def test_criterion_7_lattice_index_brute_force():
    with criterion(7) as info:
        t0 = time.perf_counter()
        count = 0
        for ell in (3, 5):
            for N in range(1, 5):
                idx = [(i, j) for i in range(N) for j in range(i + 1, N)]
                for vals in product(range(ell), repeat=len(idx)):
                    rows = [[0] * N for _ in range(N)]
                    for (i, j), v in zip(idx, vals):
                        rows[i][j], rows[j][i] = v, (-v) % ell
                    M = IntMatrix(rows)
                    want = ell**N // brute_kernel_size(M, ell)
                    assert lattice_index_mod(M, ell) == want, (rows, ell)
                    assert pi_degree(M, ell) ** 2 == want, (rows, ell)
                    count += 1
        elapsed = time.perf_counter() - t0
        assert elapsed < 30.0, f"{elapsed:.1f}s"
        info["detail"] = f"{count} matrices in {elapsed:.1f}s"


# 8 ---------------------------------------------------------------------------


def test_criterion_8_anticanonical_oracle():
    with criterion(8) as info:
        compared = 0
        for name, B, L in pair_fixtures():
            L = IntMatrix(L)
            if B.n > 4:
                continue
            m = B.n - skew_rank(L)
            for theta in combinations(torus_weights(B), m):
                assert anticanonical_coefficient(L, theta) == multivector_oracle(L, theta), name
                compared += 1
        c = anticanonical_coefficient(fixtures.KRONECKER_LAMBDA, [])
        assert c != 0
        info["detail"] = f"{compared} coefficients match; Kronecker c = {c}"


# 9 ---------------------------------------------------------------------------


def test_criterion_9_conics():
    with criterion(9) as info:
        zs = ["-4", "-3", "-2", "-1", "0", "1", "2", "2.5", "3"]
        buf = io.StringIO()
        with contextlib.redirect_stdout(buf):
            code = cli_main(["conics", "--z", *zs, "--samples", "60"])
        assert code == 0
        rows = list(csv.DictReader(io.StringIO(buf.getvalue())))
        worst = 0.0
        base = {}
        for r in rows:
            z = float(r["z"])
            x1 = complex(float(r["re_x1"]), float(r["im_x1"]))
            x2 = complex(float(r["re_x2"]), float(r["im_x2"]))
            worst = max(worst, conic_residual(z, x1, x2))
            if r["branch"] == "base":
                base.setdefault(z, set()).add((x1, x2))
        assert worst < 1e-9, worst
        want = {(0j, 1j), (0j, -1j), (1j, 0j), (-1j, 0j)}
        assert set(base) == {float(z) for z in zs}
        assert all(pts == want for pts in base.values())
        info["detail"] = f"{len(rows)} samples, max residual {worst:.1e}, base points on {len(base)} curves"


if __name__ == "__main__":
    tests = [v for k, v in sorted(globals().items()) if k.startswith("test_criterion_")]
    failed = 0
    for t in tests:
        try:
            t()
        except BaseException:
            failed += 1
    sys.exit(1 if failed else 0)

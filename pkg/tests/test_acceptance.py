"""Acceptance suite: one PASS/FAIL line per criterion.

Run with ``pytest tests/test_acceptance.py -s`` to see the lines.
"""

import itertools
import time

import mpmath
import pytest

from ckbounds import exactpoly as ep
from ckbounds.criteria import (
    BoundInputs,
    ReductionMode,
    Variant,
    bound,
    coleman_weight2_verdict,
    criteria_values,
    curve_factor,
    reduction_type_count,
)
from ckbounds.curvemodel import (
    GeometricInvariants,
    HyperellipticEven,
    PuncturedLine,
    Superelliptic,
    invariants,
)
from ckbounds.hilbert import hs_local, rational_series
from ckbounds.pointcount import admissible_prime, count_points, hasse_weil_margin
from ckbounds.selmerdims import (
    ArithmeticInputs,
    GradedPieceDims,
    InputInconsistency,
    QuotientDescriptor,
    QuotientKind,
    build_quotient,
    poitou_tate_dim,
)

from .corpus import CORPUS, brute_force_affine

TPL_SPEC = PuncturedLine.rational([0, 1])


def report(number, title, failures, detail=""):
    status = "PASS" if not failures else "FAIL"
    extra = f" ({detail})" if detail else ""
    print(f"\n[{status}] criterion {number}: {title}{extra}")
    for f in failures[:5]:
        print(f"    {f}")
    assert not failures, failures[:5]


def test_criterion_1_thrice_punctured_line_bound():
    start = time.perf_counter()
    inv = invariants(TPL_SPEC)
    failures = []
    worst = 0.0
    for p in (3, 5, 7):
        y = count_points(TPL_SPEC, p).y_count
        with mpmath.workdps(60):
            log_p = mpmath.log(p)
            kappa = 1 + mpmath.mpf(p - 1) / ((p - 2) * log_p)
            want = {
                ReductionMode.REFINED: 48 * (p - 2 + mpmath.mpf(p - 1) / log_p),
                ReductionMode.GENERIC: 64 * (p - 2) * kappa,
            }
        for mode, target in want.items():
            bi = BoundInputs({2}, p, y, {}, mode)
            got = bound(inv, bi, reduction_type_count(TPL_SPEC, inv, bi)).total_bound
            rel = abs(got - float(target)) / float(target)
            worst = max(worst, rel)
            if rel > 1e-12:
                failures.append(f"p={p} {mode.value}: {got} vs {target}")
    elapsed = time.perf_counter() - start
    if elapsed >= 1.0:
        failures.append(f"runtime {elapsed:.3f}s >= 1s")
    report(1, "thrice-punctured line bound", failures,
           f"max rel err {worst:.1e}, {elapsed * 1000:.0f} ms")


def test_criterion_2_thrice_punctured_line_criteria():
    inv = invariants(TPL_SPEC)
    arith = ArithmeticInputs(r=0, rho=0, r_p=0, rho_f=0, rho_geo=0, h_BK=0)
    failures = []
    names = ("alpha1", "alpha2", "beta", "gamma", "delta")
    for variant in Variant:
        one = criteria_values(inv, arith, 1, variant)
        two = criteria_values(inv, arith, 2, variant)
        if [getattr(one, k) for k in names] != [1] * 5:
            failures.append(f"{variant.value} s=1: {[getattr(one, k) for k in names]}")
        if any(getattr(two, k) > 0 for k in names):
            failures.append(f"{variant.value} s=2: {[getattr(two, k) for k in names]}")
    report(2, "thrice-punctured line criteria", failures)


def test_criterion_3_even_hyperelliptic():
    # y^2 = -x^6 + x + 1: two conjugate points at infinity
    spec = HyperellipticEven((1, 1, 0, 0, 0, 0, -1))
    inv = invariants(spec)
    failures = []
    for rho_f, s in itertools.product((1, 2, 3), (0, 1, 2)):
        a = ArithmeticInputs(r=inv.g, rho=1, rho_f=rho_f, rho_geo=rho_f)
        c = criteria_values(inv, a, s, Variant.BD)
        if not c.alpha2 == c.beta == rho_f + 1 - s:
            failures.append(f"rho_f={rho_f} s={s}: alpha2'={c.alpha2} beta'={c.beta}")
    for g in range(1, 11):
        if curve_factor(g, 2) != (4 * g + 2) ** 2 * (g + 1):
            failures.append(f"factor g={g}")
    report(3, "even-degree hyperelliptic", failures)


def test_criterion_4_superelliptic():
    failures = []
    for d, m in ((5, 2), (7, 2), (4, 3), (5, 3)):
        f = (1, 1) + (0,) * (d - 2) + (1,)
        spec = Superelliptic(m, f)
        inv = invariants(spec)
        g = inv.g
        if curve_factor(g, inv.n) != 16 * g * g * (g + 1):
            failures.append(f"(d,m)=({d},{m}) factor")
        if not (inv.b == 0 and inv.n == inv.n1 == inv.d_closed == 1):
            failures.append(f"(d,m)=({d},{m}) invariants {inv}")
    report(4, "superelliptic bound factor", failures)


def test_criterion_5_hilbert_consistency():
    failures = []
    checked = 0
    for g in range(6):
        for r_p, rho, rho_f, rho_geo, h in itertools.product(range(6), repeat=5):
            try:
                a = ArithmeticInputs(r=min(r_p, g), rho=rho, r_p=r_p, rho_f=rho_f,
                                     rho_geo=rho_geo, h_BK=h)
                a.check(g)
            except InputInconsistency:
                continue
            for n1, n2 in ((1, 0), (2, 0), (0, 1), (1, 1), (3, 1)):
                n = n1 + 2 * n2
                for d_closed in range(1, n1 + n2 + 1):
                    inv = GeometricInvariants(g, n, n1, n2, d_closed)
                    try:
                        inv.check()
                    except ValueError:
                        continue
                    at = build_quotient(QuotientKind.ABELIAN_BY_ARTIN_TATE, inv, a)
                    try:
                        w2 = build_quotient(QuotientKind.FULL_WEIGHT_TWO, inv, a)
                    except InputInconsistency:
                        w2 = None  # the wedge-square piece would be negative
                    for s in range(4):
                        c = criteria_values(inv, a, s)
                        if coleman_weight2_verdict(at, s).margin != c.beta:
                            failures.append(f"abat {inv} {a} s={s}")
                        if w2 is not None and coleman_weight2_verdict(w2, s).margin != c.delta:
                            failures.append(f"w2 {inv} {a} s={s}")
                        checked += 1
    if checked == 0:
        failures.append("empty grid")
    report(5, "Hilbert series margins equal beta and delta", failures, f"{checked} cases")


def test_criterion_6_betts_series():
    failures = []
    for g in range(6):
        for n in range(1, 6):
            lhs = rational_series((1, -g), (1, -2 * g, -(n - 1)), 2).as_list()
            d2 = g * (3 * g - 1) // 2 + n - 1
            desc = QuotientDescriptor(
                QuotientKind.FULL_WEIGHT_TWO,
                (GradedPieceDims(-1, 0, g), GradedPieceDims(-2, 0, d2)),
            )
            rhs = hs_local(desc, 2).as_list()
            if lhs != rhs:
                failures.append(f"g={g} n={n}: {lhs} vs {rhs}")
    report(6, "rational series cross-check", failures)


def test_criterion_7_point_counts():
    start = time.perf_counter()
    failures = []
    se = Superelliptic(2, (1, 0, 0, 0, 0, 1))
    if count_points(se, 7).y_count != 7:
        failures.append("y^2 = x^5 + 1 at p = 7")
    checked = 0
    for name, spec in CORPUS:
        inv = invariants(spec)
        for p in range(2, 98):
            if not ep.is_prime(p) or not admissible_prime(spec, p).admissible:
                continue
            pc = count_points(spec, p)
            if isinstance(spec, PuncturedLine):
                # no equation: the affine points are P^1(F_p) minus the cusps
                want = p + 1 - sum(
                    1 for x in range(p)
                    if any(ep.evaluate(pt.minimal_poly, x) % p == 0 for pt in spec.finite_punctures)
                ) - int(spec.include_infinity)
            else:
                m = spec.m if isinstance(spec, Superelliptic) else 2
                want = brute_force_affine(spec.f, m, p)
            if pc.y_count != want:
                failures.append(f"{name} p={p}: {pc.y_count} vs {want}")
            if hasse_weil_margin(inv, pc, p) < 0:
                failures.append(f"{name} p={p}: Hasse-Weil margin negative")
            checked += 1
    elapsed = time.perf_counter() - start
    if elapsed >= 10.0:
        failures.append(f"runtime {elapsed:.2f}s >= 10s")
    report(7, "point counts against brute force", failures,
           f"{checked} (curve, p) pairs, {elapsed:.2f} s")


def test_criterion_8_poitou_tate():
    failures = []
    checked = 0
    for g in range(7):
        for rho in range(1, g * g + 1):
            for h in range(4):
                want = g * (g + 1) // 2 - rho + h
                if want < 0:
                    continue
                got = poitou_tate_dim(0, h, rho, g * (3 * g - 1) // 2, g * (g - 1))
                if got != want:
                    failures.append(f"g={g} rho={rho} h={h}: {got} vs {want}")
                checked += 1
    report(8, "Poitou-Tate identity", failures, f"{checked} cases")


if __name__ == "__main__":
    raise SystemExit(pytest.main([__file__, "-s", "-q"]))

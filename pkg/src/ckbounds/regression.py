"""Built-in regression suite: the worked examples reproduced end to end."""

from __future__ import annotations

import math
from typing import Callable, NamedTuple

from .criteria import (
    BoundInputs,
    ReductionMode,
    Variant,
    bound,
    coleman_weight2_verdict,
    criteria_values,
    curve_factor,
    finiteness_verdict,
    kappa,
    reduction_type_count,
)
from .curvemodel import Generic, HyperellipticEven, PuncturedLine, Superelliptic, invariants
from .hilbert import hs_local
from .pointcount import count_points
from .selmerdims import ArithmeticInputs, QuotientKind, build_quotient

REL_TOL = 1e-12


class Row(NamedTuple):
    name: str
    passed: bool
    detail: str


def thrice_punctured_line():
    return PuncturedLine.rational([0, 1], include_infinity=True)


def _tpl_bounds() -> Row:
    tpl = thrice_punctured_line()
    inv = invariants(tpl)
    details, ok = [], True
    for p in (3, 5, 7):
        y = count_points(tpl, p).y_count
        out = {}
        for mode in ReductionMode:
            bi = BoundInputs({2}, p, y, {}, mode)
            out[mode] = bound(inv, bi, reduction_type_count(tpl, inv, bi)).total_bound
        want_refined = 48 * (p - 2 + (p - 1) / math.log(p))
        want_generic = 64 * (p - 2) * kappa(p)
        ok &= math.isclose(out[ReductionMode.REFINED], want_refined, rel_tol=REL_TOL)
        ok &= math.isclose(out[ReductionMode.GENERIC], want_generic, rel_tol=REL_TOL)
        details.append(f"p={p}: {out[ReductionMode.REFINED]:.6f}")
    return Row("thrice-punctured line: 48(p-2+(p-1)/log p)", ok, "; ".join(details))


def _tpl_criteria() -> Row:
    inv = invariants(thrice_punctured_line())
    arith = ArithmeticInputs(r=0, rho=0, r_p=0, h_BK=0)
    one = criteria_values(inv, arith, 1)
    two = criteria_values(inv, arith, 2)
    names = ("alpha1", "alpha2", "beta", "gamma", "delta")
    ok = all(getattr(one, n) == 1 for n in names) and not any(two.verdicts.values())
    return Row(
        "thrice-punctured line: criteria hold iff #S < 2",
        ok,
        f"s=1: {[getattr(one, n) for n in names]}, s=2: {[getattr(two, n) for n in names]}",
    )


def _even_hyperelliptic() -> Row:
    ok = True
    # lc negative and lc a square: both give b = 1
    for f in ((1, 1, 0, 0, 0, 0, -1), (1, 1, 0, 0, 0, 0, 1)):
        inv = invariants(HyperellipticEven(f))
        for rho_f in (1, 2, 3):
            for s in (0, 1, 2):
                arith = ArithmeticInputs(r=inv.g, rho=1, rho_f=rho_f, h_BK=0)
                c = criteria_values(inv, arith, s, Variant.BD)
                ok &= c.alpha2 == c.beta == rho_f + 1 - s
    for g in range(1, 11):
        ok &= curve_factor(g, 2) == (4 * g + 2) ** 2 * (g + 1)
    return Row("even hyperelliptic: alpha2' = beta' = rho_f + 1 - s", ok, "rho_f in 1..3, s in 0..2, g in 1..10")


def _superelliptic() -> Row:
    ok = True
    details = []
    for d, m in ((5, 2), (7, 2), (4, 3), (5, 3)):
        spec = Superelliptic(m, (1,) + (0,) * (d - 1) + (1,))
        inv = invariants(spec)
        ok &= inv.b == 0 and inv.n == inv.n1 == inv.d_closed == 1
        ok &= curve_factor(inv.g, inv.n) == 16 * inv.g**2 * (inv.g + 1)
        c = criteria_values(inv, ArithmeticInputs(r=inv.g, rho=1, h_BK=0), 0, Variant.BD)
        ok &= c.alpha1 == 0 and c.alpha2 == 1
        details.append(f"(d,m)=({d},{m}) g={inv.g}")
    return Row("superelliptic: b = 0, factor 16g^2(g+1), alpha1' = 0 < alpha2'", ok, ", ".join(details))


def _rank_equals_genus() -> Row:
    ok = True
    for g in range(1, 4):
        for n in range(1, 6):
            if 2 - 2 * g - n >= 0:
                continue
            inv = invariants(Generic(g, n, n, 0, n))
            for rho_f in (1, 2):
                arith = ArithmeticInputs(r=g, rho=1, r_p=g, rho_f=rho_f, h_BK=0)
                for s in range(4):
                    ab = finiteness_verdict(build_quotient(QuotientKind.ABELIANIZED, inv, arith), s)
                    at = build_quotient(QuotientKind.ABELIAN_BY_ARTIN_TATE, inv, arith)
                    ok &= ab.finite == (n - 1 - s > 0)
                    ok &= finiteness_verdict(at, s).margin == n - 1 - s + rho_f
                    ok &= coleman_weight2_verdict(at, s).margin == n - 1 - s + rho_f
    return Row("rank equals genus: depth 1 finite iff n - 1 - s > 0", ok, "g in 1..3, n in 1..5, s in 0..3")


def _hilbert_examples() -> Row:
    ok = True
    inv = Generic(2, 1, 1, 0, 1)
    arith = ArithmeticInputs(r=2, rho=1, r_p=2, h_BK=0)
    w2 = hs_local(build_quotient(QuotientKind.FULL_WEIGHT_TWO, invariants(inv), arith), 2)
    ok &= w2.as_list() == [1, 2, 8]
    inv2 = invariants(HyperellipticEven((1, 1, 0, 0, 0, 0, -1)))
    at = hs_local(build_quotient(QuotientKind.ABELIAN_BY_ARTIN_TATE, inv2, arith), 2)
    ok &= at.as_list() == [1, 2, 5]
    return Row("local Hilbert series: 1 + gt + (2g^2 + n - 1)t^2", ok, f"w2 {w2.as_list()}, abat {at.as_list()}")


ROWS: list[Callable[[], Row]] = [
    _tpl_bounds,
    _tpl_criteria,
    _even_hyperelliptic,
    _superelliptic,
    _rank_equals_genus,
    _hilbert_examples,
]


def run_all() -> list[Row]:
    out = []
    for fn in ROWS:
        try:
            out.append(fn())
        except Exception as exc:  # a crash is a failed row, not an aborted suite
            out.append(Row(fn.__name__, False, f"{type(exc).__name__}: {exc}"))
    return out

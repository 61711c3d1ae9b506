"""Finiteness criteria, Coleman-function existence and explicit point bounds."""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import Mapping, NamedTuple

from .curvemodel import (
    CurveError,
    Generic,
    GeometricInvariants,
    Unsupported,
    _unwrap,
    cusp_reduction_profile,
)
from .hilbert import hs_global, hs_local, partial_sum
from .pointcount import InadmissiblePrime, admissible_prime, count_points
from .selmerdims import (
    ASSUMED_BLOCH_KATO,
    ASSUMED_SHA,
    ArithmeticInputs,
    QuotientDescriptor,
)

CRITERIA = ("alpha1", "alpha2", "beta", "gamma", "delta")


class Variant(str, enum.Enum):
    SELMER = "selmer"
    BD = "bd"


class ReductionMode(str, enum.Enum):
    GENERIC = "generic"
    REFINED = "refined"


def kappa(p: int) -> float:
    if p == 2:
        return 2 + 2 / math.log(2)
    return 1 + (p - 1) / ((p - 2) * math.log(p))


@dataclass(frozen=True)
class CriteriaReport:
    alpha1: int
    alpha2: int
    beta: int
    gamma: int
    delta: int
    variant: Variant
    # criterion name -> the assumptions its value relies on
    criterion_flags: Mapping[str, frozenset] = field(default_factory=dict)

    @property
    def conditional_flags(self) -> frozenset:
        return frozenset().union(*self.criterion_flags.values()) if self.criterion_flags else frozenset()

    @property
    def verdicts(self) -> dict:
        return {name: getattr(self, name) > 0 for name in CRITERIA}

    def as_dict(self) -> dict:
        prime = "'" if self.variant is Variant.BD else ""
        return {
            "variant": self.variant.value,
            "criteria": {
                name: {
                    "symbol": name + prime,
                    "value": getattr(self, name),
                    "holds": getattr(self, name) > 0,
                    "conditional_on": sorted(self.criterion_flags.get(name, ())),
                }
                for name in CRITERIA
            },
            "conditional_flags": sorted(self.conditional_flags),
        }


def criteria_values(
    inv: GeometricInvariants, arith: ArithmeticInputs, s: int, variant=Variant.SELMER
) -> CriteriaReport:
    variant = Variant(variant)
    g, b = inv.g, inv.b
    rk = arith.rank_p if variant is Variant.SELMER else arith.r
    rho, rho_f, hbk = arith.rho, arith.picard_f, arith.hbk
    alpha1 = g - rk + b - s
    alpha2 = alpha1 + rho_f
    beta = (g * (g + 3) - rk * (rk + 3)) // 2 + rho_f + b - s
    gamma = g * g - rk + rho + b - s - hbk
    delta = (g * (3 * g + 1) - rk * (rk + 3)) // 2 + rho + b - s - hbk

    sha = {ASSUMED_SHA} if variant is Variant.SELMER and ASSUMED_SHA in arith.conditional_flags else set()
    bk = {ASSUMED_BLOCH_KATO} if ASSUMED_BLOCH_KATO in arith.conditional_flags else set()
    flags = {
        "alpha1": frozenset(sha),
        "alpha2": frozenset(sha),
        "beta": frozenset(sha),
        "gamma": frozenset(sha | bk),
        "delta": frozenset(sha | bk),
    }
    return CriteriaReport(alpha1, alpha2, beta, gamma, delta, variant, flags)


class FinitenessVerdict(NamedTuple):
    margin: int
    finite: bool


class ColemanVerdict(NamedTuple):
    margin: int
    exists: bool


def finiteness_verdict(desc: QuotientDescriptor, s: int) -> FinitenessVerdict:
    margin = sum(p.dim_local - p.dim_global for p in desc.pieces) - s
    return FinitenessVerdict(margin, margin > 0)


def coleman_weight2_verdict(desc: QuotientDescriptor, s: int) -> ColemanVerdict:
    margin = partial_sum(hs_local(desc, 2), 2) - partial_sum(hs_global(desc, s, 2), 2)
    return ColemanVerdict(margin, margin > 0)


@dataclass(frozen=True)
class BoundInputs:
    S: frozenset
    p: int
    y_count: int
    bad_components: Mapping[int, int] = field(default_factory=dict)
    reduction_mode: ReductionMode = ReductionMode.GENERIC

    def __post_init__(self):
        object.__setattr__(self, "S", frozenset(self.S))
        object.__setattr__(self, "bad_components", dict(self.bad_components))
        object.__setattr__(self, "reduction_mode", ReductionMode(self.reduction_mode))
        if self.p in self.S:
            raise ValueError(f"the auxiliary prime p = {self.p} must not lie in S")
        for ell, n_ell in self.bad_components.items():
            if n_ell < 1:
                raise ValueError(f"n_{ell} = {n_ell} must be at least 1")
        if self.y_count < 0:
            raise ValueError("#Y(F_p) cannot be negative")

    def n_ell(self, ell: int) -> int:
        return self.bad_components.get(ell, 1)


@dataclass(frozen=True)
class ReductionFactor:
    ell: int
    factor: int
    how: str


def reduction_type_factors(spec, inv: GeometricInvariants, bi: BoundInputs) -> list[ReductionFactor]:
    """Per-prime factors whose product is the number of reduction types."""
    s = _unwrap(spec) if spec is not None else None
    refined = bi.reduction_mode is ReductionMode.REFINED
    if refined and (s is None or isinstance(s, Generic)):
        raise Unsupported("refined reduction-type counts need an explicit curve family")
    out = []
    for ell in sorted(bi.S):
        n_ell = bi.n_ell(ell)
        if refined and n_ell == 1:
            factor = _refined_factor(s, ell)
            if factor is not None:
                out.append(ReductionFactor(ell, factor, "cusps mod l + non-cuspidal component"))
                continue
            out.append(ReductionFactor(ell, n_ell + inv.n, "n_l + n (bad reduction, refined count unavailable)"))
            continue
        out.append(ReductionFactor(ell, n_ell + inv.n, "n_l + n"))
    for ell in sorted(bi.bad_components):
        if ell not in bi.S and bi.n_ell(ell) > 1:
            out.append(ReductionFactor(ell, bi.n_ell(ell), "n_l"))
    return out


def _refined_factor(s, ell):
    # one component: types are the F_l-rational cusps plus, if it has one,
    # the component's non-cuspidal locus
    try:
        if not admissible_prime(s, ell).admissible:
            return None
        cusps = cusp_reduction_profile(s, ell).d_points_mod_ell
        noncusp = count_points(s, ell).y_count
    except (CurveError, InadmissiblePrime):
        return None
    return cusps + int(noncusp > 0)


def reduction_type_count(spec, inv: GeometricInvariants, bi: BoundInputs) -> int:
    return math.prod(f.factor for f in reduction_type_factors(spec, inv, bi))


@dataclass(frozen=True)
class BoundReport:
    kappa: float
    reduction_types: int
    y_count: int
    curve_factor: int
    per_type_bound: float
    total_bound: float

    @property
    def total_bound_floor(self) -> int:
        return math.floor(self.total_bound)

    def as_dict(self) -> dict:
        return {
            "kappa": self.kappa,
            "reduction_types": self.reduction_types,
            "y_count": self.y_count,
            "curve_factor": self.curve_factor,
            "per_type_bound": self.per_type_bound,
            "total_bound": self.total_bound,
            "total_bound_floor": self.total_bound_floor,
        }


def curve_factor(g: int, n: int) -> int:
    """``(4g + 2n - 2)^2 (g + 1)``, the zero count per unit of kappa * #Y(F_p)."""
    return (4 * g + 2 * n - 2) ** 2 * (g + 1)


def bound(inv: GeometricInvariants, bi: BoundInputs, rt: int) -> BoundReport:
    k = kappa(bi.p)
    cf = curve_factor(inv.g, inv.n)
    per_type = k * bi.y_count * cf
    return BoundReport(k, rt, bi.y_count, cf, per_type, per_type * rt)


class Applicability(NamedTuple):
    applies: bool
    basis: str
    margin: int


def bound_applicability(report: CriteriaReport, arith: ArithmeticInputs, depth1: bool = False) -> Applicability:
    """Which criterion licenses the weight-2 bound, and whether it holds.

    The depth-2 bound needs ``beta > 0`` or ``delta > 0``; the depth-1
    version needs the stronger ``beta - rho_f > 0``.
    """
    if depth1:
        m = report.beta - arith.picard_f
        return Applicability(m > 0, "beta - rho_f", m)
    if report.beta > 0:
        return Applicability(True, "beta", report.beta)
    if report.delta > 0:
        return Applicability(True, "delta", report.delta)
    return Applicability(False, "beta", report.beta)

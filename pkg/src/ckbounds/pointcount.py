"""Admissibility of the auxiliary prime and point counts over F_p."""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from . import exactpoly as ep
from .curvemodel import (
    Generic,
    GeometricInvariants,
    HyperellipticEven,
    PuncturedLine,
    Superelliptic,
    Unsupported,
    _unwrap,
    cusp_reduction_profile,
    legendre,
    validate,
)

IN_S = "InS"
DIVIDES_M = "DividesM"
DIVIDES_LC = "DividesLeadingCoeff"
DIVIDES_DISC = "DividesDiscriminant"
CUSPS_NOT_ETALE = "CuspsNotEtale"


class InadmissiblePrime(ValueError):
    def __init__(self, admissibility: "PrimeAdmissibility"):
        self.admissibility = admissibility
        super().__init__(
            f"p = {admissibility.p} is not admissible: {', '.join(admissibility.reasons)}"
        )


@dataclass(frozen=True)
class PrimeAdmissibility:
    p: int
    reasons: tuple = field(default=())

    @property
    def admissible(self) -> bool:
        return not self.reasons

    def as_dict(self) -> dict:
        return {"p": self.p, "admissible": self.admissible, "reasons": list(self.reasons)}


@dataclass(frozen=True)
class PointCount:
    y_count: int
    cusp_count: int

    @property
    def x_count(self) -> int:
        return self.y_count + self.cusp_count

    def as_dict(self) -> dict:
        return {"y_count": self.y_count, "x_count": self.x_count, "cusp_count": self.cusp_count}


def admissible_prime(spec, p: int, S=()) -> PrimeAdmissibility:
    s = _unwrap(spec)
    if not ep.is_prime(p):
        raise ValueError(f"{p} is not prime")
    if isinstance(s, Generic):
        raise Unsupported("admissibility of p must be asserted by the user for generic curves")
    reasons = []
    if p in set(S):
        reasons.append(IN_S)
    if isinstance(s, (Superelliptic, HyperellipticEven)):
        m = s.m if isinstance(s, Superelliptic) else 2
        if m % p == 0:
            reasons.append(DIVIDES_M)
        if s.f[-1] % p == 0:
            reasons.append(DIVIDES_LC)
        if ep.discriminant(s.f).numerator % p == 0:
            reasons.append(DIVIDES_DISC)
    if not cusp_reduction_profile(s, p).etale:
        reasons.append(CUSPS_NOT_ETALE)
    return PrimeAdmissibility(p, tuple(reasons))


def _power_fibre_sum(f, m, p, start, stop) -> int:
    """Sum over x in [start, stop) of #{y in F_p : y^m = f(x)}."""
    e = math.gcd(m, p - 1)
    k = (p - 1) // e
    total = 0
    for x in range(start, stop):
        v = 0
        for c in reversed(f):
            v = (v * x + c) % p
        if v == 0:
            total += 1
        elif pow(v, k, p) == 1:
            total += e
    return total


def affine_power_count(f, m: int, p: int, workers: int = 1) -> int:
    """#{(x, y) in F_p^2 : y^m = f(x)} in O(p log p)."""
    f = tuple(int(c) % p for c in f)
    if workers <= 1 or p < 10_000:
        return _power_fibre_sum(f, m, p, 0, p)
    step = -(-p // workers)
    bounds = [(a, min(a + step, p)) for a in range(0, p, step)]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        parts = pool.map(_power_fibre_sum, *zip(*[(f, m, p, a, b) for a, b in bounds]))
        return sum(parts)


def count_points(spec, p: int, workers: int = 1) -> PointCount:
    """#Y(F_p) and #D(F_p) for a curve at an admissible prime."""
    spec = validate(spec)
    adm = admissible_prime(spec, p)
    if not adm.admissible:
        raise InadmissiblePrime(adm)
    s = spec.spec
    if isinstance(s, Superelliptic):
        return PointCount(affine_power_count(s.f, s.m, p, workers), 1)
    if isinstance(s, HyperellipticEven):
        cusps = 2 if legendre(s.f[-1], p) == 1 else 0
        return PointCount(affine_power_count(s.f, 2, p, workers), cusps)
    if isinstance(s, PuncturedLine):
        cusps = cusp_reduction_profile(s, p).d_points_mod_ell
        return PointCount(p + 1 - cusps, cusps)
    raise Unsupported("point counts for generic curves must be supplied by the user")


def hasse_weil_margin(inv: GeometricInvariants, pc: PointCount, p: int) -> float:
    """``2g sqrt(p) - |#X(F_p) - (p + 1)|``; negative means the count is impossible."""
    return 2 * inv.g * math.sqrt(p) - abs(pc.x_count - (p + 1))

"""Curve families, hypothesis checks and geometric invariants.

Four families are understood:

* ``Superelliptic``: ``y^m = f(x)`` with ``f`` squarefree of degree ``d > 2``
  and ``gcd(d, m) = 1``; a single rational cusp at infinity.
* ``HyperellipticEven``: ``y^2 = f(x)`` with ``deg f = 2g + 2``; two
  geometric cusps at infinity.
* ``PuncturedLine``: ``P^1`` minus a set of closed points given by their
  minimal polynomials, optionally together with infinity.
* ``Generic``: invariants supplied directly by the caller.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import NamedTuple, Union

from . import exactpoly as ep
from .exactpoly import Irreducibility


class CurveError(ValueError):
    """A curve description violates one of the standing hypotheses."""


class NotSquarefree(CurveError):
    pass


class GcdViolation(CurveError):
    pass


class NotHyperbolic(CurveError):
    pass


class ReduciblePuncture(CurveError):
    pass


class InconsistentGeneric(CurveError):
    pass


class OverlappingPunctures(CurveError):
    pass


class Unsupported(CurveError):
    """The operation is not defined for this curve family."""


@dataclass(frozen=True)
class ClosedPoint:
    minimal_poly: tuple
    claimed_irreducible: bool = True

    def __post_init__(self):
        f = ep.primitive_part(self.minimal_poly)
        if len(f) < 2:
            raise CurveError("a closed point needs a minimal polynomial of degree >= 1")
        object.__setattr__(self, "minimal_poly", f)

    @property
    def degree(self) -> int:
        return len(self.minimal_poly) - 1


@dataclass(frozen=True)
class Superelliptic:
    m: int
    f: tuple

    family = "superelliptic"

    def __post_init__(self):
        object.__setattr__(self, "f", ep.normalize(int(c) for c in self.f))


@dataclass(frozen=True)
class HyperellipticEven:
    f: tuple

    family = "hyperelliptic_even"

    def __post_init__(self):
        object.__setattr__(self, "f", ep.normalize(int(c) for c in self.f))


@dataclass(frozen=True)
class PuncturedLine:
    finite_punctures: tuple = ()
    include_infinity: bool = True

    family = "punctured_line"

    def __post_init__(self):
        object.__setattr__(self, "finite_punctures", tuple(self.finite_punctures))

    @classmethod
    def rational(cls, points, include_infinity=True):
        """Punctures at the given rational numbers (ints or Fractions)."""
        from fractions import Fraction

        pts = []
        for a in points:
            a = Fraction(a)
            pts.append(ClosedPoint((-a.numerator, a.denominator)))
        return cls(tuple(pts), include_infinity)


@dataclass(frozen=True)
class Generic:
    g: int
    n: int
    n1: int
    n2: int
    d_closed: int

    family = "generic"


CurveSpec = Union[Superelliptic, HyperellipticEven, PuncturedLine, Generic]


@dataclass(frozen=True)
class GeometricInvariants:
    g: int
    n: int
    n1: int
    n2: int
    d_closed: int

    @property
    def b(self) -> int:
        return self.d_closed + self.n2 - 1

    @property
    def euler_characteristic(self) -> int:
        return 2 - 2 * self.g - self.n

    def check(self):
        if self.g < 0 or self.n1 < 0 or self.n2 < 0:
            raise InconsistentGeneric("g, n1, n2 must be nonnegative")
        if self.n != self.n1 + 2 * self.n2:
            raise InconsistentGeneric(f"n = {self.n} but n1 + 2*n2 = {self.n1 + 2 * self.n2}")
        if self.n < 1:
            raise InconsistentGeneric("the curve must be affine: at least one cusp (n >= 1)")
        if not 1 <= self.d_closed <= self.n:
            raise InconsistentGeneric(f"#|D| = {self.d_closed} must lie in [1, n = {self.n}]")
        if self.d_closed > self.n1 + self.n2:
            # every closed cusp contributes at least one real place
            raise InconsistentGeneric(
                f"#|D| = {self.d_closed} exceeds n1 + n2 = {self.n1 + self.n2}"
            )
        if self.euler_characteristic >= 0:
            raise NotHyperbolic(
                f"2 - 2g - n = {self.euler_characteristic} is not negative"
            )
        return self

    def as_dict(self) -> dict:
        return {
            "g": self.g,
            "n": self.n,
            "n1": self.n1,
            "n2": self.n2,
            "d_closed": self.d_closed,
            "b": self.b,
        }


@dataclass(frozen=True)
class ValidatedCurve:
    """A curve that passed :func:`validate`, plus what was checked."""

    spec: CurveSpec
    puncture_verdicts: tuple = ()
    warnings: tuple = field(default=())

    @property
    def family(self) -> str:
        return self.spec.family


def _unwrap(spec) -> CurveSpec:
    return spec.spec if isinstance(spec, ValidatedCurve) else spec


def validate(spec: CurveSpec) -> ValidatedCurve:
    if isinstance(spec, ValidatedCurve):
        return spec
    warnings = []
    verdicts = ()
    if isinstance(spec, Superelliptic):
        if spec.m < 2:
            raise CurveError(f"exponent m = {spec.m} must exceed 1")
        d = len(spec.f) - 1
        if d <= 2:
            raise CurveError(f"deg f = {d} must exceed 2")
        if not ep.is_squarefree(spec.f):
            raise NotSquarefree(f"f = {ep.format_poly(spec.f)} is not squarefree")
        if math.gcd(d, spec.m) != 1:
            raise GcdViolation(f"gcd(deg f, m) = gcd({d}, {spec.m}) = {math.gcd(d, spec.m)} != 1")
    elif isinstance(spec, HyperellipticEven):
        d = len(spec.f) - 1
        if d < 4 or d % 2:
            raise CurveError(f"deg f = {d} must be even and at least 4")
        if not ep.is_squarefree(spec.f):
            raise NotSquarefree(f"f = {ep.format_poly(spec.f)} is not squarefree")
    elif isinstance(spec, PuncturedLine):
        pts = spec.finite_punctures
        out = []
        for pt in pts:
            if not ep.is_squarefree(pt.minimal_poly):
                raise NotSquarefree(
                    f"puncture polynomial {ep.format_poly(pt.minimal_poly)} is not squarefree"
                )
            v = ep.verify_irreducible_over_Q(pt.minimal_poly)
            if v is Irreducibility.REFUTED:
                raise ReduciblePuncture(
                    f"puncture polynomial {ep.format_poly(pt.minimal_poly)} is reducible over Q"
                )
            if v is Irreducibility.UNKNOWN:
                warnings.append(
                    f"irreducibility of {ep.format_poly(pt.minimal_poly)} could not be "
                    "confirmed; treated as one closed point as claimed"
                )
            out.append(v)
        verdicts = tuple(out)
        for i in range(len(pts)):
            for j in range(i + 1, len(pts)):
                if ep.degree(ep.poly_gcd(pts[i].minimal_poly, pts[j].minimal_poly)) > 0:
                    raise OverlappingPunctures(
                        f"punctures {ep.format_poly(pts[i].minimal_poly)} and "
                        f"{ep.format_poly(pts[j].minimal_poly)} share a root"
                    )
        n = sum(pt.degree for pt in pts) + int(spec.include_infinity)
        if 2 - n >= 0:
            raise NotHyperbolic(f"P^1 minus {n} geometric points is not hyperbolic (need n >= 3)")
    elif isinstance(spec, Generic):
        GeometricInvariants(spec.g, spec.n, spec.n1, spec.n2, spec.d_closed).check()
    else:
        raise TypeError(f"unknown curve description {spec!r}")
    validated = ValidatedCurve(spec, verdicts, tuple(warnings))
    invariants(validated).check()
    return validated


def hyperelliptic_genus(f) -> int:
    return (len(ep.normalize(f)) - 1 - 2) // 2


def superelliptic_genus(d: int, m: int) -> int:
    # totally ramified at infinity since gcd(d, m) = 1
    return (d - 1) * (m - 1) // 2


def invariants(spec) -> GeometricInvariants:
    if not isinstance(spec, ValidatedCurve):
        spec = validate(spec)
    s = spec.spec
    if isinstance(s, Superelliptic):
        return GeometricInvariants(superelliptic_genus(len(s.f) - 1, s.m), 1, 1, 0, 1)
    if isinstance(s, HyperellipticEven):
        g = hyperelliptic_genus(s.f)
        lc = s.f[-1]
        if lc < 0:
            return GeometricInvariants(g, 2, 0, 1, 1)
        if math.isqrt(lc) ** 2 == lc:
            return GeometricInvariants(g, 2, 2, 0, 2)
        return GeometricInvariants(g, 2, 2, 0, 1)
    if isinstance(s, PuncturedLine):
        inf = int(s.include_infinity)
        n = sum(pt.degree for pt in s.finite_punctures) + inf
        n1 = sum(ep.count_real_roots(pt.minimal_poly) for pt in s.finite_punctures) + inf
        return GeometricInvariants(0, n, n1, (n - n1) // 2, len(s.finite_punctures) + inf)
    return GeometricInvariants(s.g, s.n, s.n1, s.n2, s.d_closed)


class CuspReduction(NamedTuple):
    d_points_mod_ell: int
    etale: bool


def _binary_form_profile(polys, include_infinity, ell) -> CuspReduction:
    """F_l-points and reducedness of the closure of a divisor on P^1.

    The divisor is cut out by the binary form ``Z^[inf] * prod F_i(X, Z)``.
    """
    prod = (1,)
    for f in polys:
        prod = ep.mul(prod, f)
    total_degree = len(prod) - 1 + int(include_infinity)
    reduced = ep.normalize(c % ell for c in prod)
    # multiplicity of the point at infinity = degree drop of the dehomogenised form
    inf_mult = total_degree - (len(reduced) - 1)
    affine_ok = len(reduced) < 2 or ep.degree(
        ep._mod_gcd(reduced, ep._mod_norm(ep.derivative(reduced), ell), ell)
    ) == 0
    affine_points = ep.count_roots_mod_p(reduced, ell) if len(reduced) >= 2 else 0
    return CuspReduction(affine_points + int(inf_mult >= 1), affine_ok and inf_mult <= 1)


def cusp_reduction_profile(spec, ell: int) -> CuspReduction:
    s = _unwrap(spec)
    if not ep.is_prime(ell):
        raise ValueError(f"{ell} is not prime")
    if isinstance(s, Generic):
        raise Unsupported("cusp reduction needs an explicit curve family")
    if isinstance(s, Superelliptic):
        return CuspReduction(1, True)
    if isinstance(s, HyperellipticEven):
        lc = s.f[-1]
        if ell == 2 or lc % ell == 0:
            # the two cusps y/x^(g+1) = +-sqrt(lc) collide
            return CuspReduction(1, False)
        return CuspReduction(2 if legendre(lc, ell) == 1 else 0, True)
    return _binary_form_profile(
        [pt.minimal_poly for pt in s.finite_punctures], s.include_infinity, ell
    )


def legendre(a: int, p: int) -> int:
    a %= p
    if a == 0:
        return 0
    return 1 if pow(a, (p - 1) // 2, p) == 1 else -1


def bad_prime_candidates(spec) -> list[int]:
    """Primes where the obvious model can have bad reduction.

    Divisors of m * lc(f) * disc(f), together with 2.
    """
    s = _unwrap(spec)
    n = 2
    if isinstance(s, (Superelliptic, HyperellipticEven)):
        m = s.m if isinstance(s, Superelliptic) else 2
        n = m * s.f[-1] * ep.discriminant(s.f).numerator * 2
    elif isinstance(s, PuncturedLine):
        prod = (1,)
        for pt in s.finite_punctures:
            prod = ep.mul(prod, pt.minimal_poly)
        # cusps collide where the discriminant or leading coefficient vanishes
        n = 2 * prod[-1]
        if len(prod) >= 2:
            n *= ep.discriminant(prod).numerator
    return sorted(ep.prime_factors(n))

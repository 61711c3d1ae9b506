"""Global and local Bloch-Kato Selmer dimensions of weight-graded pieces.

Only the weight -1 and weight -2 pieces are modelled.  Three quotients of
the fundamental group are described by their dimension data:

``ab``    the abelianization (weight -2 part is the cuspidal inertia only);
``abat``  an abelian-by-Artin-Tate quotient (inertia plus an Artin-Tate
          piece built from the Neron-Severi group);
``w2``    the full weight >= -2 quotient (inertia plus the wedge square
          of the Tate module).
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Optional

from .curvemodel import GeometricInvariants

ASSUMED_SHA = "assumed_sha"
ASSUMED_BLOCH_KATO = "assumed_bloch_kato"


class InputInconsistency(ValueError):
    """Arithmetic inputs contradict each other or produce a negative dimension."""


class QuotientKind(str, enum.Enum):
    ABELIANIZED = "ab"
    ABELIAN_BY_ARTIN_TATE = "abat"
    FULL_WEIGHT_TWO = "w2"


@dataclass(frozen=True)
class ArithmeticInputs:
    """Ranks supplied by the user.

    ``r_p`` falls back to ``r`` and ``h_BK`` to 0; both fallbacks are
    recorded in :attr:`conditional_flags`.  ``rho_f`` falls back to ``rho``
    and ``rho_geo`` to ``rho_f``, which is the conservative choice.
    """

    r: int
    rho: int
    r_p: Optional[int] = None
    rho_f: Optional[int] = None
    rho_geo: Optional[int] = None
    h_BK: Optional[int] = None

    @property
    def rank_p(self) -> int:
        return self.r if self.r_p is None else self.r_p

    @property
    def picard_f(self) -> int:
        return self.rho if self.rho_f is None else self.rho_f

    @property
    def picard_geo(self) -> int:
        return self.picard_f if self.rho_geo is None else self.rho_geo

    @property
    def hbk(self) -> int:
        return 0 if self.h_BK is None else self.h_BK

    @property
    def conditional_flags(self) -> frozenset:
        flags = set()
        if self.r_p is None:
            flags.add(ASSUMED_SHA)
        if self.h_BK is None:
            flags.add(ASSUMED_BLOCH_KATO)
        return frozenset(flags)

    def defaults_used(self) -> list[str]:
        out = []
        if self.r_p is None:
            out.append(f"r_p defaulted to r = {self.r} (assumes finiteness of Sha)")
        if self.h_BK is None:
            out.append("h_BK defaulted to 0 (assumes the Bloch-Kato vanishing conjecture)")
        if self.rho_f is None:
            out.append(f"rho_f defaulted to rho = {self.rho}")
        if self.rho_geo is None:
            out.append(f"rho_geo defaulted to rho_f = {self.picard_f}")
        return out

    def check(self, g: int) -> "ArithmeticInputs":
        vals = {
            "r": self.r,
            "r_p": self.rank_p,
            "rho": self.rho,
            "rho_f": self.picard_f,
            "rho_geo": self.picard_geo,
            "h_BK": self.hbk,
        }
        for name, v in vals.items():
            if v < 0:
                raise InputInconsistency(f"{name} = {v} is negative")
        if self.rank_p < self.r:
            raise InputInconsistency(f"r_p = {self.rank_p} is smaller than r = {self.r}")
        if not self.rho <= self.picard_f <= self.picard_geo:
            raise InputInconsistency(
                f"need rho <= rho_f <= rho_geo, got {self.rho}, {self.picard_f}, {self.picard_geo}"
            )
        if g >= 1 and self.rho < 1:
            raise InputInconsistency("rho >= 1 whenever g >= 1")
        if g == 0 and any(vals[k] for k in ("r", "r_p", "rho", "rho_f", "rho_geo")):
            raise InputInconsistency("a genus 0 curve has trivial Jacobian: all ranks must be 0")
        return self

    def as_dict(self) -> dict:
        return {
            "r": self.r,
            "r_p": self.rank_p,
            "rho": self.rho,
            "rho_f": self.picard_f,
            "rho_geo": self.picard_geo,
            "h_BK": self.hbk,
            "conditional_flags": sorted(self.conditional_flags),
        }


@dataclass(frozen=True)
class GradedPieceDims:
    weight: int
    dim_global: int
    dim_local: int
    label: str = ""

    def __post_init__(self):
        if self.weight not in (-1, -2):
            raise ValueError(f"only weights -1 and -2 are modelled, got {self.weight}")
        if self.dim_global < 0 or self.dim_local < 0:
            raise InputInconsistency(
                f"negative Selmer dimension in weight {self.weight} piece {self.label!r}: "
                f"global {self.dim_global}, local {self.dim_local}"
            )

    def __add__(self, other: "GradedPieceDims") -> "GradedPieceDims":
        if self.weight != other.weight:
            raise ValueError("cannot add pieces of different weights")
        label = "+".join(x for x in (self.label, other.label) if x)
        return GradedPieceDims(
            self.weight, self.dim_global + other.dim_global, self.dim_local + other.dim_local, label
        )

    def as_dict(self) -> dict:
        return {
            "weight": self.weight,
            "dim_global": self.dim_global,
            "dim_local": self.dim_local,
            "label": self.label,
        }


@dataclass(frozen=True)
class QuotientDescriptor:
    kind: QuotientKind
    pieces: tuple = field(default=())

    def __post_init__(self):
        weights = sorted(p.weight for p in self.pieces)
        if weights != [-2, -1]:
            raise ValueError(f"need exactly one piece per weight -1 and -2, got {weights}")
        object.__setattr__(self, "pieces", tuple(sorted(self.pieces, key=lambda p: -p.weight)))

    def piece(self, weight: int) -> GradedPieceDims:
        return next(p for p in self.pieces if p.weight == weight)

    def as_dict(self) -> dict:
        return {"kind": self.kind.value, "pieces": [p.as_dict() for p in self.pieces]}


def _require_nonneg(value: int, what: str) -> int:
    if value < 0:
        raise InputInconsistency(f"{what} would be {value} < 0")
    return value


def tate_module_dims(g: int, r_p: int) -> GradedPieceDims:
    return GradedPieceDims(-1, r_p, g, "tate")


def cuspidal_inertia_dims(inv: GeometricInvariants) -> GradedPieceDims:
    return GradedPieceDims(-2, inv.n1 + inv.n2 - inv.d_closed, inv.n - 1, "inertia")


def artin_tate_dims(dim_W: int, h0_dual: int, dim_sigma_fixed: int) -> tuple[int, int]:
    glob = -h0_dual + dim_W - dim_sigma_fixed
    return _require_nonneg(glob, "global Artin-Tate Selmer dimension"), dim_W


def wedge_square_dims(g: int, rho: int, h_BK: int) -> tuple[int, int]:
    if g >= 1 and rho < 1:
        raise InputInconsistency("rho >= 1 whenever g >= 1")
    glob = g * (g + 1) // 2 - rho + h_BK
    return _require_nonneg(glob, "global wedge-square Selmer dimension"), g * (3 * g - 1) // 2


def poitou_tate_dim(h0_W: int, h1f_dual: int, h0_dual: int, h1f_local: int, dim_sigma_fixed: int) -> int:
    """Global H^1_f dimension from the Poitou-Tate Euler characteristic identity."""
    return h0_W + h1f_dual - h0_dual + h1f_local - dim_sigma_fixed


def build_quotient(kind, inv: GeometricInvariants, arith: ArithmeticInputs) -> QuotientDescriptor:
    kind = QuotientKind(kind)
    arith.check(inv.g)
    w1 = tate_module_dims(inv.g, arith.rank_p)
    w2 = cuspidal_inertia_dims(inv)
    if kind is QuotientKind.ABELIAN_BY_ARTIN_TATE:
        glob, loc = artin_tate_dims(
            arith.picard_geo, arith.rho, arith.picard_f - arith.rho
        )
        w2 = w2 + GradedPieceDims(-2, glob, loc, "artin_tate")
    elif kind is QuotientKind.FULL_WEIGHT_TWO:
        glob, loc = wedge_square_dims(inv.g, arith.rho, arith.hbk)
        w2 = w2 + GradedPieceDims(-2, glob, loc, "wedge2")
    return QuotientDescriptor(kind, (w1, w2))

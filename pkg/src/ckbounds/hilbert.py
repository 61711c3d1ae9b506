"""Truncated integer power series and the global/local Hilbert series."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

from . import exactpoly as ep
from .selmerdims import QuotientDescriptor

DEFAULT_TRUNCATION = 2
MAX_TRUNCATION = 16


@dataclass(frozen=True)
class TruncatedSeries:
    """``c_0 + c_1 t + ... + c_m t^m`` with exact integer coefficients."""

    coeffs: tuple

    def __post_init__(self):
        if not self.coeffs:
            raise ValueError("a truncated series needs at least the constant term")
        object.__setattr__(self, "coeffs", tuple(int(c) for c in self.coeffs))

    @property
    def truncation(self) -> int:
        return len(self.coeffs) - 1

    @classmethod
    def one(cls, m: int) -> "TruncatedSeries":
        return cls((1,) + (0,) * m)

    def __mul__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        m = min(self.truncation, other.truncation)
        a, b = self.coeffs, other.coeffs
        return TruncatedSeries(
            tuple(sum(a[i] * b[j - i] for i in range(j + 1)) for j in range(m + 1))
        )

    def __getitem__(self, i):
        return self.coeffs[i]

    def __iter__(self):
        return iter(self.coeffs)

    def __len__(self):
        return len(self.coeffs)

    def as_list(self) -> list[int]:
        return list(self.coeffs)


def binom_neg_power(k: int, e: int, m: int) -> TruncatedSeries:
    """(1 - t^k)^(-e) through degree m."""
    if k < 1:
        raise ValueError("k must be positive")
    if e < 0:
        raise ValueError("exponent must be nonnegative")
    out = [0] * (m + 1)
    for i in range(m // k + 1):
        # coefficient of t^(k i) is C(e + i - 1, i); for e = 0 only i = 0 survives
        out[k * i] = math.comb(e + i - 1, i) if e else int(i == 0)
    return TruncatedSeries(out)


def _product(factors, m: int) -> TruncatedSeries:
    acc = TruncatedSeries.one(m)
    for k, e in factors:
        acc = acc * binom_neg_power(k, e, m)
    return acc


def hs_global(desc: QuotientDescriptor, s: int, m: int = DEFAULT_TRUNCATION) -> TruncatedSeries:
    factors = [(2, s)] + [(-p.weight, p.dim_global) for p in desc.pieces]
    return _product(factors, m)


def hs_local(desc: QuotientDescriptor, m: int = DEFAULT_TRUNCATION) -> TruncatedSeries:
    return _product([(-p.weight, p.dim_local) for p in desc.pieces], m)


def rational_series(numer: Sequence[int], denom: Sequence[int], m: int) -> TruncatedSeries:
    """Expand numer/denom as a power series; requires denom(0) = 1."""
    denom = ep.normalize(denom)
    if not denom or denom[0] != 1:
        raise ValueError("denominator must have constant term 1")
    numer = tuple(numer)
    out = []
    for j in range(m + 1):
        c = numer[j] if j < len(numer) else 0
        c -= sum(denom[i] * out[j - i] for i in range(1, min(j, len(denom) - 1) + 1))
        out.append(c)
    return TruncatedSeries(out)


def partial_sum(series: TruncatedSeries, upto: int) -> int:
    if upto > series.truncation:
        raise ValueError(f"degree {upto} is beyond the truncation {series.truncation}")
    return sum(series.coeffs[: upto + 1])

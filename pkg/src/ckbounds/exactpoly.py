"""Exact univariate polynomial arithmetic over Z, Q and F_l.

Polynomials are dense coefficient tuples in ascending degree order, so
``(1, 0, -1)`` is ``1 - x^2``.  The zero polynomial is the empty tuple.
Integer polynomials hold ``int`` entries, rational ones hold
:class:`fractions.Fraction` entries.  Everything here is a pure function on
immutable values.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

BigRat = Fraction
IntPoly = tuple  # tuple[int, ...]
RatPoly = tuple  # tuple[Fraction, ...]


class PolynomialError(ValueError):
    """Raised when an operation's precondition on its input fails."""


# ---------------------------------------------------------------------------
# dense helpers (work for int and Fraction coefficients alike)
# ---------------------------------------------------------------------------

def normalize(coeffs: Iterable) -> tuple:
    """Strip trailing zeros so the last entry is the nonzero leading term."""
    c = list(coeffs)
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


def degree(f: Sequence) -> int:
    """Degree of ``f``; the zero polynomial has degree -1."""
    return len(normalize(f)) - 1


def leading(f: Sequence):
    f = normalize(f)
    if not f:
        raise PolynomialError("zero polynomial has no leading coefficient")
    return f[-1]


def to_rat(f: Sequence) -> RatPoly:
    return normalize(Fraction(c) for c in f)


def add(f: Sequence, g: Sequence) -> tuple:
    n = max(len(f), len(g))
    return normalize(
        (f[i] if i < len(f) else 0) + (g[i] if i < len(g) else 0) for i in range(n)
    )


def sub(f: Sequence, g: Sequence) -> tuple:
    return add(f, scale(g, -1))


def scale(f: Sequence, c) -> tuple:
    return normalize(c * a for a in f)


def mul(f: Sequence, g: Sequence) -> tuple:
    if not f or not g:
        return ()
    out = [0] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if a == 0:
            continue
        for j, b in enumerate(g):
            out[i + j] += a * b
    return normalize(out)


def derivative(f: Sequence) -> tuple:
    return normalize(i * f[i] for i in range(1, len(f)))


def evaluate(f: Sequence, x):
    acc = 0
    for c in reversed(f):
        acc = acc * x + c
    return acc


def divmod_poly(f: Sequence, g: Sequence) -> tuple[RatPoly, RatPoly]:
    """Quotient and remainder of ``f / g`` over Q."""
    f, g = to_rat(f), to_rat(g)
    if not g:
        raise ZeroDivisionError("polynomial division by zero")
    rem = list(f)
    dg = len(g) - 1
    quot = [Fraction(0)] * max(len(f) - dg, 0)
    lc = g[-1]
    for k in range(len(f) - 1 - dg, -1, -1):
        c = rem[k + dg] / lc
        quot[k] = c
        if c:
            for j in range(dg + 1):
                rem[k + j] -= c * g[j]
    return normalize(quot), normalize(rem[:dg] if dg > 0 else [])


def pseudo_remainder(f: Sequence, g: Sequence) -> IntPoly:
    """prem(f, g): remainder of ``lc(g)^(deg f - deg g + 1) * f`` by ``g``.

    Stays inside Z[x] when both inputs are integral.
    """
    f, g = normalize(f), normalize(g)
    if not g:
        raise ZeroDivisionError("pseudo-division by zero")
    df, dg = len(f) - 1, len(g) - 1
    if df < dg:
        return f
    lc = g[-1]
    rem = list(f)
    for _ in range(df - dg + 1):
        if len(rem) - 1 < dg:
            rem = [lc * a for a in rem]
            continue
        top = rem[-1]
        shift = len(rem) - 1 - dg
        rem = [lc * a for a in rem]
        for j in range(dg + 1):
            rem[shift + j] -= top * g[j]
        rem = list(normalize(rem[:-1]))
    return normalize(rem)


def content(f: Sequence) -> int:
    g = 0
    for c in f:
        g = math.gcd(g, int(c))
    return g


def primitive_part(f: Sequence) -> IntPoly:
    f = normalize(int(c) for c in f)
    if not f:
        return ()
    c = content(f)
    if f[-1] < 0:
        c = -c
    return tuple(a // c for a in f)


def monic(f: Sequence) -> RatPoly:
    f = to_rat(f)
    if not f:
        return ()
    return tuple(c / f[-1] for c in f)


def format_poly(f: Sequence, var: str = "x") -> str:
    f = normalize(f)
    if not f:
        return "0"
    terms = []
    for i in range(len(f) - 1, -1, -1):
        c = f[i]
        if c == 0:
            continue
        sign = "-" if c < 0 else "+"
        a = abs(c)
        if i == 0:
            body = str(a)
        else:
            mon = var if i == 1 else f"{var}^{i}"
            body = mon if a == 1 else f"{a}*{mon}"
        terms.append((sign, body))
    head_sign, head = terms[0]
    out = ("-" if head_sign == "-" else "") + head
    for sign, body in terms[1:]:
        out += f" {sign} {body}"
    return out


# ---------------------------------------------------------------------------
# gcd, squarefreeness, resultant, discriminant
# ---------------------------------------------------------------------------

def poly_gcd(f: Sequence, g: Sequence) -> RatPoly:
    """Monic gcd over Q.  ``poly_gcd(0, 0)`` is the zero polynomial."""
    a, b = to_rat(f), to_rat(g)
    while b:
        _, r = divmod_poly(a, b)
        a, b = b, r
    return monic(a)


def is_squarefree(f: Sequence) -> bool:
    if not normalize(f):
        raise PolynomialError("squarefreeness of the zero polynomial is undefined")
    return degree(poly_gcd(f, derivative(f))) == 0


def squarefree_part(f: Sequence) -> RatPoly:
    """``f / gcd(f, f')`` made monic."""
    f = to_rat(f)
    if not f:
        raise PolynomialError("zero polynomial")
    q, _ = divmod_poly(f, poly_gcd(f, derivative(f)))
    return monic(q)


def resultant(f: Sequence, g: Sequence) -> int:
    """Res(f, g) for integer polynomials via the subresultant PRS.

    Fraction-free: every intermediate division below is exact in Z.
    """
    A = normalize(int(c) for c in f)
    B = normalize(int(c) for c in g)
    if not A or not B:
        return 0
    ca, cb = content(A), content(B)
    A = tuple(c // ca for c in A)
    B = tuple(c // cb for c in B)
    t = ca ** (len(B) - 1) * cb ** (len(A) - 1)
    s = 1
    if len(A) < len(B):
        A, B = B, A
        if (len(A) - 1) % 2 == 1 and (len(B) - 1) % 2 == 1:
            s = -1
    g_, h = 1, 1
    while len(B) - 1 > 0:
        da, db = len(A) - 1, len(B) - 1
        delta = da - db
        if da % 2 == 1 and db % 2 == 1:
            s = -s
        R = pseudo_remainder(A, B)
        if not R:
            return 0
        A = B
        div = g_ * h**delta
        B = tuple(c // div for c in R)
        g_ = A[-1]
        # h <- h^(1 - delta) * g^delta
        h = g_**delta // h ** (delta - 1) if delta >= 1 else h
    da = len(A) - 1
    h = B[-1] ** da // h ** (da - 1) if da >= 1 else h
    return s * t * h


def discriminant(f: Sequence) -> BigRat:
    """disc(f) = (-1)^(d(d-1)/2) Res(f, f') / lc(f)."""
    f = normalize(f)
    d = len(f) - 1
    if d < 1:
        raise PolynomialError("discriminant needs degree >= 1")
    if any(Fraction(c).denominator != 1 for c in f):
        raise PolynomialError("discriminant expects integer coefficients")
    f = tuple(int(c) for c in f)
    sign = -1 if (d * (d - 1) // 2) % 2 else 1
    return Fraction(sign * resultant(f, derivative(f)), f[-1])


# ---------------------------------------------------------------------------
# Sturm chains
# ---------------------------------------------------------------------------

def sturm_chain(f: Sequence) -> list[RatPoly]:
    p0 = to_rat(f)
    chain = [p0, derivative(p0)]
    while chain[-1]:
        _, r = divmod_poly(chain[-2], chain[-1])
        chain.append(scale(r, -1))
    chain.pop()
    return chain


def _sign_changes(signs: Iterable[int]) -> int:
    nz = [s for s in signs if s]
    return sum(1 for a, b in zip(nz, nz[1:]) if a != b)


def _sign(x) -> int:
    return (x > 0) - (x < 0)


def count_real_roots(f: Sequence) -> int:
    """Number of distinct real roots of a squarefree ``f`` (Sturm's theorem)."""
    f = normalize(f)
    if len(f) < 2:
        raise PolynomialError("count_real_roots needs degree >= 1")
    if not is_squarefree(f):
        raise PolynomialError("input is not squarefree; pass its squarefree part")
    chain = sturm_chain(f)
    at_pos = [_sign(p[-1]) for p in chain]
    at_neg = [_sign(p[-1]) * (-1) ** (len(p) - 1) for p in chain]
    return _sign_changes(at_neg) - _sign_changes(at_pos)


# ---------------------------------------------------------------------------
# arithmetic over F_l
# ---------------------------------------------------------------------------

def is_prime(n: int) -> bool:
    if n < 2:
        return False
    for q in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % q == 0:
            return n == q
    # deterministic Miller-Rabin for n < 3.3e24
    d, r = n - 1, 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41):
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def prime_factors(n: int) -> list[int]:
    """Distinct prime divisors of ``|n|`` by trial division."""
    n = abs(n)
    out = []
    q = 2
    while q * q <= n:
        if n % q == 0:
            out.append(q)
            while n % q == 0:
                n //= q
        q += 1 if q == 2 else 2
    if n > 1:
        out.append(n)
    return out


def primes_from(start: int = 2):
    n = max(start, 2)
    while True:
        if is_prime(n):
            yield n
        n += 1


@dataclass(frozen=True)
class ModPoly:
    """A polynomial over F_l; ``coeffs`` are reduced residues, ascending."""

    modulus: int
    coeffs: tuple

    def __post_init__(self):
        if not is_prime(self.modulus):
            raise PolynomialError(f"modulus {self.modulus} is not prime")
        object.__setattr__(
            self, "coeffs", normalize(int(c) % self.modulus for c in self.coeffs)
        )

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __bool__(self):
        return bool(self.coeffs)


def _mod_norm(f, p):
    return normalize(c % p for c in f)


def _mod_sub(f, g, p):
    n = max(len(f), len(g))
    return normalize(
        ((f[i] if i < len(f) else 0) - (g[i] if i < len(g) else 0)) % p
        for i in range(n)
    )


def _mod_mul(f, g, p):
    if not f or not g:
        return ()
    out = [0] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if a:
            for j, b in enumerate(g):
                out[i + j] += a * b
    return normalize(c % p for c in out)


def _mod_rem(f, g, p):
    g = _mod_norm(g, p)
    if not g:
        raise ZeroDivisionError("division by zero polynomial mod p")
    rem = list(_mod_norm(f, p))
    dg = len(g) - 1
    inv = pow(g[-1], -1, p)
    while len(rem) - 1 >= dg and rem:
        c = rem[-1] * inv % p
        shift = len(rem) - 1 - dg
        for j in range(dg + 1):
            rem[shift + j] = (rem[shift + j] - c * g[j]) % p
        rem = list(normalize(rem))
    return tuple(rem)


def _mod_gcd(f, g, p):
    a, b = _mod_norm(f, p), _mod_norm(g, p)
    while b:
        a, b = b, _mod_rem(a, b, p)
    if a:
        inv = pow(a[-1], -1, p)
        a = tuple(c * inv % p for c in a)
    return a


def _mod_powmod(base, e, modulus, p):
    """``base^e mod (modulus, p)`` by square-and-multiply."""
    result = (1,)
    b = _mod_rem(base, modulus, p)
    while e:
        if e & 1:
            result = _mod_rem(_mod_mul(result, b, p), modulus, p)
        b = _mod_rem(_mod_mul(b, b, p), modulus, p)
        e >>= 1
    return _mod_rem(result, modulus, p)


def count_roots_mod_p(f: Sequence, p: int) -> int:
    """Number of distinct roots of ``f`` in F_p, as deg gcd(x^p - x, f)."""
    if not is_prime(p):
        raise PolynomialError(f"{p} is not prime")
    fp = _mod_norm(f, p)
    if not fp:
        raise PolynomialError(f"polynomial vanishes identically mod {p}")
    if len(fp) == 1:
        return 0
    xp = _mod_powmod((0, 1), p, fp, p)
    return len(_mod_gcd(_mod_sub(xp, (0, 1), p), fp, p)) - 1


def is_irreducible_mod_ell(f: ModPoly) -> bool:
    """Rabin's irreducibility test over F_l."""
    p = f.modulus
    fp = f.coeffs
    d = len(fp) - 1
    if d < 1:
        raise PolynomialError("irreducibility needs degree >= 1")
    if d == 1:
        return True
    x = (0, 1)

    def frob_iter(k):
        # x^(p^k) mod f
        h = x
        for _ in range(k):
            h = _mod_powmod(h, p, fp, p)
        return h

    for q in prime_factors(d):
        h = _mod_sub(frob_iter(d // q), x, p)
        if len(_mod_gcd(fp, h, p)) != 1:
            return False
    return not _mod_sub(frob_iter(d), x, p)


# ---------------------------------------------------------------------------
# irreducibility over Q (semi-decision)
# ---------------------------------------------------------------------------

class Irreducibility(str, enum.Enum):
    CONFIRMED = "Confirmed"
    REFUTED = "Refuted"
    UNKNOWN = "Unknown"


def _divisors(n: int) -> list[int]:
    n = abs(n)
    divs = [1]
    for q in prime_factors(n):
        e = 0
        m = n
        while m % q == 0:
            m //= q
            e += 1
        divs = [d * q**k for d in divs for k in range(e + 1)]
    return divs


def rational_roots(f: Sequence) -> list[Fraction]:
    """All rational roots of an integer polynomial (rational root theorem)."""
    f = primitive_part(f)
    if not f:
        raise PolynomialError("zero polynomial")
    roots = []
    k = 0
    while f[k] == 0:
        k += 1
    if k:
        roots.append(Fraction(0))
    f = f[k:]
    if len(f) == 1:
        return roots
    for num in _divisors(f[0]):
        for den in _divisors(f[-1]):
            for cand in (Fraction(num, den), Fraction(-num, den)):
                if cand not in roots and evaluate(f, cand) == 0:
                    roots.append(cand)
    return sorted(roots)


def verify_irreducible_over_Q(f: Sequence, trial_prime_budget: int = 20) -> Irreducibility:
    f = primitive_part(f)
    d = len(f) - 1
    if d < 1:
        raise PolynomialError("irreducibility needs degree >= 1")
    if d == 1:
        return Irreducibility.CONFIRMED
    if rational_roots(f):
        return Irreducibility.REFUTED
    disc = discriminant(f)
    if disc == 0:
        # repeated factor
        return Irreducibility.REFUTED
    if d == 2:
        num = int(disc)
        if num >= 0 and math.isqrt(num) ** 2 == num:
            return Irreducibility.REFUTED
        return Irreducibility.CONFIRMED
    bad = f[-1] * disc.numerator
    tried = 0
    for ell in primes_from(2):
        if tried >= trial_prime_budget:
            break
        if bad % ell == 0:
            continue
        tried += 1
        if is_irreducible_mod_ell(ModPoly(ell, f)):
            return Irreducibility.CONFIRMED
    return Irreducibility.UNKNOWN

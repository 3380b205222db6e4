"""Class numbers of positive definite binary quadratic forms.

``hurwitz_H`` counts reduced forms directly; ``hurwitz_H_formula`` goes
through the fundamental discriminant, a Kronecker symbol, the Moebius
function and sigma_1.  The two are independent and are compared in tests.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, isqrt
from typing import NamedTuple

import numpy as np
from sympy import divisor_sigma, divisors, factorint, mobius

R3_LIMIT = 10**6


class BadDiscriminant(ValueError):
    pass


class NotFundamental(ValueError):
    pass


class BadResidue(ValueError):
    pass


class TooLarge(ValueError):
    pass


class QuadForm(NamedTuple):
    a: int
    b: int
    c: int

    @property
    def discriminant(self) -> int:
        return self.b * self.b - 4 * self.a * self.c

    def is_primitive(self) -> bool:
        return gcd(gcd(self.a, self.b), self.c) == 1

    def __str__(self):
        return f"({self.a},{self.b},{self.c})"


def reduced_forms(D: int, primitive_only: bool = False) -> list[QuadForm]:
    """Reduced forms of discriminant D < 0, one per SL2(Z) class.

    Reduced means |b| <= a <= c, with b >= 0 when |b| = a or a = c.
    """
    if D >= 0 or D % 4 not in (0, 1):
        raise BadDiscriminant(f"{D} is not a negative discriminant")
    out = []
    a = 1
    while 3 * a * a <= -D:
        for b in range(-a + 1, a + 1):
            if (b - D) % 2:
                continue
            num = b * b - D
            if num % (4 * a):
                continue
            c = num // (4 * a)
            if c < a or (c == a and b < 0):
                continue
            f = QuadForm(a, b, c)
            if not primitive_only or f.is_primitive():
                out.append(f)
        a += 1
    return out


def is_fundamental(D: int) -> bool:
    if D >= 0:
        return False
    if D % 4 == 1:
        return _squarefree(-D)
    if D % 4 == 0:
        k = D // 4
        return k % 4 in (2, 3) and _squarefree(-k)
    return False


def _squarefree(n: int) -> bool:
    return all(e == 1 for e in factorint(n).values())


def gauss_h(D: int) -> int:
    if not is_fundamental(D):
        raise NotFundamental(f"{D} is not a fundamental discriminant")
    return len(reduced_forms(D, primitive_only=True))


def _check_N(N: int) -> None:
    if N <= 0 or N % 4 not in (0, 3):
        raise BadResidue(f"H(N) needs N > 0 with N = 0, 3 (mod 4); got {N}")


def hurwitz_H(N: int) -> Fraction:
    """Weighted count of reduced forms of discriminant -N.

    Forms proportional to x^2 + y^2 count 1/2, those proportional to
    x^2 + xy + y^2 count 1/3.
    """
    _check_N(N)
    six_h = 0
    for a, b, c in reduced_forms(-N):
        if b == 0 and a == c:
            six_h += 3
        elif a == b == c:
            six_h += 2
        else:
            six_h += 6
    return Fraction(six_h, 6)


@dataclass(frozen=True)
class DiscriminantFactorization:
    D: int
    f: int
    w: int


def factor_discriminant(N: int) -> DiscriminantFactorization:
    """Write -N = D f^2 with D a fundamental discriminant."""
    _check_N(N)
    root = 1
    for ell, e in factorint(N).items():
        root *= ell ** (e // 2)
    # the conductor is the largest g | root with -N/g^2 fundamental
    for g in sorted(divisors(root), reverse=True):
        D = -N // (g * g)
        if is_fundamental(D):
            return DiscriminantFactorization(D, g, {-3: 3, -4: 2}.get(D, 1))
    raise AssertionError(f"no fundamental discriminant for {N}")  # pragma: no cover


def kronecker(a: int, n: int) -> int:
    """Kronecker symbol (a/n) for arbitrary integers a, n."""
    if n == 0:
        return 1 if abs(a) == 1 else 0
    result = 1
    if n < 0:
        n = -n
        if a < 0:
            result = -result
    v = 0
    while n % 2 == 0:
        n //= 2
        v += 1
    if v:
        if a % 2 == 0:
            return 0
        if v % 2 and a % 8 in (3, 5):
            result = -result
    # Jacobi symbol (a/n) for odd n > 0
    a %= n
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                result = -result
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            result = -result
        a %= n
    return result if n == 1 else 0


def hurwitz_H_formula(N: int) -> Fraction:
    """H(N) = h(D)/w(D) * sum over d | f of mu(d) (D/d) sigma_1(f/d)."""
    fac = factor_discriminant(N)
    D, f = fac.D, fac.f
    total = sum(
        int(mobius(d)) * kronecker(D, d) * int(divisor_sigma(f // d, 1)) for d in divisors(f)
    )
    return Fraction(gauss_h(D) * total, fac.w)


def r3_table(limit: int) -> np.ndarray:
    """r3[n] = #{(x, y, z) in Z^3 : x^2 + y^2 + z^2 = n} for 0 <= n <= limit."""
    if limit > R3_LIMIT:
        raise TooLarge(f"limit {limit} exceeds {R3_LIMIT}")
    one = np.zeros(limit + 1, dtype=np.int64)
    for x in range(-isqrt(limit), isqrt(limit) + 1):
        one[x * x] += 1
    two = np.convolve(one, one)[: limit + 1]
    return np.convolve(two, one)[: limit + 1]


def r3(n: int) -> int:
    """Representations of n as a sum of three squares, by exhaustion."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    if n > R3_LIMIT:
        raise TooLarge(f"n = {n} exceeds {R3_LIMIT}")
    count = 0
    r = isqrt(n)
    for x in range(-r, r + 1):
        rest = n - x * x
        for y in range(-isqrt(rest), isqrt(rest) + 1):
            z2 = rest - y * y
            z = isqrt(z2)
            if z * z == z2:
                count += 1 if z == 0 else 2
    return count


def gauss_r3_prediction(n: int, r3_of=r3) -> int | None:
    """The value of r3(n) predicted from class numbers."""
    if n % 4 in (1, 2):
        return int(12 * hurwitz_H(4 * n))
    if n % 8 == 3:
        return int(24 * hurwitz_H(n))
    if n % 8 == 7:
        return 0
    return r3_of(n // 4)


# -- jellyfish families ----------------------------------------------------------


def m_fq(swarm, s: int) -> int:
    """Distinct j-invariants among curves of jellyfish with trace ``s``."""
    from .legendre import j_invariants

    lams = set()
    for jf in swarm.jellyfish:
        if jf.trace is None:
            raise ValueError("swarm is not annotated")
        if jf.trace == s:
            lams.update(jf.lambdas)
    return len(j_invariants(swarm.field, lams))


def valid_traces(q: int) -> list[int]:
    """Nonzero s with s^2 <= 4q and s = q + 1 (mod 8)."""
    r = isqrt(4 * q)
    return [s for s in range(-r, r + 1) if s and s * s <= 4 * q and (s - q - 1) % 8 == 0]


@dataclass
class SchoofRow:
    s: int
    N: int
    H: Fraction
    M: int

    @property
    def ok(self) -> bool:
        return self.H.denominator == 1 and self.H == self.M

    def __str__(self):
        return f"{self.s}, {self.N}, {self.H}, {self.M}, {'OK' if self.ok else 'FAIL'}"


@dataclass
class SchoofReport:
    q: int
    rows: list[SchoofRow]
    zero_skipped: bool

    @property
    def ok(self) -> bool:
        return all(r.ok for r in self.rows)


def verify_schoof_identity(q: int, swarm=None) -> SchoofReport:
    """Compare H((4q - s^2)/4) with M(s) for every admissible trace s.

    s = 0 is never checked; ``zero_skipped`` records whether it would have
    been admissible.
    """
    from .finite_field import field_from_q
    from .legendre import annotate_swarm
    from .swarm import build_swarm

    if swarm is None:
        swarm = annotate_swarm(build_swarm(field_from_q(q)), groups=False)
    elif any(jf.trace is None for jf in swarm.jellyfish):
        annotate_swarm(swarm, groups=False)
    rows = []
    for s in valid_traces(q):
        N = (4 * q - s * s) // 4
        rows.append(SchoofRow(s, N, hurwitz_H(N), m_fq(swarm, s)))
    return SchoofReport(q, rows, zero_skipped=(q + 1) % 8 == 0)

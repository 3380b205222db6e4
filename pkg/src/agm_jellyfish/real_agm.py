"""The classical AGM over the reals, Euler's pi approximations, and the
period integral with its hypergeometric series."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import mpmath
from mpmath import mp, mpf


class InvalidInput(ValueError):
    pass


class Divergent(ValueError):
    pass


@dataclass
class RealAgmSequence:
    pairs: list[tuple[mpf, mpf]]
    precision: int

    @property
    def limit(self) -> mpf:
        return self.pairs[-1][0]


def real_agm(a, b, steps: int, digits: int = 30) -> RealAgmSequence:
    """The pairs (a_1, b_1), ..., (a_{steps+1}, b_{steps+1})."""
    if digits < 15:
        raise InvalidInput("need at least 15 digits")
    with mp.workdps(digits + 10):
        a, b = mpf(a), mpf(b)
        if not a > b > 0:
            raise InvalidInput("need a > b > 0")
        pairs = [(a, b)]
        for _ in range(steps):
            a, b = (a + b) / 2, mpmath.sqrt(a * b)
            pairs.append((a, b))
    return RealAgmSequence(pairs, digits)


def agm_limit(a, b, digits: int = 30) -> mpf:
    with mp.workdps(digits + 10):
        a, b = mpf(a), mpf(b)
        eps = mpf(10) ** (-(digits + 5))
        while abs(a - b) > eps * a:
            a, b = (a + b) / 2, mpmath.sqrt(a * b)
        return a


def euler_pi(n: int, digits: int = 40) -> mpf:
    """p_n = a_n^2 / (1 - sum_{i<=n} 2^(i-2) (a_i^2 - b_i^2)) from AGM(sqrt 2, 1)."""
    if not 1 <= n <= 10:
        raise InvalidInput("n must lie in 1..10")
    with mp.workdps(digits + 10):
        seq = real_agm(mpmath.sqrt(2), 1, n - 1, digits).pairs
        # a_1^2 = 2 and b_1^2 = 1 are used exactly, so p_1 = 4 on the nose
        squares = [(mpf(2), mpf(1))] + [(a * a, b * b) for a, b in seq[1:]]
        denom = 1 - sum(mpf(2) ** (i - 2) * (a2 - b2) for i, (a2, b2) in enumerate(squares, 1))
        return +(squares[-1][0] / denom)


def elliptic_integral_IR(a, b, digits: int = 20) -> mpf:
    """(1/2a) * integral over [1, inf) of dx / sqrt(x (x-1) (x - (1 - b^2/a^2))).

    With x = sec(theta)^2 the integral becomes the smooth integral of
    2 / sqrt(1 - mu cos(theta)^2) over [0, pi/2], mu = 1 - b^2/a^2.
    """
    with mp.workdps(digits + 10):
        a, b = mpf(a), mpf(b)
        if not a > b > 0:
            raise InvalidInput("need a > b > 0")
        mu = 1 - b * b / (a * a)
        val = mpmath.quad(lambda th: 2 / mpmath.sqrt(1 - mu * mpmath.cos(th) ** 2), [0, mp.pi / 2])
        return +(val / (2 * a))


def pochhammer(x, k: int):
    out = 1
    for i in range(k):
        out *= x + i
    return out


@dataclass
class HypergeometricSeriesParams:
    alphas: tuple
    betas: tuple
    t: object
    tol: float = 1e-30

    def __post_init__(self):
        for beta in self.betas:
            if Fraction(beta).denominator == 1 and beta <= 0:
                raise InvalidInput("denominator parameter is a nonpositive integer")


def classical_hypergeometric(params: HypergeometricSeriesParams, digits: int = 30) -> mpf:
    """Partial sum of nFn-1(alphas; betas | t) stopped once a term drops
    below tol * (1 - |t|)."""
    with mp.workdps(digits + 10):
        t = mpf(params.t)
        if abs(t) >= 1:
            raise Divergent("|t| must be < 1")
        alphas = [mpf(Fraction(x).numerator) / Fraction(x).denominator for x in params.alphas]
        betas = [mpf(Fraction(x).numerator) / Fraction(x).denominator for x in params.betas]
        stop = mpf(params.tol) * (1 - abs(t))
        term, total, k = mpf(1), mpf(1), 0
        while True:
            num = 1
            for x in alphas:
                num *= x + k
            den = k + 1
            for x in betas:
                den *= x + k
            term = term * num / den * t
            total += term
            k += 1
            if abs(term) < stop and k > 2:
                return +total


def classical_2f1(alpha, beta, gamma, t, digits: int = 30, tol: float = 1e-30) -> mpf:
    return classical_hypergeometric(
        HypergeometricSeriesParams((alpha, beta), (gamma,), t, tol), digits
    )


def gauss_relation_residual(a, b, digits: int = 30) -> mpf:
    """|I_R(a,b) - pi/(2a) * 2F1(1/2, 1/2; 1 | 1 - b^2/a^2)|."""
    with mp.workdps(digits + 10):
        a, b = mpf(a), mpf(b)
        series = classical_2f1(Fraction(1, 2), Fraction(1, 2), 1, 1 - b * b / (a * a), digits)
        return abs(elliptic_integral_IR(a, b, digits) - mp.pi / (2 * a) * series)


def quadratic_transformation_residual(alpha, beta, t, digits: int = 30) -> mpf:
    """Residual of 2F1(a, b; 2a | 4t/(1+t)^2) = (1+t)^(2b) 2F1(b+1/2-a, b; a+1/2 | t^2)."""
    with mp.workdps(digits + 10):
        t = mpf(t)
        alpha, beta = Fraction(alpha), Fraction(beta)
        lhs = classical_2f1(alpha, beta, 2 * alpha, 4 * t / (1 + t) ** 2, digits)
        rhs = (1 + t) ** (2 * mpf(beta.numerator) / beta.denominator) * classical_2f1(
            beta + Fraction(1, 2) - alpha, beta, alpha + Fraction(1, 2), t * t, digits
        )
        return abs(lhs - rhs)

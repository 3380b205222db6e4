"""Greene's hypergeometric functions over F_q.

Characters are indexed through discrete logarithms: ``chi_j(g^k) = zeta^(jk)``
with ``zeta = exp(2 pi i / (q-1))`` and g the field's primitive root, and every
character (the trivial one included) vanishes at 0.  The complex-valued path
uses double precision and is meant as a verification oracle; the
quadratic-character path (:func:`greene_2f1_phi`, :func:`i_fq`) is exact.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

import numpy as np

from .finite_field import GF, FieldElement

TOL = 1e-8


class PreconditionViolated(ValueError):
    pass


class InvalidPair(ValueError):
    pass


class Characters:
    """Table of the q-1 multiplicative characters of a field."""

    def __init__(self, field: GF):
        self.field = field
        self.q = q = field.q
        self.n = q - 1
        self.log = field.log_table
        self.quadratic = self.n // 2
        k = np.arange(self.n)
        # table[j, k] = zeta^(j*k), exponents reduced exactly before exp
        self.table = np.exp(2j * np.pi * (np.outer(k, k) % self.n) / self.n)
        self._values = np.zeros((self.n, q), dtype=complex)
        nz = np.arange(1, q)
        self._values[:, nz] = self.table[:, self.log[nz]]

    def values(self, j: int) -> np.ndarray:
        """chi_j on every element encoding, chi_j(0) = 0."""
        return self._values[j % self.n]

    def __call__(self, j: int, x) -> complex:
        return complex(self._values[j % self.n, int(x)])

    def at_minus_one(self, j: int) -> int:
        return -1 if j % 2 else 1

    @property
    def jacobi_table(self) -> np.ndarray:
        """J[i, j] = sum over t of chi_i(t) chi_j(1 - t)."""
        if not hasattr(self, "_jacobi"):
            F = self.field
            t = np.arange(self.q)
            one_minus = F.vsub(np.full(self.q, F.integer(1).enc), t)
            self._jacobi = self._values @ self._values[:, one_minus].T
        return self._jacobi

    @property
    def gauss_table(self) -> np.ndarray:
        if not hasattr(self, "_gauss"):
            F = self.field
            psi = np.exp(2j * np.pi * F.trace_table / F.p)
            self._gauss = self._values @ psi
        return self._gauss


@lru_cache(maxsize=16)
def characters(field: GF) -> Characters:
    return Characters(field)


def gauss_sum(field: GF, j: int) -> complex:
    """G(chi_j) = sum over x != 0 of chi_j(x) exp(2 pi i Tr(x) / p)."""
    return complex(characters(field).gauss_table[j % (field.q - 1)])


def jacobi_sum(field: GF, a: int, b: int) -> complex:
    """J(A, B) = sum over t of A(t) B(1 - t)."""
    ch = characters(field)
    return complex(ch.jacobi_table[a % ch.n, b % ch.n])


def greene_binomial(field: GF, a: int, b: int) -> complex:
    """The normalised Jacobi sum (A choose B) = B(-1)/q * J(A, conj B)."""
    ch = characters(field)
    return ch.at_minus_one(b) * complex(ch.jacobi_table[a % ch.n, -b % ch.n]) / ch.q


def _binomials(ch: Characters, a, b) -> np.ndarray:
    a = np.asarray(a) % ch.n
    b = np.asarray(b) % ch.n
    sign = np.where(b % 2, -1.0, 1.0)
    return sign * ch.jacobi_table[a, -b % ch.n] / ch.q


def greene_2f1_full(field: GF, a: int, b: int, c: int, t) -> complex:
    """2F1(A, B; C | t) from the character-sum definition.

    q/(q-1) * sum over chi of (A chi choose chi) (B chi choose C chi) chi(t).
    """
    ch = characters(field)
    k = np.arange(ch.n)
    terms = _binomials(ch, a + k, k) * _binomials(ch, b + k, c + k)
    return complex(ch.q / ch.n * np.sum(terms * ch._values[:, int(t)]))


def greene_2f1_closed(field: GF, a: int, b: int, c: int, t) -> complex:
    """The n = 2 closed form BC(-1)/q * sum of B(x) conj(B)C(1-x) conj(A)(1-xt)."""
    ch = characters(field)
    F = field
    x = np.arange(ch.q)
    one = np.full(ch.q, F.integer(1).enc)
    xt = F.vmul(x, np.full(ch.q, int(t)))
    s = np.sum(ch.values(b)[x] * ch.values(c - b)[F.vsub(one, x)] * ch.values(-a)[F.vsub(one, xt)])
    return ch.at_minus_one(b + c) * complex(s) / ch.q


def character_sum(field: GF, lam) -> int:
    """Exact S = sum over x of phi(x(x-1)(x-lambda))."""
    lam = field(lam)
    x = np.arange(field.q, dtype=np.int64)
    one = field.integer(1).enc
    f = field.vmul(field.vmul(x, field.vsub(x, one)), field.vsub(x, lam.enc))
    return int(field.phi_table[f].astype(np.int64).sum())


def greene_2f1_phi(field: GF, lam) -> tuple[int, int]:
    """Exact 2F1(phi, phi; eps | lambda) as the pair (S, q).

    The value is ``phi(-1) * S / q``; see :func:`greene_2f1_phi_value`.  This
    is the sign produced by the character-sum definition (checked against
    :func:`greene_2f1_full`), and the one for which
    ``|E_lambda| = q + 1 + q phi(-1) 2F1(lambda)`` holds.
    """
    return character_sum(field, lam), field.q


def greene_2f1_phi_value(field: GF, lam) -> Fraction:
    S, q = greene_2f1_phi(field, lam)
    return Fraction(field.phi_enc(field.neg_enc(1)) * S, q)


def i_fq(a: FieldElement, b: FieldElement) -> int:
    """Finite-field analogue of the AGM period integral.

    Sum over x of phi(x) phi(x-1) phi(x - (1 - b^2/a^2)), exact.
    """
    if not a or not b or a == b or a == -b:
        raise InvalidPair(f"({a}, {b}) is not a valid pair")
    return character_sum(a.field, 1 - (b * b) / (a * a))


def evans_greene_sides(field: GF, a: int, b: int, t) -> tuple[complex, complex]:
    """Both sides of the Evans-Greene quadratic transformation.

    ``a`` and ``b`` index the characters A and B; requires A, A^2 conj(B) and
    phi A conj(B) nontrivial and t != -1.
    """
    ch = characters(field)
    n, h = ch.n, ch.quadratic
    if a % n == 0 or (2 * a - b) % n == 0 or (h + a - b) % n == 0:
        raise PreconditionViolated("A, A^2 conj(B) and phi A conj(B) must be nontrivial")
    F = field
    t = F(t)
    if t == -1:
        raise PreconditionViolated("t = -1 is excluded")
    z = 4 * t / ((1 + t) ** 2)
    left = greene_2f1_full(F, a, b, 2 * a, z.enc)
    G = ch.gauss_table
    factor = (
        ch(-a, F.integer(4).enc)
        * ch.at_minus_one(h + b)
        * G[(2 * a - b) % n]
        * G[(h - a + b) % n]
        / (G[h] * G[a % n])
    )
    right = factor * ch(2 * b, (1 + t).enc) * greene_2f1_full(F, h - a + b, b, h + a, (t * t).enc)
    return left, complex(right)


def evans_greene_check(field: GF, a: int, b: int, t) -> float:
    left, right = evans_greene_sides(field, a, b, t)
    return abs(left - right)

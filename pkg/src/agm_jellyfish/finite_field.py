"""Arithmetic in F_q for q = p^m = 3 (mod 4).

Elements are identified by their integer encoding ``sum(c_i * p**i)`` where
``c_i`` is the coefficient of ``x**i`` in the polynomial representative.  For
prime fields the encoding is just the residue.

Besides scalar arithmetic through :class:`FieldElement`, a :class:`GF` exposes
numpy lookup tables (quadratic character, canonical square roots, logarithms)
used by the vectorised swarm and character-sum code.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterator

import numpy as np
from sympy import factorint, isprime
from sympy.polys.domains import ZZ
from sympy.polys.galoistools import gf_irreducible_p

#: Largest field order accepted by :func:`make_field`.
MAX_Q = 2**20


class FieldError(ValueError):
    pass


class NotPrime(FieldError):
    pass


class WrongResidueClass(FieldError):
    pass


class TooLarge(FieldError):
    pass


class NotASquare(FieldError):
    pass


def _digits(n: int, p: int, m: int) -> list[int]:
    out = []
    for _ in range(m):
        n, r = divmod(n, p)
        out.append(r)
    return out


def _is_irreducible(coeffs: tuple[int, ...], p: int) -> bool:
    # galoistools wants the leading coefficient first
    return bool(gf_irreducible_p([int(c) for c in reversed(coeffs)], p, ZZ))


def smallest_irreducible(p: int, m: int) -> tuple[int, ...]:
    """First monic irreducible of degree m over Z/p, ordered by ``sum(c_i p^i)``."""
    if m == 1:
        return (0, 1)
    for low in range(p**m):
        coeffs = tuple(_digits(low, p, m)) + (1,)
        if coeffs[0] == 0:
            continue
        if _is_irreducible(coeffs, p):
            return coeffs
    raise AssertionError("no irreducible polynomial found")  # pragma: no cover


@dataclass(frozen=True, eq=False)
class GF:
    """The field F_q, q = p**m, with a fixed monic irreducible modulus.

    Immutable; lookup tables are built lazily on first use and then shared.
    Use :func:`make_field` rather than calling the constructor directly.
    """

    p: int
    m: int
    modulus: tuple[int, ...] = field(default=(0, 1))

    def __post_init__(self):
        if not isprime(self.p) or self.p < 3:
            raise NotPrime(f"{self.p} is not an odd prime")
        if self.m < 1:
            raise FieldError("exponent must be positive")
        q = self.p**self.m
        if q % 4 != 3:
            raise WrongResidueClass(f"q = {q} is not 3 mod 4")
        if q > MAX_Q:
            raise TooLarge(f"q = {q} exceeds the maximum {MAX_Q}")
        if self.m == 1:
            object.__setattr__(self, "modulus", (0, 1))
        else:
            mod = tuple(int(c) % self.p for c in self.modulus)
            if len(mod) != self.m + 1 or mod[-1] != 1:
                raise FieldError("modulus must be monic of degree m")
            if not _is_irreducible(mod, self.p):
                raise FieldError(f"modulus {mod} is reducible over Z/{self.p}")
            object.__setattr__(self, "modulus", mod)
        object.__setattr__(self, "q", q)

    q: int = field(init=False)

    def __eq__(self, other):
        return isinstance(other, GF) and (self.p, self.m, self.modulus) == (
            other.p,
            other.m,
            other.modulus,
        )

    def __hash__(self):
        return hash((self.p, self.m, self.modulus))

    def __repr__(self):
        if self.m == 1:
            return f"GF({self.p})"
        return f"GF({self.p}^{self.m}, modulus={list(self.modulus)})"

    def to_json(self) -> dict:
        return {"p": self.p, "m": self.m, "modulus": list(self.modulus)}

    # -- elements -----------------------------------------------------------

    def __call__(self, value) -> FieldElement:
        if isinstance(value, FieldElement):
            if value.field != self:
                raise FieldError("element belongs to a different field")
            return value
        value = int(value)
        if self.m == 1:
            return FieldElement(self, value % self.p)
        if not 0 <= value < self.q:
            raise FieldError(f"encoding {value} out of range for {self!r}")
        return FieldElement(self, value)

    def integer(self, n: int) -> FieldElement:
        """Image of the integer n in the prime subfield."""
        return FieldElement(self, int(n) % self.p)

    def from_coeffs(self, coeffs) -> FieldElement:
        coeffs = list(coeffs) + [0] * (self.m - len(coeffs))
        enc = 0
        for c in reversed(coeffs[: self.m]):
            enc = enc * self.p + int(c) % self.p
        return FieldElement(self, enc)

    def elements(self) -> Iterator[FieldElement]:
        for e in range(self.q):
            yield FieldElement(self, e)

    @property
    def zero(self) -> FieldElement:
        return FieldElement(self, 0)

    @property
    def one(self) -> FieldElement:
        return FieldElement(self, 1)

    # -- integer-level arithmetic on encodings ------------------------------

    def _coeffs(self, e: int) -> list[int]:
        return _digits(e, self.p, self.m)

    def _enc(self, coeffs) -> int:
        enc = 0
        for c in reversed(coeffs):
            enc = enc * self.p + c
        return enc

    def add_enc(self, x: int, y: int) -> int:
        if self.m == 1:
            return (x + y) % self.p
        p = self.p
        return self._enc([(a + b) % p for a, b in zip(self._coeffs(x), self._coeffs(y))])

    def neg_enc(self, x: int) -> int:
        if self.m == 1:
            return -x % self.p
        p = self.p
        return self._enc([-a % p for a in self._coeffs(x)])

    def sub_enc(self, x: int, y: int) -> int:
        return self.add_enc(x, self.neg_enc(y))

    def mul_enc(self, x: int, y: int) -> int:
        if self.m == 1:
            return x * y % self.p
        p, m = self.p, self.m
        a, b = self._coeffs(x), self._coeffs(y)
        prod = [0] * (2 * m - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    prod[i + j] += ai * bj
        mod = self.modulus
        for k in range(2 * m - 2, m - 1, -1):
            c = prod[k] % p
            if c:
                # x^k = x^(k-m) * (x^m) and x^m = -sum(mod[i] x^i)
                for i in range(m):
                    prod[k - m + i] -= c * mod[i]
        return self._enc([c % p for c in prod[:m]])

    def pow_enc(self, x: int, n: int) -> int:
        if n < 0:
            raise ValueError("negative exponent")
        if self.m == 1:
            return pow(x, n, self.p)
        result, base = 1, x
        while n:
            if n & 1:
                result = self.mul_enc(result, base)
            base = self.mul_enc(base, base)
            n >>= 1
        return result

    def inv_enc(self, x: int) -> int:
        if x == 0:
            raise ZeroDivisionError("inverse of zero in " + repr(self))
        return self.pow_enc(x, self.q - 2)

    def phi_enc(self, x: int) -> int:
        if x == 0:
            return 0
        return 1 if self.pow_enc(x, (self.q - 1) // 2) == 1 else -1

    def sqrt_enc(self, x: int) -> int:
        r = self.pow_enc(x, (self.q + 1) // 4)
        if self.mul_enc(r, r) != x:
            raise NotASquare(f"{x} is not a square in {self!r}")
        return r

    def trace_enc(self, x: int) -> int:
        t, y = 0, x
        for _ in range(self.m):
            t = self.add_enc(t, y)
            y = self.pow_enc(y, self.p)
        # the trace lies in the prime subfield, i.e. has encoding < p
        assert t < self.p
        return t

    # -- element-level API ---------------------------------------------------

    def phi(self, x) -> int:
        return self.phi_enc(self(x).enc)

    def sqrt(self, x) -> FieldElement:
        """Canonical square root ``x**((q+1)/4)``; it is always itself a square."""
        return FieldElement(self, self.sqrt_enc(self(x).enc))

    def trace(self, x) -> int:
        return self.trace_enc(self(x).enc)

    @cached_property
    def primitive_root(self) -> FieldElement:
        primes = list(factorint(self.q - 1))
        for g in range(2, self.q):
            if all(self.pow_enc(g, (self.q - 1) // ell) != 1 for ell in primes):
                return FieldElement(self, g)
        raise AssertionError("no generator found")  # pragma: no cover

    # -- numpy tables ---------------------------------------------------------

    @cached_property
    def exp_table(self) -> np.ndarray:
        """``exp_table[k]`` is the encoding of g**k for 0 <= k < q-1."""
        g = self.primitive_root.enc
        out = np.empty(self.q - 1, dtype=np.int64)
        x = 1
        for k in range(self.q - 1):
            out[k] = x
            x = self.mul_enc(x, g)
        return out

    @cached_property
    def log_table(self) -> np.ndarray:
        """Discrete logarithm base :attr:`primitive_root`; entry 0 is -1."""
        out = np.full(self.q, -1, dtype=np.int64)
        out[self.exp_table] = np.arange(self.q - 1)
        return out

    @cached_property
    def phi_table(self) -> np.ndarray:
        out = np.full(self.q, -1, dtype=np.int8)
        out[0] = 0
        out[self.squares] = 1
        return out

    @cached_property
    def squares(self) -> np.ndarray:
        """Sorted encodings of the nonzero squares."""
        if self.m == 1:
            x = np.arange(1, self.q, dtype=np.int64)
            return np.unique(x * x % self.q)
        return np.sort(self.exp_table[0::2])

    @cached_property
    def sqrt_table(self) -> np.ndarray:
        """Canonical square root for each square encoding, -1 elsewhere.

        x**((q+1)/4) with x = r**2 equals r * phi(r), so the canonical root
        of a square is its unique square root that is itself a square.
        """
        out = np.full(self.q, -1, dtype=np.int64)
        out[0] = 0
        r = self.squares
        out[self.vmul(r, r)] = r
        return out

    @cached_property
    def _pows(self) -> np.ndarray:
        return self.p ** np.arange(self.m, dtype=np.int64)

    def digits(self, x: np.ndarray) -> np.ndarray:
        return (np.asarray(x, dtype=np.int64)[..., None] // self._pows) % self.p

    def vadd(self, x, y) -> np.ndarray:
        x = np.asarray(x, dtype=np.int64)
        y = np.asarray(y, dtype=np.int64)
        if self.m == 1:
            return (x + y) % self.p
        return ((self.digits(x) + self.digits(y)) % self.p) @ self._pows

    def vneg(self, x) -> np.ndarray:
        x = np.asarray(x, dtype=np.int64)
        if self.m == 1:
            return -x % self.p
        return (-self.digits(x) % self.p) @ self._pows

    def vsub(self, x, y) -> np.ndarray:
        return self.vadd(x, self.vneg(y))

    def vmul(self, x, y) -> np.ndarray:
        x = np.asarray(x, dtype=np.int64)
        y = np.asarray(y, dtype=np.int64)
        if self.m == 1:
            return x * y % self.p
        log = self.log_table
        k = (log[x] + log[y]) % (self.q - 1)
        return np.where((x == 0) | (y == 0), 0, self.exp_table[k])

    def vinv(self, x) -> np.ndarray:
        x = np.asarray(x, dtype=np.int64)
        if np.any(x == 0):
            raise ZeroDivisionError("inverse of zero")
        return self.exp_table[-self.log_table[x] % (self.q - 1)]

    @cached_property
    def trace_table(self) -> np.ndarray:
        if self.m == 1:
            return np.arange(self.q, dtype=np.int64)
        return np.array([self.trace_enc(e) for e in range(self.q)], dtype=np.int64)


def make_field(p: int, m: int = 1) -> GF:
    """Build F_{p^m} with the deterministic modulus (smallest irreducible)."""
    if not isprime(p):
        raise NotPrime(f"{p} is not prime")
    if m < 1:
        raise FieldError("exponent must be positive")
    q = p**m
    if q % 4 != 3:
        raise WrongResidueClass(f"q = {q} is not 3 mod 4")
    if q > MAX_Q:
        raise TooLarge(f"q = {q} exceeds the maximum {MAX_Q}")
    return GF(p, m, smallest_irreducible(p, m))


def field_from_q(q: int) -> GF:
    """Build F_q from the order alone; q must be a prime power."""
    if q < 2:
        raise NotPrime(f"{q} is not a prime power")
    f = factorint(q)
    if len(f) != 1:
        raise NotPrime(f"{q} is not a prime power")
    ((p, m),) = f.items()
    return make_field(p, m)


class FieldElement:
    """An element of a :class:`GF`, stored as its integer encoding."""

    __slots__ = ("field", "enc")

    def __init__(self, field: GF, enc: int):
        self.field = field
        self.enc = enc

    def _other(self, other) -> int:
        if isinstance(other, FieldElement):
            if other.field is not self.field and other.field != self.field:
                raise FieldError("elements of different fields")
            return other.enc
        # plain integers act through the prime subfield
        return int(other) % self.field.p

    def __add__(self, other):
        return FieldElement(self.field, self.field.add_enc(self.enc, self._other(other)))

    __radd__ = __add__

    def __sub__(self, other):
        return FieldElement(self.field, self.field.sub_enc(self.enc, self._other(other)))

    def __rsub__(self, other):
        return FieldElement(self.field, self.field.sub_enc(self._other(other), self.enc))

    def __mul__(self, other):
        return FieldElement(self.field, self.field.mul_enc(self.enc, self._other(other)))

    __rmul__ = __mul__

    def __neg__(self):
        return FieldElement(self.field, self.field.neg_enc(self.enc))

    def __truediv__(self, other):
        return FieldElement(self.field, self._other(other)).inverse() * self

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        return FieldElement(self.field, self.field.pow_enc(self.enc, n))

    def inverse(self) -> FieldElement:
        return FieldElement(self.field, self.field.inv_enc(self.enc))

    def __eq__(self, other):
        if isinstance(other, FieldElement):
            return self.enc == other.enc and self.field == other.field
        if isinstance(other, int):
            return self.enc == other % self.field.p
        return NotImplemented

    def __hash__(self):
        return hash(self.enc)

    def __int__(self):
        return self.enc

    def __bool__(self):
        return self.enc != 0

    def __repr__(self):
        return str(self.enc)

    @property
    def coeffs(self) -> list[int]:
        return _digits(self.enc, self.field.p, self.field.m)

    def phi(self) -> int:
        return self.field.phi_enc(self.enc)

    def sqrt(self) -> FieldElement:
        return FieldElement(self.field, self.field.sqrt_enc(self.enc))

    def trace(self) -> int:
        return self.field.trace_enc(self.enc)

    def is_square(self) -> bool:
        return self.phi() == 1


def add(x: FieldElement, y: FieldElement) -> FieldElement:
    return x + y


def sub(x: FieldElement, y: FieldElement) -> FieldElement:
    return x - y


def mul(x: FieldElement, y: FieldElement) -> FieldElement:
    return x * y


def neg(x: FieldElement) -> FieldElement:
    return -x


def inv(x: FieldElement) -> FieldElement:
    return x.inverse()


def div(x: FieldElement, y: FieldElement) -> FieldElement:
    return x / y


def phi(x: FieldElement) -> int:
    return x.phi()


def canonical_sqrt(x: FieldElement) -> FieldElement:
    return x.sqrt()


def enumerate_elements(field: GF) -> list[FieldElement]:
    return list(field.elements())


def absolute_trace(x: FieldElement) -> int:
    return x.trace()


def primitive_root(field: GF) -> FieldElement:
    return field.primitive_root

"""Legendre curves y^2 = x(x-1)(x-lambda) over F_q and their role in the swarm.

Points are ``(x, y)`` tuples of field elements, with the module-level
singleton :data:`O` as the point at infinity.  Group structures are found by
enumerating points, which is fine for q up to :data:`ENUMERATION_BOUND`.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property, lru_cache
from math import gcd

import numpy as np
from sympy import factorint

from .finite_field import GF, FieldElement
from .hypergeometric import character_sum
from .swarm import AdmissiblePair, Swarm, agm_step

ENUMERATION_BOUND = 20000


class CurveError(ValueError):
    pass


class CharacteristicTooSmall(CurveError):
    pass


class PointNotOnCurve(CurveError):
    pass


class NotASquareLambda(CurveError):
    pass


class TooLarge(CurveError):
    pass


class _Infinity:
    __slots__ = ()

    def __repr__(self):
        return "O"

    def __reduce__(self):
        return "O"


O = _Infinity()


@dataclass(frozen=True)
class LegendreCurve:
    field: GF
    lam: FieldElement

    def __post_init__(self):
        if self.field.p < 7:
            raise CharacteristicTooSmall("Legendre curve code requires p >= 7")
        if self.lam == 0 or self.lam == 1:
            raise CurveError("lambda must avoid 0 and 1")

    def __repr__(self):
        return f"E_{self.lam.enc}"

    def rhs(self, x: FieldElement) -> FieldElement:
        return x * (x - 1) * (x - self.lam)

    def contains(self, P) -> bool:
        if P is O:
            return True
        x, y = P
        return y * y == self.rhs(x)

    @cached_property
    def points(self) -> list:
        """All rational points, O first, then affine points sorted by (x, y)."""
        F = self.field
        pts = [O]
        for x in F.elements():
            f = self.rhs(x)
            s = f.phi()
            if s == 0:
                pts.append((x, f))
            elif s == 1:
                r = f.sqrt()
                pts.extend(sorted([(x, r), (x, -r)], key=lambda P: P[1].enc))
        return pts


def curve(field: GF, lam) -> LegendreCurve:
    return LegendreCurve(field, field(lam))


def point_count(E: LegendreCurve) -> int:
    """|E(F_q)| = q + 1 + S(lambda), from the exact character sum."""
    return E.field.q + 1 + character_sum(E.field, E.lam)


def neg_point(P):
    if P is O:
        return O
    return (P[0], -P[1])


def add_points(E: LegendreCurve, P, Q):
    """Chord-tangent addition on y^2 = x^3 - (1+lambda) x^2 + lambda x."""
    if P is O:
        return Q
    if Q is O:
        return P
    x1, y1 = P
    x2, y2 = Q
    a2 = -(E.lam + 1)
    if x1 == x2:
        if y1 == -y2:
            return O
        s = (3 * x1 * x1 + 2 * a2 * x1 + E.lam) / (2 * y1)
    else:
        s = (y2 - y1) / (x2 - x1)
    x3 = s * s - a2 - x1 - x2
    return (x3, s * (x1 - x3) - y1)


def mul_point(E: LegendreCurve, n: int, P):
    if n < 0:
        return mul_point(E, -n, neg_point(P))
    R = O
    while n:
        if n & 1:
            R = add_points(E, R, P)
        P = add_points(E, P, P)
        n >>= 1
    return R


@dataclass(frozen=True)
class GroupStructure:
    """E(F_q) = Z/n1 x Z/n2 with n1 | n2."""

    order: int
    n1: int
    n2: int
    sylow2: tuple[int, int]
    trace: int

    def to_json(self) -> dict:
        return {"N": self.order, "n1": self.n1, "n2": self.n2, "trace": self.trace}

    def __str__(self):
        if self.n1 == 1:
            return f"Z/{self.n2}"
        return f"Z/{self.n1} x Z/{self.n2}"


def _two_part(n: int) -> int:
    return n & -n


def _torsion_count(E: LegendreCurve, n: int) -> int:
    return sum(1 for P in E.points if mul_point(E, n, P) is O)


@lru_cache(maxsize=4096)
def group_structure(E: LegendreCurve) -> GroupStructure:
    q = E.field.q
    if q > ENUMERATION_BOUND:
        raise TooLarge(f"q = {q} exceeds the enumeration bound {ENUMERATION_BOUND}")
    N = len(E.points)
    n1 = 1
    for ell in factorint(gcd(N, q - 1)):
        k = ell
        while (q - 1) % k == 0 and N % (k * k) == 0 and _torsion_count(E, k) == k * k:
            n1 *= ell
            k *= ell
    n2 = N // n1
    assert n2 % n1 == 0
    trace = q + 1 - N
    assert trace * trace <= 4 * q, "Hasse bound violated"
    return GroupStructure(N, n1, n2, (_two_part(n1), _two_part(n2)), trace)


def two_sylow_shape(E: LegendreCurve) -> tuple[int, int]:
    """2-Sylow subgroup of E_{alpha^2} as (2, 2^(2+b))."""
    if E.lam.phi() != 1:
        raise NotASquareLambda(f"lambda = {E.lam} is not a square")
    s1, s2 = group_structure(E).sylow2
    # full 2-torsion and a point of order 4, but not Z/4 x Z/4
    assert s1 == 2 and s2 >= 4, (s1, s2)
    return s1, s2


def halvable(E: LegendreCurve, P) -> bool:
    """2-descent test: P = 2Q has a rational solution Q.

    P = (x0, y0) is halvable iff x0, x0 - 1 and x0 - lambda are all squares,
    with 0 counting as a square.
    """
    if P is O:
        return True
    x0 = P[0]
    return all(t.phi() >= 0 for t in (x0, x0 - 1, x0 - E.lam))


def j_invariant(E: LegendreCurve) -> FieldElement:
    lam = E.lam
    num = 256 * (lam * lam - lam + 1) ** 3
    return num / (lam * lam * (lam - 1) ** 2)


def psi(p: AdmissiblePair) -> LegendreCurve:
    a, b = p
    return LegendreCurve(a.field, (b * b) / (a * a))


def isogeny_apply(p: AdmissiblePair, P):
    """Image of P under the 2-isogeny attached to the edge p -> agm_step(p)."""
    E = psi(p)
    if not E.contains(P):
        raise PointNotOnCurve(f"{P} is not on {E}")
    if P is O:
        return O
    x, y = P
    if not x:
        return O
    a, b = p
    s = a + b
    X = (a * x + b) ** 2 / (x * s * s)
    Y = -(a * y * (a * x - b) * (a * x + b)) / (x * x * s**3)
    return (X, Y)


@lru_cache(maxsize=1024)
def _addition_table(E: LegendreCurve) -> dict:
    pts = E.points
    return {(P, Q): add_points(E, P, Q) for P in pts for Q in pts}


def verify_isogeny(p: AdmissiblePair) -> list[str]:
    """Exhaustively check the edge map p -> agm_step(p); returns violations."""
    E, E2 = psi(p), psi(agm_step(p))
    problems = []
    image = {P: isogeny_apply(p, P) for P in E.points}
    for P, R in image.items():
        if not E2.contains(R):
            problems.append(f"{P} maps to {R}, not on {E2}")
    if problems:
        return problems
    dom, cod = _addition_table(E), _addition_table(E2)
    for (P, Q), S in dom.items():
        if image[S] != cod[(image[P], image[Q])]:
            problems.append(f"not additive at {P}, {Q}")
            break
    F = p.field
    kernel = {P for P, R in image.items() if R is O}
    if kernel != {O, (F.zero, F.zero)}:
        problems.append(f"kernel is {sorted(map(repr, kernel))}")
    if 2 * len(set(image.values())) != len(E2.points):
        problems.append("image does not have index 2")
    return problems


# -- swarm annotation ----------------------------------------------------------


class AnnotationError(AssertionError):
    pass


def node_lambdas(swarm: Swarm, idx=None) -> np.ndarray:
    """lambda = b^2/a^2 (as encodings) for the given nodes, default all."""
    F = swarm.field
    if idx is None:
        idx = np.arange(swarm.node_count)
    a, b = swarm.pairs(idx)
    ratio = F.vmul(b, F.vinv(a))
    return F.vmul(ratio, ratio)


def annotate_swarm(swarm: Swarm, groups: bool | None = None) -> Swarm:
    """Attach trace of Frobenius, group structure and curves to every jellyfish.

    Checks along the way that all nodes of one jellyfish give curves with the
    same number of points (and the same group, when groups are computed),
    and that the image of the whole swarm is {E_(alpha^2)} with q - 1
    preimages each.  Group structures default on up to the enumeration bound.
    """
    F, q = swarm.field, swarm.q
    if F.p < 7:
        raise CharacteristicTooSmall("annotation requires p >= 7")
    if groups is None:
        groups = q <= ENUMERATION_BOUND
    lams = node_lambdas(swarm)

    counts = np.bincount(lams, minlength=q)
    expected = np.zeros(q, dtype=np.int64)
    alphas = np.arange(2, q - 1) if F.m == 1 else None
    if alphas is None:
        one = F.integer(1).enc
        alphas = np.array([x for x in range(1, q) if x not in (one, F.neg_enc(one))])
    expected[F.vmul(alphas, alphas)] = q - 1
    if not np.array_equal(counts, expected):
        raise AnnotationError("Psi image is not {E_(alpha^2)} with q-1 preimages each")

    n_of = {}
    for lam in np.flatnonzero(counts):
        n_of[int(lam)] = q + 1 + character_sum(F, F(int(lam)))

    for jf in swarm.jellyfish:
        mine = sorted(set(lams[jf.nodes].tolist()))
        ns = {n_of[lam] for lam in mine}
        if len(ns) != 1:
            raise AnnotationError(f"jellyfish {jf.id} mixes point counts {sorted(ns)}")
        (N,) = ns
        jf.trace = q + 1 - N
        jf.lambdas = mine
        if groups:
            gs = {group_structure(LegendreCurve(F, F(lam))) for lam in mine}
            if len(gs) != 1:
                raise AnnotationError(f"jellyfish {jf.id} mixes groups {gs}")
            (jf.group,) = gs
    return swarm


def j_invariants(field: GF, lambdas) -> list[int]:
    return sorted({j_invariant(LegendreCurve(field, field(lam))).enc for lam in lambdas})


def distinct_groups(swarm: Swarm) -> int:
    return len({jf.group for jf in swarm.jellyfish})


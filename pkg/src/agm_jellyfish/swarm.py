"""The AGM over F_q and its jellyfish swarm.

A node is an admissible pair (a, b): a, b nonzero, a != +-b, phi(ab) = 1.
Its successor is ((a+b)/2, sqrt(ab)) with the root chosen so the new pair
is again admissible.  The swarm is the functional graph of that map; its
weakly connected components are the jellyfish.

Node numbering
--------------
For fixed a the admissible b are exactly the nonzero elements with
phi(b) = phi(a), minus a itself, so there are h = (q-3)/2 of them.  Ordering
pairs lexicographically by encoding gives the closed form

    index(a, b) = (a - 1) * h + rank(b) - [b > a]

where rank(b) counts the smaller nonzero elements of b's square class.
Index order therefore equals the order of the key ``enc(a) * q + enc(b)``.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterator

import numpy as np

from .finite_field import GF, FieldElement

CHUNK = 1 << 20


class NotAdmissible(ValueError):
    pass


@dataclass(frozen=True)
class AdmissiblePair:
    a: FieldElement
    b: FieldElement

    def __post_init__(self):
        if not is_admissible(self.a, self.b):
            raise NotAdmissible(f"({self.a}, {self.b}) is not admissible")

    def __iter__(self):
        yield self.a
        yield self.b

    def __repr__(self):
        return f"({self.a.enc}, {self.b.enc})"

    @property
    def field(self) -> GF:
        return self.a.field

    @property
    def key(self) -> tuple[int, int]:
        return (self.a.enc, self.b.enc)


def pair(field: GF, a: int, b: int) -> AdmissiblePair:
    """Admissible pair from two encodings."""
    return AdmissiblePair(field(a), field(b))


def is_admissible(a: FieldElement, b: FieldElement) -> bool:
    if not a or not b:
        return False
    if a == b or a == -b:
        return False
    return (a * b).phi() == 1


def agm_step(p: AdmissiblePair) -> AdmissiblePair:
    a, b = p
    c = (a + b) / 2
    d = (a * b).sqrt()
    if (c * d).phi() != 1:
        d = -d
    return AdmissiblePair(c, d)


def orbit(start: AdmissiblePair) -> tuple[list[AdmissiblePair], list[AdmissiblePair]]:
    """Split the AGM sequence from ``start`` into its preperiod and its cycle."""
    seen: dict[tuple[int, int], int] = {}
    seq = []
    node = start
    while node.key not in seen:
        seen[node.key] = len(seq)
        seq.append(node)
        node = agm_step(node)
    k = seen[node.key]
    return seq[:k], seq[k:]


def parents(p: AdmissiblePair) -> list[AdmissiblePair]:
    """All admissible (A, B) with ``agm_step((A, B)) == p``.

    A and B are the roots of X^2 - 2aX + b^2, which exist iff a^2 - b^2 is a
    square.
    """
    a, b = p
    disc = a * a - b * b
    if disc.phi() != 1:
        return []
    s = disc.sqrt()
    out = []
    for A, B in ((a + s, a - s), (a - s, a + s)):
        if is_admissible(A, B):
            cand = AdmissiblePair(A, B)
            if agm_step(cand).key == p.key:
                out.append(cand)
    return out


def scale(p: AdmissiblePair, alpha: FieldElement) -> AdmissiblePair:
    if not alpha:
        raise ValueError("scaling factor must be nonzero")
    return AdmissiblePair(alpha * p.a, alpha * p.b)


# -- whole swarm ---------------------------------------------------------------


@dataclass
class Jellyfish:
    """One component: a cycle (bell head) with tentacles hanging off it.

    ``cycle`` starts at the smallest node key on the cycle and follows the
    AGM.  ``trace`` and ``group`` are filled in by
    :func:`agm_jellyfish.legendre.annotate_swarm`, together with ``lambdas``,
    the sorted encodings of the Legendre parameters of its nodes' curves.
    """

    id: int
    root: int
    size: int
    cycle_length: int
    swarm: Swarm = field(repr=False, compare=False)
    trace: int | None = None
    group: object | None = None
    lambdas: list[int] | None = None

    @cached_property
    def cycle_nodes(self) -> np.ndarray:
        succ = self.swarm.succ
        out = np.empty(self.cycle_length, dtype=np.int64)
        v = self.root
        for i in range(self.cycle_length):
            out[i] = v
            v = succ[v]
        assert v == self.root
        return out

    @property
    def tentacle_nodes(self) -> np.ndarray:
        s = self.swarm
        return np.flatnonzero((s.component == self.id) & ~s.on_cycle)

    @property
    def nodes(self) -> np.ndarray:
        return np.flatnonzero(self.swarm.component == self.id)

    @property
    def cycle(self) -> list[AdmissiblePair]:
        return [self.swarm.pair(i) for i in self.cycle_nodes]

    @property
    def tentacles(self) -> list[AdmissiblePair]:
        return [self.swarm.pair(i) for i in self.tentacle_nodes]


@dataclass
class Swarm:
    """Functional graph of the AGM on all admissible pairs of ``field``.

    ``succ[i]`` is the successor index of node i, ``component[i]`` the id of
    its jellyfish (1-based, ordered by smallest node key) and ``on_cycle``
    marks bell-head nodes.
    """

    field: GF
    succ: np.ndarray
    component: np.ndarray
    on_cycle: np.ndarray
    jellyfish: list[Jellyfish]

    @property
    def q(self) -> int:
        return self.field.q

    @property
    def node_count(self) -> int:
        return len(self.succ)

    @property
    def d(self) -> int:
        return len(self.jellyfish)

    @property
    def size_histogram(self) -> dict[int, int]:
        return dict(sorted(Counter(j.size for j in self.jellyfish).items()))

    @cached_property
    def _index(self) -> _NodeIndex:
        return _NodeIndex(self.field)

    def index(self, p: AdmissiblePair | tuple[int, int]) -> int:
        a, b = p.key if isinstance(p, AdmissiblePair) else p
        return int(self._index.index(np.int64(a), np.int64(b)))

    def pair(self, i: int) -> AdmissiblePair:
        a, b = self._index.pair(np.asarray([i]))
        return AdmissiblePair(self.field(int(a[0])), self.field(int(b[0])))

    def pairs(self, idx) -> tuple[np.ndarray, np.ndarray]:
        """Encodings (a, b) of the given node indices."""
        return self._index.pair(np.asarray(idx, dtype=np.int64))

    def nodes(self) -> Iterator[AdmissiblePair]:
        for i in range(self.node_count):
            yield self.pair(i)

    def jellyfish_of(self, p: AdmissiblePair) -> Jellyfish:
        return self.jellyfish[int(self.component[self.index(p)]) - 1]


class _NodeIndex:
    """Closed-form bijection between admissible pairs and 0..n-1."""

    def __init__(self, field: GF):
        q = field.q
        self.q = q
        self.h = (q - 3) // 2
        phi = field.phi_table.astype(np.int64)
        self.cls = (phi < 0).astype(np.int64)  # 0 squares, 1 non-squares
        rank = np.zeros(q, dtype=np.int64)
        members = np.zeros((2, (q - 1) // 2), dtype=np.int64)
        for c in (0, 1):
            elems = np.flatnonzero((phi == (1 if c == 0 else -1)))
            rank[elems] = np.arange(len(elems))
            members[c] = elems
        self.rank = rank
        self.members = members

    def index(self, a, b):
        return (a - 1) * self.h + self.rank[b] - (b > a)

    def pair(self, idx):
        a = idx // self.h + 1
        r = idx % self.h
        r = r + (r >= self.rank[a])
        return a, self.members[self.cls[a], r]


def _successors(field: GF, ix: _NodeIndex) -> np.ndarray:
    q, h = field.q, ix.h
    n = (q - 1) * h
    succ = np.empty(n, dtype=np.int32 if n < 2**31 else np.int64)
    inv2 = field.inv_enc(field.integer(2).enc)
    phi, sqrt = field.phi_table, field.sqrt_table
    for lo in range(0, n, CHUNK):
        idx = np.arange(lo, min(n, lo + CHUNK), dtype=np.int64)
        a, b = ix.pair(idx)
        c = field.vmul(field.vadd(a, b), inv2)
        r = sqrt[field.vmul(a, b)]
        d = np.where(phi[c] == 1, r, field.vneg(r))
        # the step of an admissible pair is admissible; check cheaply anyway
        if np.any(r < 0) or np.any(c == 0) or np.any(c == d):
            raise AssertionError("AGM step left the admissible pairs")
        succ[lo : lo + len(idx)] = ix.index(c, d)
    return succ


def build_swarm(field: GF) -> Swarm:
    """Construct the full swarm of ``field`` and split it into jellyfish."""
    q = field.q
    if q == 3:
        empty = np.zeros(0, dtype=np.int32)
        return Swarm(field, empty, empty, np.zeros(0, dtype=bool), [])
    ix = _NodeIndex(field)
    succ = _successors(field, ix)
    n = len(succ)

    # pointer doubling: after k rounds jmp = succ^(2^k) and lab holds the
    # smallest index among the next 2^k nodes
    lab = np.arange(n, dtype=succ.dtype)
    jmp = succ.copy()
    span = 1
    while span < n:
        lab = np.minimum(lab, lab[jmp])
        jmp = jmp[jmp]
        span *= 2
    on_cycle = np.zeros(n, dtype=bool)
    on_cycle[jmp] = True
    cyc_root = lab[jmp]
    del lab, jmp

    roots, comp = np.unique(cyc_root, return_inverse=True)
    del cyc_root
    # first occurrence of each component is its smallest node
    _, first = np.unique(comp, return_index=True)
    order = np.argsort(first, kind="stable")
    rename = np.empty(len(roots), dtype=np.int64)
    rename[order] = np.arange(1, len(roots) + 1)
    component = rename[comp].astype(np.int32)
    del comp
    sizes = np.bincount(component, minlength=len(roots) + 1)
    cyc_lens = np.bincount(component[on_cycle], minlength=len(roots) + 1)
    swarm = Swarm(field, succ, component, on_cycle, [])
    for k in order:
        jid = int(rename[k])
        swarm.jellyfish.append(
            Jellyfish(
                id=jid,
                root=int(roots[k]),
                size=int(sizes[jid]),
                cycle_length=int(cyc_lens[jid]),
                swarm=swarm,
            )
        )
    return swarm


def check_structure(swarm: Swarm) -> list[str]:
    """Shape checks on a built swarm; returns a list of violations."""
    q, n = swarm.q, swarm.node_count
    problems = []
    if n != (q - 1) * (q - 3) // 2:
        problems.append(f"node count {n} != (q-1)(q-3)/2")
    if n == 0:
        return problems
    indeg = np.bincount(swarm.succ, minlength=n)
    if np.any(indeg[swarm.on_cycle] != 2):
        problems.append("cycle node with in-degree != 2")
    if np.any(indeg[~swarm.on_cycle] != 0):
        problems.append("off-cycle node with nonzero in-degree")
    if np.any(~swarm.on_cycle[swarm.succ[~swarm.on_cycle]]):
        problems.append("tentacle longer than one edge")
    for j in swarm.jellyfish:
        if j.size != 2 * j.cycle_length:
            problems.append(f"jellyfish {j.id}: size {j.size} != 2 * cycle {j.cycle_length}")
    for size, count in swarm.size_histogram.items():
        if (size * count) % (q - 1):
            problems.append(f"(q-1) does not divide {size} * N_{size} = {size * count}")
    return problems


@dataclass
class SwarmStats:
    q: int
    node_count: int
    d: int
    histogram: dict[int, int]
    min_size: int
    max_size: int
    divisibility_ok: bool


def swarm_stats(swarm: Swarm) -> SwarmStats:
    hist = swarm.size_histogram
    sizes = list(hist) or [0]
    return SwarmStats(
        q=swarm.q,
        node_count=swarm.node_count,
        d=swarm.d,
        histogram=hist,
        min_size=min(sizes),
        max_size=max(sizes),
        divisibility_ok=all(n * c % (swarm.q - 1) == 0 for n, c in hist.items()),
    )

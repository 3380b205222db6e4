"""DOT and JSON renderings of a swarm."""

from __future__ import annotations

import json

import numpy as np

from .swarm import Swarm

SCHEMA = 1


def _pairs(swarm: Swarm, idx) -> list[list[int]]:
    a, b = swarm.pairs(idx)
    return [[int(x), int(y)] for x, y in zip(a, b)]


def to_dot(swarm: Swarm) -> str:
    """One digraph; node ids are ``a_b`` and cycle nodes are double circles."""
    n = swarm.node_count
    idx = np.arange(n)
    a, b = swarm.pairs(idx)
    sa, sb = swarm.pairs(swarm.succ)
    F = swarm.field
    lines = [
        f"// F_{F.q}: p={F.p} m={F.m} modulus={list(F.modulus)}",
        f'digraph "swarm_{F.q}" {{',
    ]
    for i in range(n):
        attrs = f'label="({a[i]},{b[i]})"'
        if swarm.on_cycle[i]:
            attrs += ", shape=doublecircle"
        lines.append(f'  "{a[i]}_{b[i]}" [{attrs}];')
    for i in range(n):
        lines.append(f'  "{a[i]}_{b[i]}" -> "{sa[i]}_{sb[i]}";')
    lines.append("}")
    return "\n".join(lines) + "\n"


def curve_summaries(F, lambdas) -> list[dict]:
    """``{lambda, j, N, trace, n1, n2}`` for each Legendre parameter."""
    from .legendre import ENUMERATION_BOUND, LegendreCurve, group_structure, j_invariant, point_count

    out = []
    for lam in lambdas:
        E = LegendreCurve(F, F(int(lam)))
        N = point_count(E)
        row = {"lambda": int(lam), "j": j_invariant(E).enc, "N": N, "trace": F.q + 1 - N}
        if F.q <= ENUMERATION_BOUND:
            g = group_structure(E)
            row.update(n1=g.n1, n2=g.n2)
        out.append(row)
    return out


def to_json_obj(swarm: Swarm) -> dict:
    nodes_a, nodes_b = swarm.pairs(np.arange(swarm.node_count))
    succ_a, succ_b = swarm.pairs(swarm.succ)
    nodes = [
        {"a": int(a), "b": int(b), "succ": [int(c), int(d)]}
        for a, b, c, d in zip(nodes_a, nodes_b, succ_a, succ_b)
    ]
    jellyfish = []
    for jf in swarm.jellyfish:
        entry = {
            "id": jf.id,
            "size": jf.size,
            "cycle": _pairs(swarm, jf.cycle_nodes),
            "tentacles": _pairs(swarm, jf.tentacle_nodes),
        }
        if jf.trace is not None:
            entry["trace"] = jf.trace
        if jf.group is not None:
            entry["group"] = jf.group.to_json()
        if jf.lambdas is not None:
            entry["curves"] = curve_summaries(swarm.field, jf.lambdas)
        jellyfish.append(entry)
    return {
        "schema": SCHEMA,
        "field": swarm.field.to_json(),
        "d": swarm.d,
        "nodes": nodes,
        "jellyfish": jellyfish,
    }


def to_json(swarm: Swarm) -> str:
    return json.dumps(to_json_obj(swarm), separators=(",", ":")) + "\n"

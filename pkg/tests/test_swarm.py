import json

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from agm_jellyfish import make_field
from agm_jellyfish.export import to_dot, to_json_obj
from agm_jellyfish.swarm import (
    NotAdmissible,
    agm_step,
    build_swarm,
    check_structure,
    is_admissible,
    orbit,
    pair,
    parents,
    scale,
    swarm_stats,
)

F7_CYCLE = [(1, 2), (5, 3), (4, 1), (6, 5), (2, 4), (3, 6)]


def test_admissibility_f7():
    F = make_field(7)
    assert is_admissible(F(1), F(2))
    assert not is_admissible(F(1), F(1))
    assert not is_admissible(F(1), F(3))
    assert not is_admissible(F(0), F(2))
    with pytest.raises(NotAdmissible):
        pair(F, 1, 6)


def test_agm_step_f7():
    F = make_field(7)
    assert agm_step(pair(F, 1, 2)).key == (5, 3)
    assert agm_step(pair(F, 6, 3)).key == (1, 2)
    assert agm_step(pair(F, 5, 3)).key == (4, 1)


def test_f7_orbit():
    pre, cyc = orbit(pair(make_field(7), 1, 2))
    assert pre == []
    assert [p.key for p in cyc] == F7_CYCLE


def test_parents_f7():
    F = make_field(7)
    ps = {p.key for p in parents(pair(F, 1, 2))}
    assert (6, 3) in ps and len(ps) == 2
    assert parents(pair(F, 6, 3)) == []


@pytest.mark.parametrize("q", [7, 11, 19, 23, 27, 31])
def test_parent_counts(q):
    F = make_field(*((3, 3) if q == 27 else (q,)))
    sw = build_swarm(F)
    for i, p in enumerate(sw.nodes()):
        assert len(parents(p)) == (2 if sw.on_cycle[i] else 0)


def test_scale():
    F = make_field(7)
    v = pair(F, 1, 2)
    assert scale(v, F(1)) == v
    assert scale(v, F(3)).key == (3, 6)
    with pytest.raises(ValueError):
        scale(v, F(0))


@pytest.mark.parametrize("q", [7, 11, 19, 23, 27, 31])
def test_scaling_equivariance(q):
    F = make_field(*((3, 3) if q == 27 else (q,)))
    sw = build_swarm(F)
    nodes = list(sw.nodes())
    for alpha in F.elements():
        if not alpha:
            continue
        for v in nodes:
            assert agm_step(scale(v, alpha)) == scale(agm_step(v), alpha)


@pytest.mark.parametrize("p,m", [(7, 1), (19, 1), (3, 3), (43, 1), (67, 1)])
def test_well_defined_scalar_path(p, m):
    # the vectorised successor table agrees with agm_step
    sw = build_swarm(make_field(p, m))
    nodes = list(sw.nodes())
    for i, v in enumerate(nodes):
        assert sw.index(agm_step(v)) == sw.succ[i]


def test_f19_swarm():
    sw = build_swarm(make_field(19))
    assert sw.node_count == 144 and sw.d == 8
    assert sorted(jf.cycle_length for jf in sw.jellyfish) == [6] * 6 + [18] * 2
    stats = swarm_stats(sw)
    assert stats.histogram == {12: 6, 36: 2}
    assert check_structure(sw) == []


def test_q3_is_empty():
    sw = build_swarm(make_field(3))
    assert sw.node_count == 0 and sw.d == 0


def test_index_roundtrip():
    sw = build_swarm(make_field(3, 3))
    for i in range(sw.node_count):
        assert sw.index(sw.pair(i)) == i
    keys = [p.key for p in sw.nodes()]
    assert keys == sorted(keys)


@settings(max_examples=50, deadline=None)
@given(st.sampled_from([11, 19, 43, 67]), st.data())
def test_orbit_cycle_length_is_component_invariant(q, data):
    sw = build_swarm(make_field(q))
    i = data.draw(st.integers(0, sw.node_count - 1))
    jf = sw.jellyfish_of(sw.pair(i))
    _, cyc = orbit(sw.pair(i))
    assert len(cyc) == jf.cycle_length
    assert {sw.index(p) for p in cyc} == set(jf.cycle_nodes.tolist())


def test_jellyfish_ordering_and_cycle_start():
    sw = build_swarm(make_field(23))
    firsts = [int(jf.nodes.min()) for jf in sw.jellyfish]
    assert firsts == sorted(firsts)
    for jf in sw.jellyfish:
        assert jf.cycle_nodes[0] == jf.cycle_nodes.min()
        assert len(jf.tentacle_nodes) == jf.cycle_length


def test_dot_export():
    sw = build_swarm(make_field(7))
    dot = to_dot(sw)
    assert dot.count("->") == 12
    assert dot.count("doublecircle") == 6
    assert '"6_3" -> "1_2"' in dot
    assert '"1_2" [label="(1,2)", shape=doublecircle]' in dot


def test_json_export_roundtrip():
    sw = build_swarm(make_field(19))
    obj = json.loads(json.dumps(to_json_obj(sw)))
    assert obj["d"] == 8 and len(obj["nodes"]) == 144
    succ = {(n["a"], n["b"]): tuple(n["succ"]) for n in obj["nodes"]}
    for jf in obj["jellyfish"]:
        cyc = [tuple(p) for p in jf["cycle"]]
        for u, v in zip(cyc, cyc[1:] + cyc[:1]):
            assert succ[u] == v
        for t in jf["tentacles"]:
            assert succ[tuple(t)] in cyc


def test_check_structure_detects_damage():
    sw = build_swarm(make_field(11))
    sw.succ = sw.succ.copy()
    sw.succ[0] = sw.succ[1] if sw.succ[1] != sw.succ[0] else sw.succ[2]
    assert check_structure(sw)

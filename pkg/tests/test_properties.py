from math import comb

import numpy as np
from hypothesis import given
from hypothesis import strategies as st

import oracles
from hntcodes.codes import Code, format_code, parse_code
from hntcodes.groups import AutElement, AutGroup, apply, compose, invert
from hntcodes.hamming import HammingScheme, distance
from hntcodes.regularity import design_identities, distance_partition, exhaustive_distances, weight_design

schemes = st.sampled_from([(3, 2), (5, 2), (8, 2), (3, 3), (4, 3), (3, 4), (2, 5)]).map(lambda t: HammingScheme(*t))


@st.composite
def vertices(draw, sch, n=1):
    return [sch.vertex(draw(st.lists(st.integers(0, sch.q - 1), min_size=sch.m, max_size=sch.m))) for _ in range(n)]


@st.composite
def elements(draw, sch):
    sigma = draw(st.permutations(range(sch.m)))
    h = [tuple(draw(st.permutations(range(sch.q)))) for _ in range(sch.m)]
    return AutElement(tuple(h), tuple(sigma))


@st.composite
def scheme_and_vertices(draw, n):
    sch = draw(schemes)
    return sch, draw(vertices(sch, n))


@st.composite
def codes(draw, max_m=6):
    sch = HammingScheme(draw(st.integers(1, max_m)), draw(st.sampled_from([2, 3])))
    idx = draw(st.sets(st.integers(0, sch.size - 1), min_size=1, max_size=min(12, sch.size)))
    return Code(sch, sorted(idx))


@given(scheme_and_vertices(3))
def test_metric_axioms(data):
    _, (a, b, c) = data
    assert distance(a, a) == 0
    assert distance(a, b) == distance(b, a) == oracles.hamming(a.symbols, b.symbols)
    assert (distance(a, b) == 0) == (a == b)
    assert distance(a, c) <= distance(a, b) + distance(b, c)


@given(st.data())
def test_action_is_isometric_homomorphism(data):
    sch = data.draw(schemes)
    x, y = data.draw(elements(sch)), data.draw(elements(sch))
    a, b = data.draw(vertices(sch, 2))
    assert distance(apply(x, a), apply(x, b)) == distance(a, b)
    assert apply(compose(x, y), a) == apply(y, apply(x, a))
    assert apply(invert(x), apply(x, a)) == a


@given(st.data())
def test_orbit_stabiliser(data):
    sch = HammingScheme(*data.draw(st.sampled_from([(3, 2), (4, 2), (5, 2), (3, 3)])))
    gens = [data.draw(elements(sch)) for _ in range(data.draw(st.integers(1, 2)))]
    g = AutGroup(sch, gens)
    (v,) = data.draw(vertices(sch))
    labels = g.vertex_orbit_labels()
    orbit = int((labels == labels[v.index]).sum())
    assert g.vertex_stabilizer(v).order * orbit == g.order
    assert g.kernel().order * g.on_entries().order == g.order
    i = data.draw(st.integers(0, sch.m - 1))
    assert g.entry_stabilizer(i).order * len(g.on_entries().orbit(i)) == g.order


@given(codes(max_m=8))
def test_bfs_matches_exhaustive(code):
    part = distance_partition(code)
    assert np.array_equal(part.distances, exhaustive_distances(code))
    assert part.sizes[0] == len(code)


@given(codes())
def test_code_file_round_trip(code):
    assert parse_code(format_code(code)) == code


@given(st.integers(2, 7), st.sampled_from([2, 3]), st.data())
def test_complete_weight_class_is_design(m, q, data):
    k = data.draw(st.integers(1, m))
    s = data.draw(st.integers(1, min(k, 2)))
    sch = HammingScheme(m, q)
    words = [w for w in oracles.all_words(m, q) if sum(1 for x in w if x) == k]
    d = weight_design(Code(sch, words + [(0,) * m]), k, s)
    assert d.lam == comb(m - s, k - s) * (q - 1) ** (k - s)
    ident = design_identities(s, m, k, d.lam, q)
    assert ident.b == d.b == comb(m, k) * (q - 1) ** k
    assert ident.r == d.r

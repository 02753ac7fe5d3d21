"""Worked examples for each module, with hand-derivable values."""

import random
from itertools import combinations

import numpy as np
import pytest

import oracles
from hntcodes.certify import classify_2nt, nt_level, verify_subgroup
from hntcodes.codes import Code, LinearCode, dual, paley_matrix_12, repetition_code, singleton_check, subspace_embed
from hntcodes.groups import AutElement, AutGroup, apply, diag_group, full_group, generate, orbits, top_group, translation_group
from hntcodes.hamming import HammingScheme, distance, enumerate_vertices, project, sphere, sphere_size, support_diff
from hntcodes.perm import cyclic_group, minimal_block, symmetric_group, transitivity_profile
from hntcodes.regularity import design_identities, distance_partition, s_regularity, weight_design


def test_hamming_examples():
    s4 = HammingScheme(4, 2)
    assert distance(s4.vertex((0, 1, 1, 0)), s4.vertex((1, 1, 0, 0))) == 2
    assert distance(s4.vertex((0, 1, 1, 0)), s4.vertex((0, 1, 1, 0))) == 0
    s11 = HammingScheme(11, 2)
    assert distance(s11.zero(), s11.constant(1)) == 11
    t = HammingScheme(4, 3)
    assert support_diff(t.vertex((0, 2, 0, 1))) == {1, 3}
    assert support_diff(t.vertex((0, 2, 0, 1)), t.vertex((0, 2, 0, 1))) == frozenset()
    assert support_diff(HammingScheme(2, 2).vertex((0, 1)), HammingScheme(2, 2).vertex((1, 1))) == {0}


def test_sphere_examples():
    assert sphere_size(12, 2, 2) == 66
    assert len(list(sphere(HammingScheme(12, 2).zero(), 2))) == 66
    assert len(list(sphere(HammingScheme(5, 3).zero(), 0))) == 1
    assert len(list(sphere(HammingScheme(5, 3).zero(), 1))) == 10


def test_projection_examples(family):
    t = HammingScheme(4, 3)
    assert project(t.vertex((0, 2, 0, 1)), [1, 3]).symbols == (2, 1)
    assert project(repetition_code(6, 3), [0, 4, 5]) == repetition_code(3, 3)
    for i, j in combinations(range(11), 2):
        assert len(project(family.punctured, [i, j])) == 4


def test_enumeration_examples():
    assert [v.symbols for v in enumerate_vertices(HammingScheme(2, 2))] == [(0, 0), (0, 1), (1, 0), (1, 1)]
    assert len(list(enumerate_vertices(HammingScheme(3, 2)))) == 8
    assert len(list(enumerate_vertices(HammingScheme(11, 2)))) == 2048


def test_repetition_examples():
    assert [str(w) for w in repetition_code(5)] == ["00000", "11111"]
    assert len(repetition_code(11)) == 2
    r = repetition_code(4, 3)
    assert len(r) == 3 and r.min_distance == 4


def test_hadamard_examples(family):
    rows = paley_matrix_12()
    first = family.hadamard.scheme.vertex(int(x == -1) for x in rows[0])
    assert first in family.hadamard
    assert first.support == {0, 1, 3, 4, 5, 9}
    dots = [int(rows[a] @ rows[b]) for a, b in combinations(range(12), 2)]
    assert len(dots) == 66 and set(dots) == {0}


def test_span_examples():
    assert LinearCode(2, 5, [(1,) * 5]) == repetition_code(5)
    zero = LinearCode(2, 3, [])
    assert [w.symbols for w in zero] == [(0, 0, 0)]
    c = LinearCode(2, 3, [(1, 1, 0), (0, 1, 1)])
    assert len(c) == 4 and c.min_distance == 2
    assert len(dual(zero)) == 8
    assert subspace_embed(2, 1, 5, [(1,) * 5]) == repetition_code(5)
    assert [w.symbols for w in subspace_embed(2, 2, 3, [])] == [(0, 0, 0)]


def test_translation_examples(family):
    one = family.punctured.scheme.constant(1)
    assert family.punctured.is_translation_invariant(one)
    assert not family.even.is_translation_invariant(one)
    assert family.even.is_translation_invariant(family.even.scheme.zero())


def test_singleton_examples(family):
    rep = singleton_check(family.punctured)
    assert (rep.size, rep.bound, rep.passed) == (24, 128, True)
    r = singleton_check(repetition_code(9))
    assert r.size == r.bound == 2 and r.passed


def test_element_examples():
    sch = HammingScheme(3, 2)
    a = sch.vertex((0, 1, 1))
    assert apply(AutElement.identity(3, 2), a) == a
    assert apply(AutElement.translation(sch.constant(1)), a).symbols == (1, 0, 0)
    assert apply(AutElement.top((1, 0, 2), 2), a).symbols == (1, 0, 1)


def test_generate_examples():
    d = diag_group([(1, 0)], 5)
    t = top_group([(1, 0, 2, 3, 4), (1, 2, 3, 4, 0)], 2)
    assert generate(d.elements_gens + t.elements_gens).order == 240
    assert generate([], scheme=HammingScheme(4, 2)).order == 1
    assert translation_group(repetition_code(11)).order == 2
    assert d.order == 2


def test_orbit_examples(aut_P, family):
    W = repetition_code(11)
    tw = translation_group(W)
    assert orbits(tw, W.words) == [list(W.words)]
    sch = HammingScheme(3, 2)
    assert orbits(AutGroup(sch), list(enumerate_vertices(sch))) == [[v] for v in enumerate_vertices(sch)]
    (orb,) = orbits(aut_P, family.punctured.words)
    assert len(orb) == 24


def test_transitivity_examples(aut_P):
    assert transitivity_profile(symmetric_group(11), 2) == (1, 1)
    x0 = aut_P.vertex_stabilizer(aut_P.scheme.zero())
    assert transitivity_profile(x0.on_entries(), 2) == (1, 1)
    assert transitivity_profile(cyclic_group(11), 2) == (10, 5)


def test_block_examples(aut_P, family):
    ind, idx = aut_P.on_vertices(family.punctured.words)
    pos = {p: k for k, p in enumerate(idx)}
    blk = minimal_block(ind, pos[0], pos[2047])
    assert {idx[k] for k in blk} == {0, 2047}
    assert minimal_block(symmetric_group(6), 2, 5) == list(range(6))
    g = AutGroup(HammingScheme(5, 2), diag_group([(1, 0)], 5).gens + top_group([(1, 2, 3, 4, 0)], 2).gens)
    ind, idx = g.on_vertices(repetition_code(5).words)
    assert minimal_block(ind, 0, 1) == [0, 1]


def test_stabiliser_examples(aut_P, aut_H):
    assert aut_P.vertex_stabilizer(aut_P.scheme.zero()).order == 660
    assert aut_H.vertex_stabilizer(aut_H.scheme.zero()).order == 190080 // 24 == 7920
    top = top_group([(1, 0, 2), (1, 2, 0)], 2)
    assert top.vertex_stabilizer(top.scheme.zero()).order == top.order


def test_alphabet_action_examples(aut_P):
    for i in range(11):
        assert aut_P.alphabet_action(i).order == 2
    assert top_group([(1, 0, 2)], 2).alphabet_action(2).order == 1
    assert diag_group([(1, 2, 0), (1, 0, 2)], 3).alphabet_action(0).order == 6


def test_translation_group_examples():
    W = repetition_code(11)
    tw = translation_group(W)
    assert tw.order == 2
    labels = tw.vertex_orbit_labels()
    assert set(np.nonzero(labels == labels[0])[0].tolist()) == W.index_set


def test_partition_examples(family):
    assert distance_partition(repetition_code(5)).rho == 2
    sch = HammingScheme(4, 2)
    assert distance_partition(Code(sch, range(16))).rho == 0
    part = distance_partition(family.punctured)
    assert sum(part.sizes) == 2048


def test_regularity_examples(family):
    assert s_regularity(family.punctured, 2).passed
    assert s_regularity(family.even, 2).passed and family.even.min_distance == 6
    rng = random.Random(0)
    sch = HammingScheme(11, 2)
    code = Code(sch, rng.sample(range(sch.size), 24))
    rep = s_regularity(code, min(2, distance_partition(code).rho))
    assert not rep.passed
    v = rep.violation
    words = [w.symbols for w in code]
    nu, ref = (tuple(int(c) for c in v[k]) for k in ("nu", "nu_ref"))
    assert oracles.profile(nu, words, 11)[v["k"]] != oracles.profile(ref, words, 11)[v["k"]]


def test_design_examples(family):
    assert weight_design(family.punctured, 6, 2).lam == 3
    assert weight_design(family.punctured, 5, 2).lam == 2
    d = weight_design(repetition_code(7), 7, 1)
    assert d.lam == 1 and d.b == 1


@pytest.mark.parametrize("lam", [1, 2, 5])
def test_design_identity_examples(lam):
    i = design_identities(2, 11, 6, 3)
    assert (i.b, i.r) == (11, 6)
    assert design_identities(2, 12, 5, lam).b * 5 == 3 * 11 * lam
    j = design_identities(2, 11, 5, 2)
    assert (j.b, j.r) == (11, 5)


def test_subgroup_examples(family):
    tw = translation_group(repetition_code(11))
    assert verify_subgroup(tw, family.punctured)
    assert not verify_subgroup(tw, family.even)
    assert verify_subgroup(AutGroup(family.even.scheme), family.even)


def test_classification_examples(family, aut_P, aut_H):
    assert classify_2nt(family.punctured, aut_P).label == "alphabet-affine"
    assert classify_2nt(family.hadamard, aut_H).label == "alphabet-affine"
    # the stabiliser of 0 meets K trivially but is not transitive on P
    x0 = aut_P.vertex_stabilizer(aut_P.scheme.zero())
    assert x0.kernel().order == 1
    assert nt_level(family.punctured, x0).level == -1
    assert classify_2nt(family.punctured, x0).label == "not-2nt"


def test_full_group_is_aut_of_whole_space():
    sch = HammingScheme(3, 3)
    assert full_group(sch).order == 6**3 * 6

import numpy as np
import pytest

import oracles
from hntcodes.codes import (
    STAR,
    Code,
    CodeFileError,
    LinearCode,
    dual,
    format_code,
    paley_matrix_12,
    parse_code,
    read_code,
    repetition_code,
    singleton_bound,
    singleton_check,
    subspace_embed,
    write_code,
)
from hntcodes.hamming import HammingScheme


def test_paley_first_row_uses_squares():
    mat = paley_matrix_12()
    sq = oracles.squares_mod(11)
    assert sq == {0, 1, 3, 4, 5, 9}
    assert [a for a in range(11) if mat[0, a] == -1] == sorted(sq)
    assert mat[0, STAR] == 1


def test_paley_rows_are_translates():
    mat = paley_matrix_12()
    for t in range(11):
        for a in range(11):
            assert mat[t, a] == mat[0, (a - t) % 11]
    assert (mat[11] == -1).all()


def test_hadamard_matrix_orthogonal():
    mat = paley_matrix_12()
    assert np.array_equal(mat @ mat.T, 12 * np.eye(12, dtype=np.int64))


def test_hadamard_code(family):
    H = family.hadamard
    words = [w.symbols for w in H]
    assert len(H) == 24
    assert oracles.min_distance(words) == H.min_distance == 6
    assert oracles.weight_distribution(words) == H.weight_distribution == {0: 1, 6: 22, 12: 1}
    assert {oracles.hamming(a, b) for a in words for b in words} == {0, 6, 12}


def test_punctured_code(family):
    P = family.punctured
    words = [w.symbols for w in P]
    assert (P.scheme.m, len(P)) == (11, 24)
    assert oracles.min_distance(words) == P.min_distance == 5
    assert P.weight_distribution == {0: 1, 5: 11, 6: 11, 11: 1}
    assert all(w[:STAR] in words for w in (h.symbols for h in family.hadamard))


def test_even_weight_subcode(family):
    E = family.even
    assert len(E) == 12
    assert all(w.weight % 2 == 0 for w in E)
    assert oracles.min_distance([w.symbols for w in E]) == E.min_distance == 6


@pytest.mark.parametrize("k,lam", [(6, 3), (5, 2)])
def test_punctured_weight_classes_are_designs(family, k, lam):
    blocks = [w.symbols for w in family.punctured if w.weight == k]
    assert len(blocks) == 11
    assert oracles.design_lambda(blocks, 11, 2, 2) == lam


@pytest.mark.parametrize("m,q", [(5, 2), (7, 2), (4, 3), (3, 4)])
def test_repetition_code(m, q):
    c = repetition_code(m, q)
    assert len(c) == q
    assert c.min_distance == m
    assert c.covering_radius == oracles_max(c)


def oracles_max(code):
    words = [w.symbols for w in code]
    return max(oracles.distances_to_code(words, code.scheme.m, code.scheme.q))


def test_min_distance_needs_two_words():
    sch = HammingScheme(3, 2)
    with pytest.raises(ValueError):
        Code(sch, [(0, 0, 0)]).min_distance


def test_code_dedup_and_sorting():
    sch = HammingScheme(3, 2)
    c = Code(sch, [(1, 1, 0), (0, 0, 1), 6, sch.vertex((0, 0, 1))])
    assert [w.symbols for w in c] == [(0, 0, 1), (1, 1, 0)]
    assert (1, 1, 0) in c and (1, 1, 1) not in c


def test_translation_closure():
    assert repetition_code(6).is_translation_closed
    sch = HammingScheme(3, 2)
    assert not Code(sch, [(0, 0, 0), (1, 1, 0), (0, 1, 1)]).is_translation_closed


def test_linear_code_and_dual():
    rep = LinearCode(2, 5, [(1, 1, 1, 1, 1)])
    d = dual(rep)
    assert d.dimension == 4 and len(d) == 16
    assert all(w.weight % 2 == 0 for w in d)
    assert d.min_distance == 2
    assert all(rep.inner(a, b) == 0 for a in rep for b in d)
    with pytest.raises(TypeError):
        dual(repetition_code(5))


def test_ternary_linear_code():
    c = LinearCode(3, 4, [(1, 0, 1, 2), (0, 1, 1, 1)])
    assert len(c) == 9
    words = [w.symbols for w in c]
    assert c.min_distance == oracles.min_distance(words) == 3


def test_linear_code_rejects_bad_input():
    with pytest.raises(ValueError):
        LinearCode(4, 3, [(1, 0, 0)])
    with pytest.raises(ValueError):
        LinearCode(3, 3, [(1, 0)])


def test_subspace_embed():
    c = subspace_embed(2, 2, 3, [(1, 1, 0, 0, 0, 0)])
    assert c.scheme == HammingScheme(3, 4)
    assert [w.symbols for w in c] == [(0, 0, 0), (3, 0, 0)]
    c2 = subspace_embed(2, 2, 2, [(1, 0, 1, 0), (0, 1, 0, 1)])
    assert [w.symbols for w in c2] == [(0, 0), (1, 1), (2, 2), (3, 3)]


def test_singleton():
    assert singleton_bound(5, 2, 5) == 2
    rep = singleton_check(repetition_code(5))
    assert rep.passed and rep.bound == 2
    lin = singleton_check(LinearCode(2, 5, [(1, 1, 1, 1, 1)]))
    assert lin.dimension == 1 and lin.dual_distance == 2 and lin.passed
    d = singleton_check(dual(LinearCode(2, 5, [(1, 1, 1, 1, 1)])))
    assert d.dual_distance == 5 and d.passed


def test_code_file_round_trip(tmp_path, family):
    path = tmp_path / "P.code"
    write_code(family.punctured, path)
    text = path.read_text()
    assert text.splitlines()[0] == "11 2"
    assert len(text.splitlines()) == 25
    assert read_code(path) == family.punctured
    assert not (tmp_path / "P.code.tmp").exists()


def test_parse_comments_and_blank_lines():
    c = parse_code("# a code\n3 3\n\n0 1 2  # first\n2 2 2\n")
    assert len(c) == 2 and c.scheme == HammingScheme(3, 3)
    assert parse_code(format_code(c)) == c


@pytest.mark.parametrize(
    "text,line,col",
    [
        ("", 1, 1),
        ("3\n", 1, 1),
        ("3 2\n0 1\n", 2, 1),
        ("3 2\n0 1 2\n", 2, 5),
        ("3 2\n0 a 1\n", 2, 3),
        ("3 6\n", 1, 1),
    ],
)
def test_parse_errors_carry_location(text, line, col):
    with pytest.raises(CodeFileError) as e:
        parse_code(text)
    assert (e.value.line, e.value.column) == (line, col)

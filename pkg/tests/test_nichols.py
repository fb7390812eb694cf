import itertools
import os
import random

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from nichols_super import nichols as N, weyl
from nichols_super.braiding import BraidingMatrix, block_sum, super_sign_matrix
from nichols_super.classify import match_family
from nichols_super.linalg import rank_cyclotomic, rank_cyclotomic_gauss
from nichols_super.scalars import CycLaurent, CycNumber, UnityScalar as U

from nichols_super.formats import parse_braiding

from support import SAMPLES, Z3, Z5, Z7, braiding_matrices, family_matrix, random_twist


def rank1(q):
    return BraidingMatrix.from_rows([[q]])


def words(theta, n):
    return [N.TensorElement.word(w) for w in itertools.product(range(theta), repeat=n)]


# --- braid group action -----------------------------------------------------

@given(braiding_matrices(3), st.integers(3, 5), st.data())
def test_braid_relations(B, n, data):
    w = data.draw(st.lists(st.integers(0, 2), min_size=n, max_size=n))
    x = N.TensorElement.word(w)
    for k in range(1, n - 1):
        assert N.apply_braid_word(B, [k, k + 1, k], x) == N.apply_braid_word(B, [k + 1, k, k + 1], x)
    for k, l in itertools.combinations(range(1, n), 2):
        if l - k >= 2:
            assert N.apply_braid_word(B, [k, l], x) == N.apply_braid_word(B, [l, k], x)


def test_generator_action_on_a_word():
    B = family_matrix("A", 2, {"q": Z5})
    img = N.braid_generator_action(B, 1, (0, 1))
    assert img == N.TensorElement.word((1, 0), CycLaurent.from_scalar(B[0, 1]))
    with pytest.raises(IndexError):
        N.braid_generator_action(B, 2, (0, 1))


def test_longest_element_of_s3():
    assert sorted(N.reduced_words((2, 1, 0))) == [[1, 2, 1], [2, 1, 2]]
    assert N.matsumoto_lift((2, 1, 0)) == [1, 2, 1]


@pytest.mark.parametrize("n", [2, 3, 4])
def test_reduced_words_are_reduced_and_correct(n):
    for perm in itertools.permutations(range(n)):
        inversions = sum(1 for a, b in itertools.combinations(perm, 2) if a > b)
        for w in N.reduced_words(perm):
            assert len(w) == inversions
            assert N.permutation_of_word(w, n) == perm


@settings(max_examples=15)
@given(braiding_matrices(2), st.integers(2, 4))
def test_matsumoto_lift_independent_of_reduced_word(B, n):
    for perm in itertools.permutations(range(n)):
        ws = N.reduced_words(perm)
        for x in words(2, n):
            ref = N.apply_braid_word(B, ws[0], x)
            assert all(N.apply_braid_word(B, w, x) == ref for w in ws[1:])


# --- symmetrizer routes -----------------------------------------------------

@settings(max_examples=15)
@given(braiding_matrices(2), st.integers(2, 4))
def test_factorized_symmetrizer_matches_defining_sum(B, n):
    for x in words(2, n):
        assert N.factorized_symmetrizer(B, x) == N.defining_symmetrizer(B, x)


@settings(max_examples=10)
@given(braiding_matrices(2), st.sampled_from([(1, 1), (2, 1), (1, 2), (2, 2), (3, 1)]))
def test_dense_symmetrizer_columns(B, content):
    ws, A, L = N.symmetrizer_matrix(B, content)
    blk = N.make_block(B, content)
    for j, w in enumerate(ws):
        col = N._dense_to_element(A[:, j:j + 1, :], blk)
        assert col == N.factorized_symmetrizer(B, N.TensorElement.word(w))


@settings(max_examples=10)
@given(braiding_matrices(2), st.sampled_from([(1, 1), (2, 1), (2, 2)]))
def test_rank_routes_agree(B, content):
    _, A, L = N.symmetrizer_matrix(B, content)
    assert rank_cyclotomic(A, L) == rank_cyclotomic_gauss(A, L)


# --- graded dimensions ------------------------------------------------------

def test_rank_one_minus_one():
    assert N.graded_dims(rank1(U(2, 1)), 2).text().splitlines()[-1] == "totals 1 1 0"


def test_rank_one_cube_root():
    table = N.graded_dims(rank1(Z3), 3)
    assert [table.total(n) for n in range(4)] == [1, 1, 1, 0]
    # the full S_3 symmetrizer kills x1^3 when q is a primitive cube root
    _, A, L = N.symmetrizer_matrix(rank1(Z3), (3,))
    assert rank_cyclotomic(A, L) == 0


@given(st.sampled_from([1, 2, 3, 4, 5, 6, 12]), st.integers(0, 11))
def test_square_of_a_letter_vanishes_iff_minus_one(n, k):
    q = U(n, k)
    assert (N.graded_dims(rank1(q), 2).dims[(2,)] == 0) == (q == U(2, 1))


def test_power_relation_witness():
    x2 = N.letter(0) ** 2
    assert N.verify_relation(rank1(U(2, 1)), x2).ok
    res = N.verify_relation(rank1(Z3), x2)
    assert res.ok is False
    expected = CycNumber.root(3, 0) + CycNumber.root(3, 1)
    assert res.witness == N.TensorElement.word((0, 0), CycLaurent.constant(expected))


@settings(max_examples=10)
@given(braiding_matrices(2), st.sampled_from([(0, 1), (1, 0), (1, 1)]))
def test_parity_argument_equals_signed_matrix(B, parity):
    a = N.graded_dims(B, 4, parity=parity).dims
    b = N.graded_dims(super_sign_matrix(B, parity), 4).dims
    assert a == b


HILBERT_CASES = [
    ("A", 2, {"q": Z5}, ()),
    ("A", 2, {"q": Z3}, (1,)),
    ("B-2", 2, {"q": Z7}, ()),
    ("B-3", 2, {"zeta": Z3}, (1,)),
]


@pytest.mark.parametrize("case", HILBERT_CASES, ids=lambda c: f"{c[0]}{c[1]}{c[3]}")
def test_hilbert_series_matches_root_product(case):
    B = family_matrix(*case)
    atlas = weyl.explore(B)
    oracle = N.hilbert_from_roots(B, weyl.positive_roots(atlas, 0), 5)
    assert N.graded_dims(B, 5).nonzero() == oracle


def test_threads_do_not_change_the_table():
    B = family_matrix("A", 3, {"q": Z5}, (1,))
    assert N.graded_dims(B, 4, threads=3).dims == N.graded_dims(B, 4).dims


@pytest.mark.parametrize("case", HILBERT_CASES[:2], ids=lambda c: f"{c[0]}{c[1]}{c[3]}")
def test_twisting_preserves_graded_dims(case):
    B = family_matrix(*case)
    ref = N.graded_dims(B, 5).dims
    rng = random.Random(7)
    for _ in range(3):
        assert N.graded_dims(random_twist(B, rng), 5).dims == ref


def test_caps():
    B = family_matrix("A", 2, {"q": Z5})
    with pytest.raises(N.CapExceeded):
        N.graded_dims(B, 9, degree_cap=8)
    with pytest.raises(N.CapExceeded):
        N.graded_dims(B, 6, block_cap=10)
    res = N.verify_relation(B, N.letter(0) ** 5, block_cap=0)
    assert res.ok is None and "cap" in res.reason


# --- root vectors -----------------------------------------------------------

def test_root_exponent_direct_sum():
    B = family_matrix("B-2", 2, {"q": Z7})
    q = B.entries
    direct = q[0][0] * (q[0][1] * q[1][0]) ** 2 * q[1][1] ** 4
    d = N.root_exponent(B, (1, 2))
    assert d.q_alpha == direct
    assert d.N_alpha == direct.order()


def test_root_exponent_generic_is_infinite():
    B = rank1(U.generic("q"))
    assert N.root_exponent(B, (1,)).N_alpha == float("inf")


def test_braided_commutator_of_letters():
    B = family_matrix("A", 2, {"q": Z5})
    got = N.braided_commutator(N.letter(0), N.letter(1), B)
    assert got == N.TensorElement.word((0, 1)) - N.TensorElement.word((1, 0), CycLaurent.from_scalar(B[0, 1]))


@given(braiding_matrices(3))
def test_nested_commutator_expansion(B):
    x1, x2, x3 = (N.letter(i) for i in range(3))
    inner = N.braided_commutator(x2, x3, B)
    got = N.braided_commutator(x1, inner, B)
    c = B.chi((1, 0, 0), (0, 1, 1))
    expected = x1 * x2 * x3 - (x1 * x3 * x2).scale(B[1, 2]) \
        - (x2 * x3 * x1).scale(c) + (x3 * x2 * x1).scale(c * B[1, 2])
    assert got == expected


def test_hyperletters():
    assert N.HyperletterBook("A", 3).u(1, 3).text() == "[x1, [x2, x3]_c]_c"
    assert N.HyperletterBook("B", 2).v(1, 2).text() == "[[x1, x2]_c, x2]_c"
    assert N.HyperletterBook("C", 3).w_tilde(1).text() == "[[x1, x2]_c, [x1, [x2, x3]_c]_c]_c"
    name, expr = N.HyperletterBook("B", 2).lookup((1, 2))
    assert name == "v1,2" and expr.degree(2) == (1, 2)
    with pytest.raises(KeyError):
        N.HyperletterBook("A", 2).lookup((2, 1))


@pytest.mark.parametrize("did,fam,theta,params", [
    ("A", "A", 3, {"q": Z7}), ("B-2", "B", 3, {"q": Z7}), ("C", "C", 3, {"q": Z7}),
    ("D-1", "D", 4, {"q": Z7}), ("D-2", "D", 4, {"q": Z7}),
])
def test_named_roots_cover_every_marking(did, fam, theta, params):
    # the book lists degrees for the whole family, so each marking uses a subset
    names = {deg for _, deg, _ in N.HyperletterBook(fam, theta).named_roots()}
    for marked in ((), (theta - 1,), (1, 2)):
        B = family_matrix(did, theta, params, marked)
        d = match_family(B)
        assert d.family == fam
        roots = weyl.positive_roots(weyl.explore(B.relabel(list(d.relabeling))), 0)
        assert set(roots) <= names


# --- relations --------------------------------------------------------------

def tags(rels):
    return sorted(r.tag for r in rels)


def test_cartan_a2_relations():
    B = family_matrix("A", 2, {"q": Z5})
    rels = N.relations_for(B, match_family(B))
    assert tags(rels) == ["power u1,2^5", "power x1^5", "power x2^5", "serre 1->2", "serre 2->1"]
    for r in rels:
        if r.degree <= 8:
            assert N.verify_relation(B, r.element).ok


def test_b1_relation_at_rank_two():
    B = family_matrix("B-3", 2, {"zeta": Z3}, (1,))
    rels = {r.tag: r for r in N.relations_for(B, match_family(B))}
    assert rels["B1"].content == (2, 3)
    assert N.verify_relation(B, rels["B1"].element).ok


def test_b1_family_minimal_powers():
    B = family_matrix("B-1", 2, {"q": Z5, "zeta": Z3})
    rels = N.relations_for(B, match_family(B), minimal=True)
    powers = {r.content for r in rels if r.tag.startswith("power")}
    assert powers == {(5, 0), (0, 3), (15, 30)}


def test_minimal_drops_odd_root_squares():
    B = family_matrix("A", 3, {"q": Z5}, (1,))
    d = match_family(B)
    full, small = tags(N.relations_for(B, d)), tags(N.relations_for(B, d, minimal=True))
    assert set(full) - set(small) == {"power u1,2^2", "power u1,3^2"}


def test_relations_verify_on_a_relabeled_input():
    B = family_matrix("A", 3, {"q": Z5}, (1,)).relabel([2, 0, 1])
    for r in N.presentation(B):
        if r.degree <= 6:
            assert N.verify_relation(B, r.element).ok, r.tag


def test_non_relation_fails():
    B = family_matrix("A", 2, {"q": Z5})
    res = N.verify_relation(B, N.letter(0) * N.letter(1))
    assert res.ok is False and not res.witness.is_zero()


def test_presentation_rejects_exceptional_types():
    with open(os.path.join(SAMPLES, "g3.braid")) as fh:
        bf = parse_braiding(fh.read())
    with pytest.raises(ValueError, match="no presentation"):
        N.presentation(bf.matrix)


def test_disconnected_presentation_has_commutators():
    B = block_sum(rank1(U(2, 1)), rank1(Z3))
    rels = N.presentation(B)
    assert {"serre 1->2", "serre 2->1"} <= set(r.tag for r in rels)
    for r in rels:
        assert N.verify_relation(B, r.element).ok, r.tag


def test_lazy_relation_element():
    B = family_matrix("A", 2, {"q": Z5})
    r = N.relations_for(B, match_family(B))[0]
    assert r._element is None
    assert r.element.content(2) == r.content
    assert np.all(np.array(r.content) >= 0)

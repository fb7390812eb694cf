"""Acceptance criteria 1-9.

Each test is named test_criterion_<n>_<what>; the conftest hook prints one
pass/fail line per criterion at the end of the run.  Run on its own with

    pytest tests/test_acceptance.py -v
"""
import itertools
import random
import time

import pytest

from nichols_super import nichols as N, superhopf as S, superroots as sr, weyl
from nichols_super.braiding import BraidingMatrix
from nichols_super.classify import DIAGRAM_IDS, classify_braiding, match_family
from nichols_super.formats import parse_braiding
from nichols_super.scalars import UnityScalar as U

from support import SAMPLES, Z3, Z5, Z7, family_matrix, random_twist


def symmetric_form(B):
    """Twist-equivalent matrix with q_ij = q_ji; a Cartan-type atlas then has one object."""
    rows = [list(r) for r in B.entries]
    for i, j in itertools.combinations(range(B.theta), 2):
        p = (B[i, j] * B[j, i]).reduced()
        rows[i][j] = rows[j][i] = U(2 * p.torsion_order, p.torsion_exp)
    return BraidingMatrix.from_rows(rows)


def contains_up_to_relabeling(sets, roots):
    theta = len(next(iter(roots)))
    return any(sr.permute_root_set(roots, p) in sets for p in itertools.permutations(range(theta)))


# --- 1: root counts ---------------------------------------------------------

def test_criterion_1_classical_root_counts():
    start = time.perf_counter()
    for theta in range(2, 7):
        for did, params, fam, count in (("A", {"q": Z5}, "A", theta * (theta + 1) // 2),
                                        ("B-2", {"q": Z7}, "B", theta ** 2)):
            atlas = weyl.explore(symmetric_form(family_matrix(did, theta, params)))
            assert atlas.complete and weyl.verify_root_system(atlas).ok
            roots = weyl.positive_roots(atlas, 0)
            assert len(roots) == count
            assert frozenset(roots) == sr.build_classical(fam, theta, (1,) * theta).positive_roots
    assert time.perf_counter() - start < 10


def test_criterion_1_d21_every_object_has_seven_roots():
    assert all(len(X.positive_roots) == 7 for X in sr.family_atlas("D21"))
    for did in ("D21-1", "D21-2"):
        atlas = weyl.explore(family_matrix(did, 3, {"q": Z7, "r": Z7 ** 2, "s": Z7 ** 4}))
        assert all(len(weyl.positive_roots(atlas, x)) == 7 for x in range(len(atlas.objects)))


def test_criterion_1_g3_listed_object():
    listed = sr.build_exceptional("G3").positive_roots
    assert len(listed) == 13
    atlas = weyl.explore(family_matrix("G3-1", 3, {"q": Z7}))
    assert contains_up_to_relabeling(weyl.distinct_positive_root_sets(atlas), listed)


def test_criterion_1_f4_corrected_object():
    corrected = sr.build_exceptional("F4", emended=True).positive_roots
    assert len(corrected) == 18
    for k in range(1, 7):
        atlas = weyl.explore(family_matrix(f"F4-{k}", 4, {"q": Z7}))
        assert contains_up_to_relabeling(weyl.distinct_positive_root_sets(atlas), corrected)


@pytest.mark.xfail(strict=True, reason="the 17 listed F(4) roots are not a root set of any object; "
                                       "the groupoid produces the corrected 18-root set")
def test_criterion_1_f4_listed_object():
    listed = sr.build_exceptional("F4").positive_roots
    assert len(listed) == 17
    atlas = weyl.explore(family_matrix("F4-1", 4, {"q": Z7}))
    assert contains_up_to_relabeling(weyl.distinct_positive_root_sets(atlas), listed)


# --- 2 and 3: classification soundness and reflection identities ------------

def family_instances():
    out = []
    for t in range(1, 5):
        for m in sorted({(), (1,), (t,)}):
            out.append(("A", t, {"q": Z5}, m))
    out.append(("B-1", 2, {"q": Z7, "zeta": Z3}, ()))
    for t in range(2, 5):
        for m in sorted({(), (1,), (t - 1,)}):
            out.append(("B-2", t, {"q": Z7}, m))
            out.append(("B-3", t, {"zeta": Z3}, m))
            out.append(("C", t, {"q": Z7}, m))
    for t in range(3, 6):
        for m in sorted({(), (1,), (t - 2,)}):
            out.append(("D-1", t, {"q": Z7}, m))
            out.append(("D-2", t, {"q": Z7}, m))
    for did in ("D21-1", "D21-2"):
        out.append((did, 3, {"q": Z7, "r": Z7 ** 2, "s": Z7 ** 4}, ()))
    out += [(f"F4-{k}", 4, {"q": Z7}, ()) for k in range(1, 7)]
    out += [(f"G3-{k}", 3, {"q": Z7}, ()) for k in range(1, 5)]
    return out


FAMILY_OF = {"A": "A", "B-1": "B", "B-2": "B", "B-3": "B", "C": "C", "D-1": "D", "D-2": "D",
             "D21-1": "D21", "D21-2": "D21"}


@pytest.fixture(scope="module")
def explored():
    """(instance, descriptor, atlas) for every family instance; built once for criteria 2 and 3."""
    out = []
    start = time.perf_counter()
    for inst in family_instances():
        B = family_matrix(*inst)
        (comp,) = classify_braiding(B)
        out.append((inst, comp.descriptor, weyl.explore(B)))
    return out, time.perf_counter() - start


def test_criterion_2_classification_soundness(explored):
    results, elapsed = explored
    assert len(results) > 60
    for (did, theta, params, marked), d, atlas in results:
        label = f"{did} theta={theta} marked={marked}"
        assert d is not None, label
        # boundary parameters can match several ids (C_2 = B_2, D_3 = A_3, ...);
        # the first in display order wins and names the family
        assert did in d.all_matches, label
        assert d.diagram_id == min(d.all_matches, key=DIAGRAM_IDS.index), label
        fam = FAMILY_OF.get(d.diagram_id, d.diagram_id.split("-")[0])
        assert (d.family, d.theta) == (fam, theta), label
        assert atlas.complete, label
        assert weyl.verify_root_system(atlas).ok, label
        assert d.crosscheck == "ok", f"{label}: {d.crosscheck}"
    assert elapsed < 60


def test_criterion_3_reflection_identities(explored):
    results, _ = explored
    edges = 0
    for inst, _, atlas in results:
        assert weyl.check_reflection_identities(atlas) == [], inst[:2]
        edges += len(atlas.morphisms)
    assert edges > 1000


# --- 4: presentations -------------------------------------------------------

PRESENTATION_CASES = [
    ("A", 3, {"q": Z5}, ()), ("A", 3, {"q": Z5}, (2,)), ("A", 3, {"q": Z3}, (1,)),
    ("B-2", 2, {"q": Z5}, ()), ("B-3", 2, {"zeta": Z3}, (1,)), ("B-1", 2, {"q": Z5, "zeta": Z3}, ()),
    ("B-2", 3, {"q": Z5}, ()), ("B-3", 3, {"zeta": Z3}, (2,)), ("B-3", 3, {"zeta": Z3}, (1, 2)),
    ("C", 3, {"q": Z5}, ()), ("C", 3, {"q": Z5}, (1, 2)), ("C", 3, {"q": Z3}, (1,)),
    ("C", 4, {"q": Z5}, (3,)),
    ("D-1", 4, {"q": Z5}, ()), ("D-1", 4, {"q": Z5}, (2,)), ("D-2", 4, {"q": Z3}, (3,)),
]


def test_criterion_4_relations_are_annihilated():
    start = time.perf_counter()
    special = set()
    checked = 0
    for inst in PRESENTATION_CASES:
        B = family_matrix(*inst)
        d = match_family(B)
        for minimal in (False, True):
            for r in N.relations_for(B, d, minimal=minimal):
                if r.degree > 8:
                    continue
                res = N.verify_relation(B, r.element)
                assert res.ok is True, f"{inst[:2]} {inst[3]} {r.tag}: {res.reason or res.witness}"
                checked += 1
                if not r.tag.startswith(("power", "serre")):
                    special.add(r.tag.split("(")[0])
    assert special == {"A", "B1", "B2", "C1", "C2", "C3", "D"}
    assert checked > 300
    assert time.perf_counter() - start < 600


# --- 5 and 7: Hilbert series and twist invariance ---------------------------

HILBERT_CASES = [
    ("A", 2, {"q": Z5}, ()),
    ("A", 2, {"q": Z3}, (1,)),
    ("B-2", 2, {"q": Z7}, ()),
    ("B-3", 2, {"zeta": Z3}, (1,)),
    ("A", 3, {"q": Z3}, (2,)),
    ("C", 3, {"q": Z3}, (1,)),
]


@pytest.mark.parametrize("inst", HILBERT_CASES, ids=lambda i: f"{i[0]}{i[1]}{''.join(map(str, i[3]))}")
def test_criterion_5_hilbert_series_oracle(inst):
    B = family_matrix(*inst)
    atlas = weyl.explore(B)
    oracle = N.hilbert_from_roots(B, weyl.positive_roots(atlas, 0), 6)
    table = N.graded_dims(B, 6)
    assert table.nonzero() == oracle


@pytest.mark.parametrize("inst", HILBERT_CASES, ids=lambda i: f"{i[0]}{i[1]}{''.join(map(str, i[3]))}")
def test_criterion_7_twist_invariance(inst):
    B = family_matrix(*inst)
    key = match_family(B).key()
    dims = N.graded_dims(B, 5).dims
    rng = random.Random(f"{inst[0]}{inst[1]}{inst[3]}")
    for _ in range(20):
        T = random_twist(B, rng)
        assert match_family(T).key() == key
        assert N.graded_dims(T, 5).dims == dims


# --- 6: symmetrizer ---------------------------------------------------------

def random_matrix(rng, theta, orders=(2, 3, 4, 5, 6)):
    return BraidingMatrix.from_rows([[U(n, rng.randrange(n)) for n in (rng.choice(orders) for _ in range(theta))]
                                     for _ in range(theta)])


def test_criterion_6_factorized_equals_defining():
    rng = random.Random(6)
    for _ in range(8):
        B = random_matrix(rng, 2)
        for n in (2, 3, 4):
            for w in itertools.product(range(2), repeat=n):
                x = N.TensorElement.word(w)
                assert N.factorized_symmetrizer(B, x) == N.defining_symmetrizer(B, x)
    B = random_matrix(rng, 3)
    for w in itertools.permutations(range(3)):
        x = N.TensorElement.word(w + (0,))
        assert N.factorized_symmetrizer(B, x) == N.defining_symmetrizer(B, x)


def test_criterion_6_braid_relations():
    rng = random.Random(7)
    for _ in range(10):
        B = random_matrix(rng, 3)
        for w in itertools.product(range(3), repeat=4):
            x = N.TensorElement.word(w)
            for k in (1, 2):
                assert N.apply_braid_word(B, [k, k + 1, k], x) == N.apply_braid_word(B, [k + 1, k, k + 1], x)
            assert N.apply_braid_word(B, [1, 3], x) == N.apply_braid_word(B, [3, 1], x)


def test_criterion_6_matsumoto_independence():
    rng = random.Random(8)
    for _ in range(2):
        B = random_matrix(rng, 3)
        for n in (2, 3, 4):
            for perm in itertools.permutations(range(n)):
                ws = N.reduced_words(perm)
                for w in itertools.product(range(3), repeat=n):
                    x = N.TensorElement.word(w)
                    ref = N.apply_braid_word(B, N.matsumoto_lift(perm), x)
                    assert all(N.apply_braid_word(B, r, x) == ref for r in ws)


# --- 8: Hopf superalgebras --------------------------------------------------

def test_criterion_8_exterior_bosonization():
    start = time.perf_counter()
    Hs = S.bosonize(S.exterior_algebra(1))
    assert Hs.dim == 4 and not any(Hs.parity)
    assert S.verify_super_hopf(Hs).ok
    one = Hs.one_scalar()
    assert Hs.comult[S.boson_index(1, 0)] == {(S.boson_index(1, 0), 0): one,
                                              (S.boson_index(0, 1), S.boson_index(1, 0)): one}
    assert time.perf_counter() - start < 10


def test_criterion_8_aeg_round_trips():
    start = time.perf_counter()
    for Hc in (S.sweedler(), S.group_algebra((2,)), S.group_algebra((2, 2)), S.bosonize(S.exterior_algebra(1))):
        u = Hc.grouplikes[1]
        Hsup, g = S.aeg_transform(Hc, u)
        back, u2 = S.aeg_transform(Hsup, g)
        assert back.same_structure(Hc) and u2 == u
    Hsup = S.super_sweedler()
    g = Hsup.grouplikes[1]
    Hc, u = S.aeg_transform(Hsup, g)
    again, g2 = S.aeg_transform(Hc, u)
    assert again.same_structure(Hsup) and g2 == g
    assert time.perf_counter() - start < 10


def test_criterion_8_biproduct_bosonization():
    start = time.perf_counter()
    for even in (True, False):
        R, RV, H = S.nichols_line(even)
        P = S.biproduct(R, RV, H)
        assert P.dim <= 8 and S.verify_super_hopf(P).ok
        lhs = S.bosonize(P)
        rhs = S.biproduct(S.include_braided_hopf(R), S.include_yd(RV, H), S.bosonize(H))
        assert lhs.same_structure(rhs)
    assert time.perf_counter() - start < 10


# --- 9: negative controls ---------------------------------------------------

def test_criterion_9_not_super_type():
    with open(f"{SAMPLES}/not_super.braid") as fh:
        B = parse_braiding(fh.read()).matrix
    assert [r.line() for r in classify_braiding(B)] == ["component {1,2} : not super type"]
    # Cartan type E6 at q = zeta_7 is finite but outside every super family
    E6 = [(0, 1), (1, 2), (2, 3), (3, 4), (2, 5)]
    rows = [[Z7 ** 2 if i == j else U(1, 0) for j in range(6)] for i in range(6)]
    for i, j in E6:
        rows[i][j] = Z7.inverse()
        rows[j][i] = U(1, 0)
    (comp,) = classify_braiding(BraidingMatrix.from_rows(rows))
    assert comp.descriptor is None


def test_criterion_9_dropped_sign_is_detected():
    rep = S.verify_super_hopf(S.exterior_algebra(1), super_sign=False)
    assert not rep.ok
    assert ("comult-multiplicative", (1, 1)) in [(f.axiom, f.witness) for f in rep.failures]


def test_criterion_9_mutilated_root_set():
    atlas = weyl.explore(family_matrix("B-2", 2, {"q": Z7}))
    assert weyl.verify_root_system(atlas).ok
    sets = list(atlas.root_sets())
    sets[0] = sets[0] - {(1, 1), (-1, -1)}
    atlas.roots = sets
    assert weyl.verify_root_system(atlas).by_axiom("axiom2")


if __name__ == "__main__":
    import sys
    sys.exit(pytest.main([__file__, "-v"]))

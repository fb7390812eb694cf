import pytest

from nichols_super import superhopf as S
from nichols_super.braiding import YDDatum, braiding_from_yd_datum, super_sign_matrix
from nichols_super.scalars import CycNumber, lcm

ZOO = {
    "kZ2": lambda: S.group_algebra((2,)),
    "kZ4": lambda: S.group_algebra((4,)),
    "kZ2xZ2": lambda: S.group_algebra((2, 2)),
    "ext1": lambda: S.exterior_algebra(1),
    "ext2": lambda: S.exterior_algebra(2),
    "sweedler": S.sweedler,
    "super_sweedler": S.super_sweedler,
}


def line(parity, action_sign, coaction_sigma):
    """One-dimensional YD supermodule over kZ/2 spanned by x."""
    action = {(0, 0): {0: 1}, (1, 0): {0: -1 if action_sign else 1}}
    coaction = {0: {(1 if coaction_sigma else 0, 0): 1}}
    return S.SuperModulePresentation(1, ("x",), (parity,), action, coaction)


@pytest.mark.parametrize("name", ZOO)
def test_zoo_passes_axioms(name):
    rep = S.verify_super_hopf(ZOO[name]())
    assert rep.ok, rep.text()


@pytest.mark.parametrize("name", ZOO)
def test_bosonization_is_an_ordinary_hopf_algebra(name):
    H = ZOO[name]()
    Hs = S.bosonize(H)
    assert Hs.dim == 2 * H.dim
    assert not any(Hs.parity)
    assert S.verify_super_hopf(Hs).ok
    assert len(Hs.grouplikes) == 2 * len(H.grouplikes)
    assert all(S.is_grouplike(Hs, g) for g in Hs.grouplikes)


@pytest.mark.parametrize("name", ZOO)
def test_sigma_squares_to_one_and_implements_parity(name):
    H = ZOO[name]()
    Hs = S.bosonize(H)
    sig = S.sigma_element(H)
    assert Hs.product(sig, sig) == Hs.unit
    for i in range(H.dim):
        b = Hs.basis(S.boson_index(i, 0))
        conj = Hs.product(Hs.product(sig, b), sig)
        sign = -1 if H.parity[i] else 1
        assert conj == {k: c * sign for k, c in b.items()}


def test_exterior_needs_the_sign():
    H = S.exterior_algebra(1)
    rep = S.verify_super_hopf(H, super_sign=False)
    assert not rep.ok
    assert rep.failures[0].axiom == "comult-multiplicative"
    assert rep.failures[0].witness == (1, 1)


def test_exterior_bosonization_coproduct():
    Hs = S.bosonize(S.exterior_algebra(1))
    assert Hs.labels == ("1#1", "1#s", "x1#1", "x1#s")
    one = Hs.one_scalar()
    # Delta(x#1) = x#1 (x) 1#1 + 1#s (x) x#1
    assert Hs.comult[2] == {(2, 0): one, (1, 2): one}


def test_even_group_algebra_bosonization_is_klein_four():
    Hs = S.bosonize(S.group_algebra((2,)))
    for i in range(4):
        assert S.is_grouplike(Hs, Hs.basis(i))
        for j in range(4):
            assert Hs.product(Hs.basis(i), Hs.basis(j)) == Hs.product(Hs.basis(j), Hs.basis(i))
            assert Hs.product(Hs.basis(i), Hs.basis(i)) == Hs.unit


def test_bosonize_rejects_broken_input():
    H = S.exterior_algebra(1)
    broken = S.SuperHopfPresentation(H.order, H.labels, (0, 0), H.mult, H.unit, H.comult, H.counit,
                                     H.antipode, H.grouplikes)
    with pytest.raises(ValueError):
        S.bosonize(broken)


# --- AEG correspondence -----------------------------------------------------

def test_aeg_sweedler_forward():
    sw = S.sweedler()
    Hs, g = S.aeg_forward(sw, {1: sw.one_scalar()})
    assert Hs.parity == (0, 0, 1, 1)
    one = Hs.one_scalar()
    assert Hs.comult[2] == {(2, 0): one, (0, 2): one}
    assert S.verify_super_hopf(Hs).ok
    assert Hs.same_structure(S.super_sweedler())


@pytest.mark.parametrize("name", ["sweedler", "kZ2"])
def test_aeg_round_trip(name):
    Hc = ZOO[name]()
    u = {1: Hc.one_scalar()}
    Hs, g = S.aeg_forward(Hc, u)
    back, u2 = S.aeg_backward(Hs, g)
    assert back.same_structure(Hc)
    assert u2 == u
    again, g2 = S.aeg_transform(back, u2)
    assert again.same_structure(Hs) and g2 == g


def test_aeg_trivial_grading_keeps_coproduct():
    kz = S.group_algebra((2,))
    Hs, _ = S.aeg_forward(kz, {1: kz.one_scalar()})
    assert Hs.parity == (0, 0) and Hs.comult == kz.comult


def test_aeg_rejects_bad_elements():
    sw = S.sweedler()
    with pytest.raises(ValueError, match="group-like"):
        S.aeg_forward(sw, {2: sw.one_scalar()})
    z4 = S.group_algebra((4,))
    with pytest.raises(ValueError, match="square"):
        S.aeg_forward(z4, {1: z4.one_scalar()})
    with pytest.raises(ValueError, match="parity"):
        S.aeg_backward(S.super_sweedler(), {0: sw.one_scalar()})


# --- supermodules -----------------------------------------------------------

def test_trivial_module_is_a_tensor_unit():
    H = S.super_sweedler()
    V = S.regular_module(H)
    T = S.trivial_module(H, with_coaction=False)
    assert S.check_module(H, V) == []
    assert S.same_module(S.tensor_supermodules(H, T, V), V)
    assert S.same_module(S.tensor_supermodules(H, V, T), V)


def test_exterior_acts_on_square_of_regular_module():
    H = S.exterior_algebra(1)
    V = S.regular_module(H)
    VV = S.tensor_supermodules(H, V, V)
    x = H.basis(1)
    # x.(x (x) x) = x^2 (x) x - x (x) x^2 = 0
    assert VV.act(x, {1 * 2 + 1: H.one_scalar()}) == {}
    assert S.check_module(H, VV) == []


@pytest.mark.parametrize("name", ["ext1", "super_sweedler", "kZ2"])
def test_tensor_product_is_associative(name):
    H = ZOO[name]()
    V = S.regular_module(H)
    W = S.trivial_module(H, with_coaction=False)
    left = S.tensor_supermodules(H, S.tensor_supermodules(H, V, W), V)
    right = S.tensor_supermodules(H, V, S.tensor_supermodules(H, W, V))
    assert S.same_module(left, right)


def test_tensor_rejects_non_modules():
    H = S.exterior_algebra(1)
    bad = S.SuperModulePresentation(1, ("v",), (0,), {(1, 0): {0: 1}})
    with pytest.raises(ValueError):
        S.tensor_supermodules(H, bad, bad)


# --- Yetter-Drinfeld supermodules -------------------------------------------

@pytest.mark.parametrize("action_sign,coaction_sigma,expected", [
    (False, False, -1), (True, False, -1), (False, True, -1), (True, True, 1),
])
def test_odd_line_braiding(action_sign, coaction_sigma, expected):
    H = S.group_algebra((2,))
    V = line(1, action_sign, coaction_sigma)
    assert S.verify_yd_compat(H, V).ok
    assert S.yd_braiding(H, V, V) == {(0, 0): {(0, 0): CycNumber(1, [expected])}}
    assert S.braid_relation_holds(H, V)


def test_even_line_with_trivial_coaction_is_the_flip():
    H = S.group_algebra((2,))
    V = line(0, True, False)
    assert S.yd_braiding(H, V, V) == {(0, 0): {(0, 0): CycNumber(1, [1])}}


def test_trivial_coaction_on_sign_module_fails_over_sweedler():
    sw = S.sweedler()
    V = S.SuperModulePresentation(1, ("v",), (0,), {(0, 0): {0: 1}, (1, 0): {0: -1}}, {0: {(0, 0): 1}})
    assert S.check_module(sw, V) == []
    rep = S.verify_yd_compat(sw, V)
    assert not rep.ok
    assert rep.failures[0].axiom == "yd-compatibility" and rep.failures[0].witness == (2, 0)


@pytest.mark.parametrize("datum", [
    YDDatum((3,), ((1,), (2,)), ((1,), (2,)), (1, 0)),
    YDDatum((2, 2), ((1, 0), (0, 1)), ((0, 1), (1, 1)), (1, 1)),
    YDDatum((4,), ((1,), (3,)), ((2,), (1,)), (0, 1)),
])
def test_datum_lift_matches_signed_matrix(datum):
    H, V = S.yd_module_from_datum(datum)
    assert S.verify_yd_compat(H, V).ok
    B, parity = braiding_from_yd_datum(datum)
    Q = super_sign_matrix(B, parity)
    c = S.yd_braiding(H, V, V)
    for i in range(datum.theta):
        for j in range(datum.theta):
            s = Q[i, j].reduced()
            L = lcm(H.order, s.torsion_order)
            ((key, got),) = c[(i, j)].items()
            assert key == (j, i)
            assert got.embed(L) == CycNumber.root(s.torsion_order, s.torsion_exp).embed(L)
    assert S.braid_relation_holds(H, V)


# --- biproducts -------------------------------------------------------------

def test_biproduct_over_trivial_hopf_algebra():
    R = S.exterior_algebra(1)
    k = S.group_algebra(())
    RV = S.SuperModulePresentation(1, R.labels, R.parity, {(0, a): {a: 1} for a in range(2)},
                                   {a: {(0, a): 1} for a in range(2)})
    P = S.biproduct(R, RV, k)
    assert P.dim == 2 and P.same_structure(R)


@pytest.mark.parametrize("even", [True, False])
def test_nichols_line_biproduct(even):
    R, RV, H = S.nichols_line(even)
    assert S.verify_braided_hopf(R, RV, H).ok
    P = S.biproduct(R, RV, H)
    assert P.dim == 4
    assert S.verify_super_hopf(P).ok
    assert P.parity == ((0, 0, 0, 0) if even else (0, 0, 1, 1))


@pytest.mark.parametrize("even", [True, False])
def test_bosonized_biproduct_equals_biproduct_with_bosonization(even):
    R, RV, H = S.nichols_line(even)
    lhs = S.bosonize(S.biproduct(R, RV, H))
    rhs = S.biproduct(S.include_braided_hopf(R), S.include_yd(RV, H), S.bosonize(H))
    assert S.verify_super_hopf(rhs).ok
    assert lhs.same_structure(rhs)


def test_even_nichols_line_biproduct_is_sweedler():
    R, RV, H = S.nichols_line(True)
    P = S.biproduct(R, RV, H)
    one = P.one_scalar()
    g, x, xg = P.basis(1), P.basis(2), P.basis(3)
    assert P.product(g, g) == P.unit
    assert P.product(x, x) == {}
    assert P.product(g, x) == {3: -one}
    assert P.product(x, g) == xg
    assert P.comult[2] == {(2, 0): one, (1, 2): one}

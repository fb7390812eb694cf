"""Shared builders and hypothesis strategies for the test modules."""
import os

from hypothesis import strategies as st

from nichols_super.braiding import BraidingMatrix
from nichols_super.classify import build_family_diagram, diagram_matrix
from nichols_super.scalars import CycNumber, UnityScalar

SAMPLES = os.path.join(os.path.dirname(__file__), os.pardir, "samples")

Z3, Z5, Z7 = UnityScalar(3, 1), UnityScalar(5, 1), UnityScalar(7, 1)


def family_matrix(diagram_id, theta, params, marked=()):
    return diagram_matrix(build_family_diagram(diagram_id, theta, params, marked))


def unity(orders=(1, 2, 3, 4, 5, 6, 12)):
    return st.builds(lambda n, k: UnityScalar(n, k), st.sampled_from(orders), st.integers(0, 11))


def cyc_numbers(order):
    return st.lists(st.integers(-4, 4), min_size=order, max_size=order).map(
        lambda cs: CycNumber.from_int_cyclic(order, cs))


def braiding_matrices(theta, orders=(2, 3, 4, 6)):
    return st.lists(unity(orders), min_size=theta * theta, max_size=theta * theta).map(
        lambda xs: BraidingMatrix.from_rows([xs[i * theta:(i + 1) * theta] for i in range(theta)]))


def random_twist(B, rng, orders=(2, 3, 4, 5, 6, 7)):
    """Apply a random cocycle twist on every pair: q_ij t, q_ji t^-1."""
    from nichols_super.braiding import twist
    for i in range(B.theta):
        for j in range(i + 1, B.theta):
            n = rng.choice(orders)
            B = twist(B, i, j, UnityScalar(n, rng.randrange(n)))
    return B

"""
Super root systems written down directly: types A, B, C, D from parity data and
D(2,1;alpha), F(4), G(3) from their listed objects.  These sets are independent of
the braiding and serve as ground truth for the Weyl groupoid computations.
"""
from __future__ import annotations

import dataclasses
import itertools
from collections import deque
from typing import Iterable, Sequence

from .weyl import (AtlasIncomplete, Vector, cartan_from_roots, is_positive, reflect_root_set,
                   root_set_text, unit_vector)

CLASSICAL = ("A", "B", "C", "D")
EXCEPTIONAL = ("D21", "F4", "G3")
FAMILIES = CLASSICAL + EXCEPTIONAL


def parity_value(p: Sequence[int], v: Sequence[int]) -> int:
    """The homomorphism Z^theta -> {+1, -1} determined by the simple parities."""
    odd = sum(c for c, s in zip(v, p) if s == -1)
    return -1 if odd % 2 else 1


def parity_from_bits(bits: Sequence[int]) -> tuple[int, ...]:
    return tuple(-1 if b % 2 else 1 for b in bits)


def parity_to_bits(p: Sequence[int]) -> tuple[int, ...]:
    return tuple(1 if s == -1 else 0 for s in p)


def parity_reflect(p: Sequence[int], i: int, row: Sequence[int]) -> tuple[int, ...]:
    """p^(alpha_k) = p(s_i alpha_k) = p(alpha_k) p(alpha_i)^{m_ik}, m_ik = -a_ik."""
    return tuple(s if k == i else s * (p[i] ** (-row[k] % 2)) for k, s in enumerate(p))


@dataclasses.dataclass(frozen=True)
class SuperRootFamily:
    family: str
    theta: int
    object_id: tuple
    positive_roots: frozenset

    def __post_init__(self):
        for v in self.positive_roots:
            if not is_positive(v):
                raise ValueError(f"root {v} is not positive")
        for i in range(self.theta):
            if unit_vector(self.theta, i) not in self.positive_roots:
                raise ValueError(f"simple root alpha_{i + 1} missing")

    @property
    def parity(self) -> tuple[int, ...] | None:
        return self.object_id if self.family in CLASSICAL else None

    def text(self) -> str:
        return root_set_text(self.positive_roots)


def _u(theta: int, i: int, j: int) -> Vector:
    """u_ij = alpha_i + ... + alpha_j, indices 1-based."""
    return tuple(1 if i <= k + 1 <= j else 0 for k in range(theta))


def _add(*vs: Vector) -> Vector:
    return tuple(sum(c) for c in zip(*vs))


def build_classical(family: str, theta: int, p: Sequence[int]) -> SuperRootFamily:
    if family not in CLASSICAL:
        raise ValueError(f"unknown classical family {family!r}")
    if theta < {"A": 1, "B": 2, "C": 2, "D": 3}[family] or len(p) != theta or any(s not in (1, -1) for s in p):
        raise ValueError(f"invalid rank or parity for type {family}")
    p = tuple(p)
    t = theta
    roots: set[Vector] = set()
    for i in range(1, t + 1):
        for j in range(i, t + 1):
            if family == "D" and (i, j) == (t - 1, t):
                continue
            roots.add(_u(t, i, j))
    if family == "B":
        roots |= {_add(_u(t, i, t), _u(t, j, t)) for i in range(1, t + 1) for j in range(i + 1, t + 1)}
    elif family == "C":
        roots |= {_add(_u(t, i, t), _u(t, j, t - 1)) for i in range(1, t) for j in range(i + 1, t)}
        roots |= {_add(_u(t, i, t - 1), _u(t, i, t)) for i in range(1, t)
                  if parity_value(p, _u(t, i, t - 1)) == 1}
    elif family == "D":
        if p[t - 2] == -1:
            roots.add(_add(unit_vector(t, t - 2), unit_vector(t, t - 1)))
        roots |= {_add(_u(t, i, t - 2), unit_vector(t, t - 1)) for i in range(1, t - 1)}
        roots |= {_add(_u(t, i, t), _u(t, j, t - 2)) for i in range(1, t - 1) for j in range(i + 1, t - 1)}
        roots |= {_add(_u(t, i, t), _u(t, i, t - 2)) for i in range(1, t - 1)
                  if parity_value(p, _u(t, i, t - 1)) == -1}
    return SuperRootFamily(family, t, p, frozenset(roots))


def _vecs(rows: Iterable[Sequence[int]]) -> frozenset:
    return frozenset(tuple(r) for r in rows)


_D21_X0 = _vecs([(1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 1, 0), (1, 0, 1), (0, 1, 1), (1, 1, 1)])

_F4 = _vecs([
    (1, 0, 0, 0), (1, 1, 0, 0), (1, 1, 1, 0), (1, 1, 2, 0), (1, 2, 1, 0),
    (1, 1, 1, 1), (1, 1, 2, 1), (1, 2, 2, 1),
    (1, 2, 3, 2), (0, 1, 1, 1), (0, 1, 2, 1), (0, 1, 1, 0),
    (0, 1, 2, 0), (0, 1, 0, 0), (0, 0, 1, 0), (0, 0, 1, 1), (0, 0, 0, 1)])

# The displayed F(4) set is not closed under its own reflections.  Replacing
# a1+2a2+a3 by a1+2a2+2a3 and adding a1+2a2+3a3+a4 gives an 18-root set whose
# reflection closure is exactly the groupoid's six root sets (coordinates reversed).
_F4_EMENDED = (_F4 - {(1, 2, 1, 0)}) | {(1, 2, 2, 0), (1, 2, 3, 1)}

_G3 = _vecs([
    (1, 0, 0), (1, 1, 0), (1, 1, 1), (1, 2, 1),
    (1, 3, 1), (1, 3, 2), (1, 4, 2),
    (0, 1, 0), (0, 1, 1), (0, 2, 1), (0, 3, 1), (0, 3, 2), (0, 0, 1)])


def _d21_object(k: int) -> frozenset:
    e = [unit_vector(3, j) for j in range(3)]
    top = (1, 1, 1)
    roots = set(e) | {top, _add(top, e[k - 1])}
    roots |= {_add(e[k - 1], e[j]) for j in range(3) if j != k - 1}
    return frozenset(roots)


def build_exceptional(family: str, obj: int = 0, emended: bool = False) -> SuperRootFamily:
    """The listed objects verbatim; ``emended`` swaps in the corrected F(4) set."""
    if family == "D21":
        if obj not in (0, 1, 2, 3):
            raise ValueError(f"D(2,1;alpha) has objects 0..3, got {obj}")
        return SuperRootFamily("D21", 3, (obj,), _D21_X0 if obj == 0 else _d21_object(obj))
    if family in ("F4", "G3"):
        if obj != 0:
            raise ValueError(f"only the listed object 0 of {family} is built directly")
        if family == "F4":
            return SuperRootFamily("F4", 4, (0,), _F4_EMENDED if emended else _F4)
        return SuperRootFamily("G3", 3, (0,), _G3)
    raise ValueError(f"unknown exceptional family {family!r}")


def root_reflection_closure(start: frozenset, cap: int = 10_000) -> list[frozenset]:
    """All positive root sets reachable from ``start`` by s_i read off the roots."""
    theta = len(next(iter(start)))
    seen = [start]
    index = {start}
    queue = deque([start])
    while queue:
        R = queue.popleft()
        for i in range(theta):
            S = reflect_root_set(R, i)
            if S not in index:
                if len(seen) >= cap:
                    raise AtlasIncomplete(f"root-set cap {cap} reached")
                index.add(S)
                seen.append(S)
                queue.append(S)
    return seen


def family_atlas(family: str, theta: int | None = None, p0: Sequence[int] | None = None,
                 cap: int = 10_000) -> list[SuperRootFamily]:
    """Objects reachable from the starting object.

    Classical families walk (root set, parity) pairs: the root set is moved by s_i
    and the parity by ``parity_reflect``.  Exceptional families start from the listed
    object and only the root sets are tracked.
    """
    if family in CLASSICAL:
        start = build_classical(family, theta, p0)
        seen = {(start.positive_roots, start.object_id): start}
        queue = deque([start])
        while queue:
            X = queue.popleft()
            for i in range(X.theta):
                row = [cartan_from_roots(X.positive_roots, i, j) for j in range(X.theta)]
                R = reflect_root_set(X.positive_roots, i)
                p = parity_reflect(X.object_id, i, row)
                key = (R, p)
                if key not in seen:
                    if len(seen) >= cap:
                        raise AtlasIncomplete(f"family atlas cap {cap} reached")
                    seen[key] = SuperRootFamily(family, X.theta, p, R)
                    queue.append(seen[key])
        return list(seen.values())
    if family in EXCEPTIONAL:
        start = build_exceptional(family, 0, emended=True)
        sets = root_reflection_closure(start.positive_roots, cap)
        return [SuperRootFamily(family, start.theta, (k,), R) for k, R in enumerate(sets)]
    raise ValueError(f"unknown family {family!r}")


def distinct_root_sets(objs: Iterable[SuperRootFamily]) -> set[frozenset]:
    return {X.positive_roots for X in objs}


def permute_root_set(roots: Iterable[Vector], perm: Sequence[int]) -> frozenset:
    """Rename coordinates: new coordinate k is old coordinate perm[k]."""
    return frozenset(tuple(v[perm[k]] for k in range(len(perm))) for v in roots)


def match_root_sets(groupoid_sets: set[frozenset], family_sets: set[frozenset],
                    preferred: Sequence[int] | None = None) -> tuple[int, ...] | None:
    """A coordinate permutation carrying the groupoid's root sets onto the family's."""
    theta = len(next(iter(next(iter(family_sets)))))
    candidates = itertools.permutations(range(theta))
    if preferred is not None:
        candidates = itertools.chain([tuple(preferred)], candidates)
    for perm in candidates:
        if {permute_root_set(R, perm) for R in groupoid_sets} == family_sets:
            return tuple(perm)
    return None


def root_counts() -> dict[str, int]:
    return {"D21": len(_D21_X0), "F4": len(_F4), "G3": len(_G3)}

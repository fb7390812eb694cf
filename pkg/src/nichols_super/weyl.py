"""
Weyl groupoid of a diagonal braiding.

Objects are braiding matrices reached from the seed by reflections; two objects are
the same exactly when their matrices are equal.  Each object also remembers one
ordered basis of Z^theta (in seed coordinates) that realizes it, found along the BFS
tree.  Root sets are computed as the closure of the simple roots under the
reflection morphisms, i.e. the real roots.
"""
from __future__ import annotations

import dataclasses
import enum
import math
from collections import deque
from typing import Iterable, Sequence

import numpy as np

from .braiding import BraidingMatrix, dynkin_of
from .scalars import ONE, UnityScalar, lcm, q_number

Vector = tuple[int, ...]


class UndefinedReflection(ValueError):
    pass


class AtlasIncomplete(RuntimeError):
    pass


def unit_vector(theta: int, i: int) -> Vector:
    return tuple(1 if k == i else 0 for k in range(theta))


def _det(m: list[list[int]]) -> int:
    # integer Bareiss
    a = [list(r) for r in m]
    n = len(a)
    sign, prev = 1, 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for r in range(k + 1, n):
                if a[r][k]:
                    a[k], a[r] = a[r], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[-1][-1]


@dataclasses.dataclass(frozen=True)
class GroupoidObject:
    """A point of the groupoid: q-matrix plus the basis (columns, seed coordinates)."""

    q_matrix: BraidingMatrix
    base: tuple[Vector, ...]
    parity: tuple[int, ...] | None = None

    def __post_init__(self):
        if abs(_det([list(col) for col in self.base])) != 1:
            raise ValueError("object basis must be unimodular")

    @classmethod
    def seed(cls, B: BraidingMatrix, parity: Sequence[int] | None = None) -> GroupoidObject:
        return cls(B, tuple(unit_vector(B.theta, i) for i in range(B.theta)),
                   None if parity is None else tuple(parity))

    @property
    def theta(self) -> int:
        return self.q_matrix.theta

    def key(self):
        return self.q_matrix.entries

    def consistent_with(self, seed: BraidingMatrix) -> bool:
        n = self.theta
        return all(seed.chi(self.base[i], self.base[j]) == self.q_matrix.entries[i][j]
                   for i in range(n) for j in range(n))


def default_cartan_cap(theta: int) -> int:
    return 8 * theta


def cartan_entry(F: GroupoidObject | BraidingMatrix, i: int, j: int, cap: int | None = None) -> int | None:
    """-min{n >= 0 : (n+1)_{q_ii} (1 - q_ii^n q_ij q_ji) = 0}; ``None`` if no n <= cap works."""
    B = F.q_matrix if isinstance(F, GroupoidObject) else F
    if i == j:
        return 2
    cap = default_cartan_cap(B.theta) if cap is None else cap
    qii = B.entries[i][i]
    e = B.edge(i, j)
    power = ONE
    for n in range(cap + 1):
        if q_number(n + 1, qii).zero or (power * e).is_one():
            return -n
        power = power * qii
    return None


def cartan_row(F, i: int, cap: int | None = None) -> list[int | None]:
    B = F.q_matrix if isinstance(F, GroupoidObject) else F
    return [cartan_entry(B, i, j, cap) for j in range(B.theta)]


def reflected_matrix(B: BraidingMatrix, i: int, row: Sequence[int]) -> BraidingMatrix:
    """q'_jk = chi(f_j - a_ij f_i, f_k - a_ik f_i), expanded bilinearly."""
    n = B.theta
    q = B.entries
    m = [-a if j != i else None for j, a in enumerate(row)]
    out = [[None] * n for _ in range(n)]
    for j in range(n):
        for k in range(n):
            if j == i and k == i:
                val = q[i][i]
            elif j == i:
                # chi(-f_i, f_k + m_k f_i)
                val = (q[i][k] * q[i][i] ** m[k]).inverse()
            elif k == i:
                val = (q[j][i] * q[i][i] ** m[j]).inverse()
            else:
                val = q[j][k] * q[j][i] ** m[k] * q[i][k] ** m[j] * q[i][i] ** (m[j] * m[k])
            out[j][k] = val
    return BraidingMatrix.from_rows(out, B.constraints)


def reflect(F: GroupoidObject, i: int, cap: int | None = None) -> GroupoidObject:
    row = cartan_row(F, i, cap)
    if any(a is None for a in row):
        raise UndefinedReflection(f"Cartan entry a_{i + 1}j undefined")
    newq = reflected_matrix(F.q_matrix, i, row)
    fi = F.base[i]
    # f_j - a_ij f_i, which gives -f_i at j = i
    base = tuple(tuple(x - row[j] * y for x, y in zip(fj, fi)) for j, fj in enumerate(F.base))
    parity = F.parity
    if parity is not None:
        from .superroots import parity_reflect
        parity = parity_reflect(parity, i, row)
    return GroupoidObject(newq, base, parity)


def reflect_vector(v: Sequence[int], i: int, row: Sequence[int]) -> Vector:
    """s_i(v) with s_i(alpha_j) = alpha_j - a_ij alpha_i."""
    out = list(v)
    out[i] = -v[i] - sum(row[j] * v[j] for j in range(len(v)) if j != i)
    return tuple(out)


class AtlasStatus(enum.Enum):
    COMPLETE = "complete"
    CAP_EXCEEDED = "cap_exceeded"
    REFLECTION_UNDEFINED = "reflection_undefined"


@dataclasses.dataclass
class GroupoidAtlas:
    seed: BraidingMatrix
    objects: list[GroupoidObject]
    cartan: list[list[list[int | None]]]
    morphisms: list[tuple[int, int, int]]
    paths: list[tuple[int, ...]]
    status: AtlasStatus
    detail: str = ""
    root_cap: int = 10_000
    roots: list[frozenset[Vector]] | None = None  # full root sets (both signs), lazily
    kernel: object = None
    exponents: list | None = None

    def target(self, x: int, i: int) -> int:
        return self._targets[(x, i)]

    def __post_init__(self):
        self._targets = {(s, i): t for s, i, t in self.morphisms}

    @property
    def theta(self) -> int:
        return self.seed.theta

    @property
    def complete(self) -> bool:
        return self.status is AtlasStatus.COMPLETE

    def root_sets(self) -> list[frozenset[Vector]]:
        if self.roots is None:
            self.roots = _real_roots(self)
        return self.roots


class ExponentKernel:
    """Integer model of the subgroup of scalars generated by the seed entries.

    Every entry is zeta_L^a * prod(name^e), stored as the vector (a mod L, e...).
    chi is bilinear, so the matrix of an object with basis columns F is F^T E F
    computed on exponent vectors.
    """

    def __init__(self, seed: BraidingMatrix):
        self.theta = seed.theta
        flat = [s for row in seed.entries for s in row]
        self.L = lcm(*(s.reduced().torsion_order for s in flat))
        self.names = sorted({n for s in flat for n, _ in s.generic_exps})
        self.E = np.array([[self.vec(s) for s in row] for row in seed.entries], dtype=np.int64)

    def vec(self, s: UnityScalar) -> list[int]:
        a = s.phase * self.L
        if a.denominator != 1:
            raise ValueError("scalar outside the kernel's torsion subgroup")
        g = s.generics
        return [int(a) % self.L] + [g.get(n, 0) for n in self.names]

    def scalar(self, v: Sequence[int]) -> UnityScalar:
        return UnityScalar(self.L, int(v[0]), tuple(zip(self.names, (int(x) for x in v[1:]))))

    def normalize(self, E: np.ndarray) -> np.ndarray:
        E[..., 0] %= self.L
        return E

    def on_basis(self, base: np.ndarray) -> np.ndarray:
        """Exponents of chi(f_j, f_k) for the columns f_j of ``base``."""
        return self.normalize(np.einsum("aj,bk,abc->jkc", base, base, self.E))

    def transform(self, E: np.ndarray, M: np.ndarray) -> np.ndarray:
        return self.normalize(np.einsum("aj,bk,abc->jkc", M, M, E))

    def is_zero(self, v) -> bool:
        return v[0] % self.L == 0 and not any(v[1:])

    def cartan_row(self, E: np.ndarray, i: int, cap: int) -> list[int | None]:
        L = self.L
        v = [int(x) for x in E[i, i]]
        torsion = not any(v[1:])
        ordq = L // math.gcd(v[0], L) if torsion else 0
        row: list[int | None] = []
        for j in range(self.theta):
            if j == i:
                row.append(2)
                continue
            e = [int(a) + int(b) for a, b in zip(E[i, j], E[j, i])]
            val = None
            for n in range(cap + 1):
                if torsion and ordq > 1 and (n + 1) % ordq == 0:
                    val = -n
                    break
                if (n * v[0] + e[0]) % L == 0 and all(n * a + b == 0 for a, b in zip(v[1:], e[1:])):
                    val = -n
                    break
            row.append(val)
        return row

    def matrix(self, E: np.ndarray, constraints=()) -> BraidingMatrix:
        n = self.theta
        return BraidingMatrix.from_rows([[self.scalar(E[j, k]) for k in range(n)] for j in range(n)],
                                        constraints)


def local_reflection(theta: int, i: int, row: Sequence[int]) -> np.ndarray:
    """Columns s_i(e_j) = e_j - a_ij e_i: the basis change of one reflection."""
    M = np.eye(theta, dtype=np.int64)
    for j, a in enumerate(row):
        M[i, j] -= a
    M[i, i] = -1
    return M


def explore(seed: BraidingMatrix, object_cap: int = 10_000, root_cap: int = 10_000,
            cartan_cap: int | None = None, parity: Sequence[int] | None = None) -> GroupoidAtlas:
    """Breadth-first exploration of the Weyl groupoid from ``seed``.

    Objects are numbered in discovery order; since reflections are tried in index
    order this is shortlex order on the reflection words reaching them, so the result
    does not depend on anything but the seed.
    """
    theta = seed.theta
    cap = default_cartan_cap(theta) if cartan_cap is None else cartan_cap
    K = ExponentKernel(seed)
    exps = [K.normalize(K.E.copy())]
    bases = [np.eye(theta, dtype=np.int64)]
    parities = [None if parity is None else tuple(parity)]
    index = {exps[0].tobytes(): 0}
    paths: list[tuple[int, ...]] = [()]
    cartan: list[list[list[int | None]]] = []
    morphisms: list[tuple[int, int, int]] = []
    status, detail = AtlasStatus.COMPLETE, ""
    queue = deque([0])
    while queue:
        x = queue.popleft()
        rows = [K.cartan_row(exps[x], i, cap) for i in range(theta)]
        cartan.append(rows)
        for i in range(theta):
            if any(a is None for a in rows[i]):
                status = AtlasStatus.REFLECTION_UNDEFINED
                detail = f"object {x}, vertex {i + 1}"
                continue
            M = local_reflection(theta, i, rows[i])
            E = K.transform(exps[x], M)
            key = E.tobytes()
            y = index.get(key)
            if y is None:
                if len(exps) >= object_cap:
                    status = AtlasStatus.CAP_EXCEEDED
                    detail = f"object cap {object_cap} reached"
                    queue.clear()
                    break
                y = len(exps)
                index[key] = y
                exps.append(E)
                bases.append(bases[x] @ M)
                p = parities[x]
                if p is not None:
                    from .superroots import parity_reflect
                    p = parity_reflect(p, i, rows[i])
                parities.append(p)
                paths.append(paths[x] + (i,))
                queue.append(y)
            morphisms.append((x, i, y))
    while len(cartan) < len(exps):
        cartan.append([K.cartan_row(exps[len(cartan)], i, cap) for i in range(theta)])
    objects = [GroupoidObject(K.matrix(E, seed.constraints), tuple(tuple(int(c) for c in col) for col in base.T), p)
               for E, base, p in zip(exps, bases, parities)]
    atlas = GroupoidAtlas(seed, objects, cartan, morphisms, paths, status, detail, root_cap)
    atlas.kernel = K
    atlas.exponents = exps
    return atlas


def reflection_matrix(theta: int, i: int, row: Sequence[int]) -> np.ndarray:
    """Integer matrix M with s_i(v) = M v."""
    M = np.eye(theta, dtype=np.int64)
    M[i, :] = [-c if j != i else -1 for j, c in enumerate(row)]
    return M


def _as_set(arr: np.ndarray) -> set[Vector]:
    return set(map(tuple, arr.tolist()))


def _real_roots(atlas: GroupoidAtlas) -> list[frozenset[Vector]]:
    """Closure of {+-alpha_i} under Delta^{r_i X} := s_i^X(Delta^X)."""
    if not atlas.complete:
        raise AtlasIncomplete(f"atlas is {atlas.status.value}: {atlas.detail}")
    theta = atlas.theta
    eye = np.eye(theta, dtype=np.int64)
    simple = _as_set(np.vstack([eye, -eye]))
    roots = [set(simple) for _ in atlas.objects]
    mats = {}
    changed = set(range(len(atlas.objects)))
    while changed:
        nxt = set()
        for x in sorted(changed):
            arr = np.array(sorted(roots[x]), dtype=np.int64)
            for i in range(theta):
                y = atlas.target(x, i)
                M = mats.get((x, i))
                if M is None:
                    M = mats[(x, i)] = reflection_matrix(theta, i, atlas.cartan[x][i])
                new = _as_set(arr @ M.T) - roots[y]
                if new:
                    roots[y] |= new
                    if len(roots[y]) > 2 * atlas.root_cap:
                        atlas.status = AtlasStatus.CAP_EXCEEDED
                        atlas.detail = f"root cap {atlas.root_cap} exceeded"
                        raise AtlasIncomplete(atlas.detail)
                    nxt.add(y)
        changed = nxt
    return [frozenset(r) for r in roots]


def is_positive(v: Sequence[int]) -> bool:
    return all(c >= 0 for c in v) and any(v)


def positive_roots(atlas: GroupoidAtlas, x: int = 0) -> frozenset[Vector]:
    return frozenset(v for v in atlas.root_sets()[x] if is_positive(v))


def full_root_set(positive: Iterable[Vector]) -> frozenset[Vector]:
    pos = set(positive)
    return frozenset(pos | {tuple(-c for c in v) for v in pos})


def cartan_from_roots(roots: Iterable[Vector], i: int, j: int) -> int:
    """-max{k : alpha_j + k alpha_i in Delta}, the entry matching s_i(alpha_j) = alpha_j - a_ij alpha_i."""
    if i == j:
        return 2
    rs = set(roots)
    theta = len(next(iter(rs)))
    k = 0
    while True:
        v = [0] * theta
        v[j] = 1
        v[i] = k + 1
        if tuple(v) not in rs:
            return -k
        k += 1


def cartan_matrix_from_roots(roots: Iterable[Vector]) -> list[list[int]]:
    rs = set(roots)
    theta = len(next(iter(rs)))
    return [[cartan_from_roots(rs, i, j) for j in range(theta)] for i in range(theta)]


def reflect_root_set(positive: Iterable[Vector], i: int) -> frozenset[Vector]:
    """Positive part of s_i(Delta) with s_i read off the root set itself."""
    pos = frozenset(positive)
    theta = len(next(iter(pos)))
    row = [cartan_from_roots(pos, i, j) for j in range(theta)]
    out = set()
    for v in pos:
        w = reflect_vector(v, i, row)
        if is_positive(w):
            out.add(w)
        elif is_positive(tuple(-c for c in w)):
            out.add(tuple(-c for c in w))
        else:
            raise ValueError(f"s_{i + 1}({v}) = {w} has mixed signs")
    return frozenset(out)


@dataclasses.dataclass
class RootSystemReport:
    violations: list[str]
    checked_objects: int

    @property
    def ok(self) -> bool:
        return not self.violations

    def by_axiom(self, tag: str) -> list[str]:
        return [v for v in self.violations if v.startswith(tag)]


def verify_root_system(atlas: GroupoidAtlas, max_report: int = 50) -> RootSystemReport:
    """Check the four root system axioms, a_ij^X = a_ij^{r_i X}, and that the Cartan
    entries from the braiding agree with those read off the root sets."""
    viol: list[str] = []
    theta = atlas.theta
    roots = atlas.root_sets()
    n = len(atlas.objects)
    for x in range(n):
        R = roots[x]
        arr = np.array(sorted(R), dtype=np.int64)
        mixed = ~((arr >= 0).all(axis=1) | (arr <= 0).all(axis=1))
        for v in arr[mixed].tolist():
            viol.append(f"axiom1: object {x}: root {tuple(v)} has mixed signs")
        positive = arr[(arr >= 0).all(axis=1)]
        support = positive != 0
        for i in range(theta):
            y = atlas.target(x, i)
            if atlas.target(y, i) != x:
                viol.append(f"cartan1: r_{i + 1}^2 != id at object {x}")
            M = reflection_matrix(theta, i, atlas.cartan[x][i])
            if _as_set(arr @ M.T) != roots[y]:
                viol.append(f"axiom2: s_{i + 1}(Delta^{x}) != Delta^{y}")
            off = np.delete(arr, i, axis=1)
            multiples = _as_set(arr[(off == 0).all(axis=1)])
            e = unit_vector(theta, i)
            if multiples != {e, tuple(-c for c in e)}:
                viol.append(f"axiom3: object {x}: Delta cap Z alpha_{i + 1} = {sorted(multiples)}")
            for j in range(theta):
                if atlas.cartan[x][i][j] != atlas.cartan[y][i][j]:
                    viol.append(f"cartan2: a_{i + 1}{j + 1} differs between objects {x} and {y}")
                if i != j:
                    from_roots = cartan_from_roots(R, i, j)
                    if from_roots != atlas.cartan[x][i][j]:
                        viol.append(f"cartan-roots: object {x}: a_{i + 1}{j + 1} = {atlas.cartan[x][i][j]}"
                                    f" but roots give {from_roots}")
        for i in range(theta):
            for j in range(theta):
                if i == j:
                    continue
                outside = np.delete(support, [i, j], axis=1)
                m = int((~outside.any(axis=1)).sum())
                y = x
                for _ in range(m):
                    y = atlas.target(atlas.target(y, j), i)
                if y != x:
                    viol.append(f"axiom4: object {x}: (r_{i + 1} r_{j + 1})^{m} does not fix it")
        if len(viol) > max_report:
            break
    return RootSystemReport(viol, n)


def check_reflection_identities(atlas: GroupoidAtlas) -> list[str]:
    """Per-edge identities: involutivity, and the two symmetry remarks on reflections.

    When a_ij = 0 the vertex j keeps its label and its edges to k != i, j.  When
    q_ii^{a_ij} = q_ij q_ji for every j, the reflected matrix agrees with the transpose
    on row/column i and on the diagonal, keeps every edge label, hence has the same
    diagram and the same root set.
    """
    out = []
    theta = atlas.theta
    K = atlas.kernel
    exps = atlas.exponents
    roots = atlas.root_sets() if atlas.complete else None
    zero = K.is_zero

    def edge(E, j, k):
        return E[j, k] + E[k, j]

    for x, i, y in atlas.morphisms:
        Ex, Ey = exps[x], exps[y]
        back = K.transform(Ey, local_reflection(theta, i, atlas.cartan[y][i]))
        if not np.array_equal(back, Ex):
            out.append(f"involution: reflect(reflect(X{x}, {i + 1}), {i + 1}) != X{x}")
        row = atlas.cartan[x][i]
        for j in range(theta):
            if j == i or row[j] != 0:
                continue
            if not zero(Ey[j, j] - Ex[j, j]):
                out.append(f"remark1: X{x} vertex {j + 1} label changed under s_{i + 1}")
            for k in range(theta):
                if k not in (i, j) and not zero(edge(Ey, j, k) - edge(Ex, j, k)):
                    out.append(f"remark1: X{x} edge {j + 1}-{k + 1} changed under s_{i + 1}")
        hyp = all(zero(row[j] * Ex[i, i] - edge(Ex, i, j)) for j in range(theta) if j != i)
        if hyp:
            for j in range(theta):
                if not (zero(Ey[i, j] - Ex[j, i]) and zero(Ey[j, i] - Ex[i, j])):
                    out.append(f"remark2: X{x} s_{i + 1}: row/column {i + 1} not transposed")
                    break
            same = all(zero(Ey[j, j] - Ex[j, j]) for j in range(theta)) and all(
                zero(edge(Ey, j, k) - edge(Ex, j, k)) for j in range(theta) for k in range(j + 1, theta))
            if not same:
                out.append(f"remark2: X{x} s_{i + 1}: diagram changed")
            if roots is not None and roots[x] != roots[y]:
                out.append(f"remark2: X{x} s_{i + 1}: root set changed")
    return out


def distinct_positive_root_sets(atlas: GroupoidAtlas) -> set[frozenset[Vector]]:
    return {positive_roots(atlas, x) for x in range(len(atlas.objects))}


def atlas_text(atlas: GroupoidAtlas, torsion: int | None = None, with_roots: bool = True) -> str:
    lines = [f"status {atlas.status.value}" + (f" ({atlas.detail})" if atlas.detail else ""),
             f"objects {len(atlas.objects)}"]
    for x, F in enumerate(atlas.objects):
        path = "".join(f"s{i + 1}" for i in reversed(atlas.paths[x])) or "id"
        lines.append(f"object {x} via {path}")
        for r in F.q_matrix.entries:
            lines.append("  " + " ".join(s.literal(torsion) for s in r))
        lines.append("  cartan " + "; ".join(
            " ".join("?" if a is None else str(a) for a in row) for row in atlas.cartan[x]))
        if with_roots and atlas.complete:
            lines.append("  " + root_set_text(positive_roots(atlas, x)))
    for s, i, t in atlas.morphisms:
        lines.append(f"morphism {s} -s{i + 1}-> {t}")
    return "\n".join(lines) + "\n"


def root_set_text(roots: Iterable[Vector]) -> str:
    """Shared root-set export: sorted by height then lexicographically."""
    rs = sorted(roots, key=lambda v: (sum(v), tuple(-c for c in v)))
    return f"roots {len(rs)}: " + " ".join("(" + ",".join(map(str, v)) + ")" for v in rs)


def atlas_dot(atlas: GroupoidAtlas) -> str:
    lines = ["graph weyl {"]
    for x in range(len(atlas.objects)):
        lines.append(f'  o{x} [label="X{x}"];')
    seen = set()
    for s, i, t in atlas.morphisms:
        key = (min(s, t), max(s, t), i)
        if key in seen:
            continue
        seen.add(key)
        if s == t:
            lines.append(f'  o{s} -- o{t} [label="s{i + 1}", style=dotted];')
        else:
            lines.append(f'  o{s} -- o{t} [label="s{i + 1}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"

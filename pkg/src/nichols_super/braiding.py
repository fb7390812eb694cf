"""Diagonal braiding matrices and their generalized Dynkin diagrams."""
from __future__ import annotations

import dataclasses
import itertools
from typing import Sequence

from .scalars import ONE, MINUS_ONE, SpecializationMap, UnityScalar, lcm


@dataclasses.dataclass(frozen=True)
class BraidingMatrix:
    """theta x theta matrix (q_ij) with c(x_i (x) x_j) = q_ij x_j (x) x_i.

    ``constraints`` holds scalars c meaning the side condition c != 1 on the generics.
    Vertices are 0-based in code; text formats use 1-based indices.
    """

    entries: tuple[tuple[UnityScalar, ...], ...]
    constraints: tuple[UnityScalar, ...] = ()

    def __post_init__(self):
        rows = tuple(tuple(r) for r in self.entries)
        if not rows or any(len(r) != len(rows) for r in rows):
            raise ValueError("braiding matrix must be square with theta >= 1")
        object.__setattr__(self, "entries", rows)
        object.__setattr__(self, "constraints", tuple(self.constraints))

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[UnityScalar]], constraints=()) -> BraidingMatrix:
        return cls(tuple(tuple(r) for r in rows), tuple(constraints))

    @property
    def theta(self) -> int:
        return len(self.entries)

    def __getitem__(self, ij: tuple[int, int]) -> UnityScalar:
        i, j = ij
        return self.entries[i][j]

    def edge(self, i: int, j: int) -> UnityScalar:
        return self.entries[i][j] * self.entries[j][i]

    def chi(self, a: Sequence[int], b: Sequence[int]) -> UnityScalar:
        """The bicharacter on Z^theta with chi(alpha_i, alpha_j) = q_ij."""
        out = ONE
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    if bj:
                        out = out * self.entries[i][j] ** (ai * bj)
        return out

    def transpose(self) -> BraidingMatrix:
        n = self.theta
        return BraidingMatrix.from_rows([[self.entries[j][i] for j in range(n)] for i in range(n)],
                                        self.constraints)

    def relabel(self, order: Sequence[int]) -> BraidingMatrix:
        """Matrix whose vertex k is vertex ``order[k]`` of this one."""
        return BraidingMatrix.from_rows([[self.entries[a][b] for b in order] for a in order],
                                        self.constraints)

    def submatrix(self, vertices: Sequence[int]) -> BraidingMatrix:
        return self.relabel(vertices)

    def generics(self) -> set[str]:
        return {n for row in self.entries for s in row for n, _ in s.generic_exps}

    def is_torsion(self) -> bool:
        return all(s.is_torsion() for row in self.entries for s in row)

    def torsion_lcm(self) -> int:
        return lcm(*(s.reduced().torsion_order for row in self.entries for s in row))

    def specialize(self, m: SpecializationMap) -> BraidingMatrix:
        m.check(self.constraints)
        return BraidingMatrix.from_rows([[m.scalar(s) for s in row] for row in self.entries])


@dataclasses.dataclass(frozen=True)
class GeneralizedDynkinDiagram:
    vertex_labels: tuple[UnityScalar, ...]
    edge_labels: dict  # frozenset({i, j}) -> UnityScalar, only labels != 1

    def __eq__(self, other):
        if not isinstance(other, GeneralizedDynkinDiagram):
            return NotImplemented
        return self.vertex_labels == other.vertex_labels and self.edge_labels == other.edge_labels

    def __hash__(self):
        return hash((self.vertex_labels, frozenset(self.edge_labels.items())))

    @property
    def theta(self) -> int:
        return len(self.vertex_labels)

    def label(self, i: int, j: int) -> UnityScalar:
        return self.edge_labels.get(frozenset((i, j)), ONE)

    def neighbors(self, i: int) -> list[int]:
        return sorted(j for j in range(self.theta) if j != i and frozenset((i, j)) in self.edge_labels)

    def relabel(self, order: Sequence[int]) -> GeneralizedDynkinDiagram:
        pos = {v: k for k, v in enumerate(order)}
        return GeneralizedDynkinDiagram(
            tuple(self.vertex_labels[v] for v in order),
            {frozenset(pos[v] for v in e): lab for e, lab in self.edge_labels.items()})

    def to_dot(self, torsion: int | None = None, name: str = "diagram") -> str:
        lines = [f"graph {name} {{"]
        for i, lab in enumerate(self.vertex_labels):
            lines.append(f'  v{i + 1} [label="{i + 1}: {lab.literal(torsion)}"];')
        for e in sorted(self.edge_labels, key=lambda e: sorted(e)):
            i, j = sorted(e)
            lines.append(f'  v{i + 1} -- v{j + 1} [label="{self.edge_labels[e].literal(torsion)}"];')
        lines.append("}")
        return "\n".join(lines) + "\n"


def dynkin_of(B: BraidingMatrix) -> GeneralizedDynkinDiagram:
    n = B.theta
    edges = {}
    for i in range(n):
        for j in range(i + 1, n):
            e = B.edge(i, j)
            if not e.is_one():
                edges[frozenset((i, j))] = e
    return GeneralizedDynkinDiagram(tuple(B.entries[i][i] for i in range(n)), edges)


def diagram_isomorphisms(D1: GeneralizedDynkinDiagram, D2: GeneralizedDynkinDiagram,
                         first_only: bool = True):
    """Vertex bijections f with D1 vertex f[k] corresponding to D2 vertex k.

    Backtracking over vertices of D2 in order, pruned by vertex labels, degrees and
    edge labels to already placed vertices.
    """
    n = D1.theta
    if n != D2.theta:
        return []
    deg1 = [len(D1.neighbors(i)) for i in range(n)]
    deg2 = [len(D2.neighbors(i)) for i in range(n)]
    found = []
    assign: list[int] = []
    used = [False] * n

    def rec(k: int) -> bool:
        if k == n:
            found.append(tuple(assign))
            return first_only
        for cand in range(n):
            if used[cand] or D1.vertex_labels[cand] != D2.vertex_labels[k] or deg1[cand] != deg2[k]:
                continue
            if any(D1.label(cand, assign[m]) != D2.label(k, m) for m in range(k)):
                continue
            used[cand] = True
            assign.append(cand)
            if rec(k + 1):
                return True
            assign.pop()
            used[cand] = False
        return False

    rec(0)
    return found


def twist_equivalent(B: BraidingMatrix, B2: BraidingMatrix, up_to_relabeling: bool = False) -> bool:
    if B.theta != B2.theta:
        raise ValueError("twist equivalence needs equal rank")
    d1, d2 = dynkin_of(B), dynkin_of(B2)
    if not up_to_relabeling:
        return d1 == d2
    return bool(diagram_isomorphisms(d1, d2))


def twist(B: BraidingMatrix, i: int, j: int, t: UnityScalar) -> BraidingMatrix:
    """Cocycle twist on one pair: q_ij -> q_ij t, q_ji -> q_ji t^-1."""
    rows = [list(r) for r in B.entries]
    rows[i][j] = rows[i][j] * t
    rows[j][i] = rows[j][i] * t.inverse()
    return BraidingMatrix.from_rows(rows, B.constraints)


@dataclasses.dataclass(frozen=True)
class YDDatum:
    """Diagonal Yetter-Drinfeld supermodule over a finite abelian group prod Z/m_t.

    Basis vector x_j is homogeneous of group degree ``elements[j]``, character
    ``characters[j]`` (exponent vector: chi(e_t) = zeta_{m_t}^{c_t}) and parity ``parities[j]``.
    """

    group_orders: tuple[int, ...]
    elements: tuple[tuple[int, ...], ...]
    characters: tuple[tuple[int, ...], ...]
    parities: tuple[int, ...]

    def __post_init__(self):
        m = self.group_orders
        red = lambda vs: tuple(tuple(v % mt for v, mt in zip(vec, m)) for vec in vs)
        object.__setattr__(self, "elements", red(self.elements))
        object.__setattr__(self, "characters", red(self.characters))
        object.__setattr__(self, "parities", tuple(p % 2 for p in self.parities))
        if not (len(self.elements) == len(self.characters) == len(self.parities)):
            raise ValueError("datum needs one element, character and parity per basis vector")

    @property
    def theta(self) -> int:
        return len(self.elements)

    def pairing(self, g: Sequence[int], chi: Sequence[int]) -> UnityScalar:
        M = lcm(*self.group_orders)
        return UnityScalar(M, sum(gt * ct * (M // mt) for gt, ct, mt in zip(g, chi, self.group_orders)))


def braiding_from_yd_datum(d: YDDatum) -> tuple[BraidingMatrix, tuple[int, ...]]:
    n = d.theta
    rows = [[d.pairing(d.elements[i], d.characters[j]) for j in range(n)] for i in range(n)]
    return BraidingMatrix.from_rows(rows), d.parities


def super_sign_transform(B: BraidingMatrix, parity: Sequence[int]) -> BraidingMatrix:
    """q~_ii = (-1)^{k_i} q_ii, off-diagonal entries unchanged."""
    rows = [list(r) for r in B.entries]
    for i, k in enumerate(parity):
        if k % 2:
            rows[i][i] = rows[i][i] * MINUS_ONE
    return BraidingMatrix.from_rows(rows, B.constraints)


def super_sign_matrix(B: BraidingMatrix, parity: Sequence[int]) -> BraidingMatrix:
    """((-1)^{k_i k_j} q_ij): the braiding seen after forgetting the super structure."""
    n = B.theta
    return BraidingMatrix.from_rows(
        [[B.entries[i][j] * (MINUS_ONE if parity[i] % 2 and parity[j] % 2 else ONE)
          for j in range(n)] for i in range(n)], B.constraints)


def connected_components(B: BraidingMatrix | GeneralizedDynkinDiagram) -> list[list[int]]:
    D = dynkin_of(B) if isinstance(B, BraidingMatrix) else B
    seen = [False] * D.theta
    comps = []
    for s in range(D.theta):
        if seen[s]:
            continue
        stack, comp = [s], []
        seen[s] = True
        while stack:
            v = stack.pop()
            comp.append(v)
            for w in D.neighbors(v):
                if not seen[w]:
                    seen[w] = True
                    stack.append(w)
        comps.append(sorted(comp))
    return comps


def block_sum(*blocks: BraidingMatrix) -> BraidingMatrix:
    n = sum(b.theta for b in blocks)
    rows = [[ONE] * n for _ in range(n)]
    off = 0
    for b in blocks:
        for i, j in itertools.product(range(b.theta), repeat=2):
            rows[off + i][off + j] = b.entries[i][j]
        off += b.theta
    return BraidingMatrix.from_rows(rows, tuple(c for b in blocks for c in b.constraints))

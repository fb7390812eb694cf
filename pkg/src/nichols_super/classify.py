"""
Recognition of diagonal braidings whose root system is of super type.

Every family is given by a builder producing its diagram in a standard labeling.
Matching proposes vertex orderings (path traversals, or a path followed by a
two-vertex tail) and parameter values read off the labels, builds the standard
diagram and compares exactly.  Nothing is inferred that the comparison does not
confirm.
"""
from __future__ import annotations

import dataclasses
import math
from typing import Callable, Iterable, Sequence

from .braiding import (BraidingMatrix, GeneralizedDynkinDiagram, connected_components,
                       diagram_isomorphisms, dynkin_of)
from .scalars import MINUS_ONE, ONE, UnityScalar

# display order; the first matching diagram id is reported
DIAGRAM_IDS = ("A", "B-1", "B-2", "B-3", "C", "D-1", "D-2", "D21-1", "D21-2",
               "F4-1", "F4-2", "F4-3", "F4-4", "F4-5", "F4-6",
               "G3-1", "G3-2", "G3-3", "G3-4")

FAMILY_NAMES = {"A": "A", "B": "B", "C": "C", "D": "D", "D21": "D(2,1;a)", "F4": "F(4)", "G3": "G(3)"}

# Heckenberger's tables, for information only (not checked)
TABLE_ROWS = {"A": "Table 4 rows 1-2", "B": "Table 4 rows 3-6", "C": "Table 4 rows 7-10",
              "D": "Table 4 rows 7-10", "D21": "Table 2 rows 9-11", "F4": "Table 3 row 9",
              "G3": "Table 2 row 7"}


def family_of(diagram_id: str) -> str:
    return diagram_id.split("-")[0]


# ---------------------------------------------------------------------------
# Simple chains
# ---------------------------------------------------------------------------

@dataclasses.dataclass(frozen=True)
class SimpleChainDescriptor:
    theta: int
    q: UnityScalar
    marked: tuple[int, ...]  # 1-based positions along the chain with label -1
    order: tuple[int, ...]   # chain position k is vertex order[k] of the input


def chain_labels(n: int, q: UnityScalar, marked: Iterable[int]) -> tuple[list[UnityScalar], list[UnityScalar]]:
    """Vertex labels and edge labels e_1..e_{n-1} of C(n, q; marked)."""
    marked = set(marked)
    if n == 1:
        return [MINUS_ONE if 1 in marked else q], []
    e: list[UnityScalar] = [ONE] * (n - 1)
    e[n - 2] = q if n in marked else q.inverse()
    for i in range(n - 1, 1, -1):
        e[i - 2] = e[i - 1].inverse() if i in marked else e[i - 1]
    labels = []
    for i in range(1, n + 1):
        if i in marked:
            labels.append(MINUS_ONE)
        else:
            labels.append(e[i - 1].inverse() if i < n else e[n - 2].inverse())
    return labels, e


def _diagram(labels: Sequence[UnityScalar], edges: dict[tuple[int, int], UnityScalar]) -> GeneralizedDynkinDiagram:
    return GeneralizedDynkinDiagram(tuple(labels), {frozenset(k): v for k, v in edges.items() if not v.is_one()})


def diagram_matrix(D: GeneralizedDynkinDiagram) -> BraidingMatrix:
    """Upper triangular representative: q_ij = edge label for i < j, 1 below."""
    n = D.theta
    return BraidingMatrix.from_rows([[D.vertex_labels[i] if i == j else (D.label(i, j) if i < j else ONE)
                                      for j in range(n)] for i in range(n)])


def _chain_with_tail(n: int, q: UnityScalar, marked, tail_labels, tail_edges) -> GeneralizedDynkinDiagram:
    labels, e = chain_labels(n, q, marked)
    edges = {(i, i + 1): lab for i, lab in enumerate(e)}
    labels = labels + list(tail_labels)
    edges.update(tail_edges)
    return _diagram(labels, edges)


def _is_path_order(D: GeneralizedDynkinDiagram, order: Sequence[int]) -> bool:
    n = len(order)
    for a in range(n):
        for b in range(a + 1, n):
            adj = frozenset((order[a], order[b])) in D.edge_labels
            if adj != (b == a + 1):
                return False
    return True


def path_orders(D: GeneralizedDynkinDiagram, vertices: Sequence[int] | None = None) -> list[tuple[int, ...]]:
    """Traversals of ``vertices`` (default all) if they induce a path, else []."""
    vs = list(range(D.theta)) if vertices is None else list(vertices)
    if len(vs) == 1:
        return [tuple(vs)]
    sub = set(vs)
    nbrs = {v: [w for w in D.neighbors(v) if w in sub] for v in vs}
    ends = [v for v in vs if len(nbrs[v]) == 1]
    if len(ends) != 2 or any(len(nbrs[v]) > 2 for v in vs):
        return []
    out = []
    for start in ends:
        order, prev = [start], None
        while len(order) < len(vs):
            nxt = [w for w in nbrs[order[-1]] if w != prev]
            if not nxt:
                break
            prev = order[-1]
            order.append(nxt[0])
        if len(order) == len(vs) and _is_path_order(D, order):
            out.append(tuple(order))
    return out


def fork_orders(D: GeneralizedDynkinDiagram, tail_adjacent: bool) -> list[tuple[int, ...]]:
    """Orders chain + (x, y) with x, y attached to the chain end only (and to each
    other exactly when ``tail_adjacent``)."""
    n = D.theta
    out = []
    if n < 3:
        return out
    for b in range(n):
        nb = D.neighbors(b)
        for x in nb:
            for y in nb:
                if x == y:
                    continue
                if (frozenset((x, y)) in D.edge_labels) != tail_adjacent:
                    continue
                if set(D.neighbors(x)) - {b, y} or set(D.neighbors(y)) - {b, x}:
                    continue
                rest = [v for v in range(n) if v not in (x, y)]
                for po in path_orders(D, rest):
                    if po[-1] == b:
                        out.append(po + (x, y))
    return sorted(set(out))


def _chain_conditions(B: BraidingMatrix) -> bool:
    """The three defining conditions of a simple chain, read literally."""
    n = B.theta
    q = B.entries
    if n == 1:
        return True
    if not ((q[0][0] == MINUS_ONE) or (q[0][0] * B.edge(0, 1)).is_one()):
        return False
    if not ((q[n - 1][n - 1] == MINUS_ONE) or (q[n - 1][n - 1] * B.edge(n - 1, n - 2)).is_one()):
        return False
    for i in range(1, n - 1):
        for j in range(1, n - 1):
            if abs(i - j) > 1 and not B.edge(i, j).is_one():
                return False
    for i in range(1, n - 1):
        left, right = B.edge(i - 1, i), B.edge(i, i + 1)
        if q[i][i] == MINUS_ONE and (left * right).is_one():
            continue
        if (q[i][i] * left).is_one() and (q[i][i] * right).is_one():
            continue
        return False
    return True


def chain_parameter(B: BraidingMatrix) -> UnityScalar:
    n = B.theta
    if n == 1:
        return B.entries[0][0]
    return B.entries[n - 1][n - 1] ** 2 * B.edge(n - 1, n - 2)


def _chain_marked(D: GeneralizedDynkinDiagram, order: Sequence[int]) -> tuple[int, ...]:
    return tuple(k + 1 for k, v in enumerate(order) if D.vertex_labels[v] == MINUS_ONE)


def detect_simple_chain(B: BraidingMatrix | GeneralizedDynkinDiagram) -> SimpleChainDescriptor | None:
    D = dynkin_of(B) if isinstance(B, BraidingMatrix) else B
    M = diagram_matrix(D)
    best = None
    for order in path_orders(D):
        Bo = M.relabel(order)
        if not _chain_conditions(Bo):
            continue
        q = chain_parameter(Bo)
        marked = _chain_marked(D, order)
        if D.theta == 1 and q.is_one():
            continue
        if D.theta > 1 and q.is_one():
            continue
        cand = SimpleChainDescriptor(D.theta, q, marked, order)
        if best is None or (q.sort_key(), marked) < (best.q.sort_key(), best.marked):
            best = cand
    return best


# ---------------------------------------------------------------------------
# Family builders in standard labeling (0-based edges)
# ---------------------------------------------------------------------------

def build_family_diagram(diagram_id: str, theta: int, params: dict[str, UnityScalar],
                         marked: Iterable[int] = ()) -> GeneralizedDynkinDiagram:
    fam = family_of(diagram_id)
    m = tuple(marked)
    t = theta
    if diagram_id == "A":
        return _chain_with_tail(t, params["q"], m, [], {})
    if diagram_id == "B-1":
        q, z = params["q"], params["zeta"]
        return _diagram([q, z], {(0, 1): q.inverse()})
    if diagram_id == "B-2":
        q = params["q"]
        return _chain_with_tail(t - 1, q ** 2, m, [q], {(t - 2, t - 1): q ** -2})
    if diagram_id == "B-3":
        z = params["zeta"]
        return _chain_with_tail(t - 1, -(z ** 2), m, [z], {(t - 2, t - 1): -z})
    if diagram_id == "C":
        q = params["q"]
        return _chain_with_tail(t - 1, q, m, [q ** 2], {(t - 2, t - 1): q ** -2})
    if diagram_id == "D-1":
        q = params["q"]
        qi = q.inverse()
        return _chain_with_tail(t - 2, qi, m, [qi, qi], {(t - 3, t - 2): q, (t - 3, t - 1): q})
    if diagram_id == "D-2":
        q = params["q"]
        return _chain_with_tail(t - 2, q, m, [MINUS_ONE, MINUS_ONE],
                                {(t - 3, t - 2): q.inverse(), (t - 3, t - 1): q.inverse(), (t - 2, t - 1): q ** 2})
    if fam == "D21":
        q, r, s = params["q"], params["r"], params["s"]
        if diagram_id == "D21-1":
            return _diagram([q, MINUS_ONE, r], {(0, 1): q.inverse(), (1, 2): r.inverse()})
        return _diagram([MINUS_ONE] * 3, {(0, 1): q, (1, 2): r, (0, 2): s})
    if fam in ("F4", "G3"):
        q = params["q"]
        mo = MINUS_ONE
        p = lambda k: q ** k
        table = {
            "F4-1": ([mo, q, p(2), p(2)], {(0, 1): p(-1), (1, 2): p(-2), (2, 3): p(-2)}),
            "F4-2": ([mo, mo, p(2), p(2)], {(0, 1): q, (1, 2): p(-2), (2, 3): p(-2)}),
            "F4-3": ([mo, mo, p(2), q], {(0, 1): p(2), (1, 2): p(-2), (0, 3): p(-1), (1, 3): p(-1)}),
            "F4-4": ([p(2), mo, mo, mo], {(0, 1): p(-2), (1, 2): p(2), (2, 3): p(-3), (1, 3): q}),
            "F4-5": ([p(2), q, mo, p(-3)], {(0, 1): p(-2), (1, 2): p(-1), (2, 3): p(3)}),
            "F4-6": ([p(2), p(2), mo, p(-3)], {(0, 1): p(-2), (1, 2): p(-2), (2, 3): p(3)}),
            "G3-1": ([mo, q, p(3)], {(0, 1): p(-1), (1, 2): p(-3)}),
            "G3-2": ([mo, mo, p(3)], {(0, 1): q, (1, 2): p(-3)}),
            "G3-3": ([q, mo, mo], {(0, 1): p(-1), (1, 2): p(3), (0, 2): p(-2)}),
            "G3-4": ([-(q.inverse()), mo, p(3)], {(0, 1): p(2), (1, 2): p(-3)}),
        }
        labels, edges = table[diagram_id]
        return _diagram(labels, edges)
    raise ValueError(f"unknown diagram id {diagram_id!r}")


def diagram_rank(diagram_id: str) -> int | None:
    fam = family_of(diagram_id)
    return {"B-1": 2, "D21": 3, "F4": 4, "G3": 3}.get(diagram_id, {"D21": 3, "F4": 4, "G3": 3}.get(fam))


def _order(s: UnityScalar) -> float:
    return s.order()


def side_conditions(diagram_id: str, params: dict[str, UnityScalar], theta: int) -> bool:
    fam = family_of(diagram_id)
    if fam == "A":
        return theta == 1 or not (params["q"] ** 2).is_one()
    if diagram_id == "B-1":
        q, z = params["q"], params["zeta"]
        return _order(z) == 3 and all(q != c for c in (ONE, MINUS_ONE, z, z ** 2))
    if diagram_id == "B-2":
        return params["q"] != ONE and params["q"] != MINUS_ONE
    if diagram_id == "B-3":
        return _order(params["zeta"]) == 3
    if fam == "C":
        return not (params["q"] ** 4).is_one()
    if fam == "D":
        return not (params["q"] ** 2).is_one()
    if fam == "D21":
        q, r, s = params["q"], params["r"], params["s"]
        return all(not x.is_one() for x in (q, r, s)) and (q * r * s).is_one()
    if fam in ("F4", "G3"):
        q = params["q"]
        return not (q ** 2).is_one() and not (q ** 3).is_one()
    return False


def _min_rank(diagram_id: str) -> int:
    return {"A": 1, "B-2": 2, "B-3": 2, "C": 2, "D-1": 3, "D-2": 3}.get(diagram_id, 0)


# ---------------------------------------------------------------------------
# Matching
# ---------------------------------------------------------------------------

@dataclasses.dataclass(frozen=True)
class SuperTypeDescriptor:
    family: str
    theta: int
    params: tuple[tuple[str, UnityScalar], ...]
    diagram_id: str
    relabeling: tuple[int, ...]  # standard vertex k is input vertex relabeling[k]
    marked: tuple[int, ...] = ()
    all_matches: tuple[str, ...] = ()
    crosscheck: str = "not run"

    @property
    def param_dict(self) -> dict[str, UnityScalar]:
        return dict(self.params)

    def key(self):
        """Everything except the relabeling and bookkeeping: used for invariance checks."""
        return (self.family, self.theta, self.params, self.diagram_id, self.marked)

    def text(self, torsion: int | None = None) -> str:
        parts = [f"{k}={v.literal(torsion)}" for k, v in self.params]
        if self.marked:
            parts.append("marked={" + ",".join(map(str, self.marked)) + "}")
        return f"{FAMILY_NAMES[self.family]}({self.theta}; {', '.join(parts)}) via diagram {self.diagram_id}"

    def standard_diagram(self) -> GeneralizedDynkinDiagram:
        return build_family_diagram(self.diagram_id, self.theta, self.param_dict, self.marked)


def _scalar_candidates(D: GeneralizedDynkinDiagram, powers=(1, 2, 3)) -> list[UnityScalar]:
    labels = list(D.vertex_labels) + list(D.edge_labels.values())
    out = set()
    for lab in labels:
        for base in (lab, lab.inverse(), -lab, -(lab.inverse())):
            for k in powers:
                out.update(base.roots(k))
    return sorted(out, key=lambda s: s.sort_key())


def _param_key(params: dict[str, UnityScalar]):
    return tuple((k, v.sort_key()) for k, v in sorted(params.items()))


def _ordered_candidates(D: GeneralizedDynkinDiagram, diagram_id: str):
    """(order, params, marked) triples to try for the chain-based families."""
    theta = D.theta
    M = diagram_matrix(D)
    if diagram_id == "A":
        for order in path_orders(D):
            Bo = M.relabel(order)
            if _chain_conditions(Bo):
                yield order, {"q": chain_parameter(Bo)}, _chain_marked(D, order)
        return
    if diagram_id in ("B-2", "B-3", "C"):
        orders = path_orders(D)
        tail = 1
    elif diagram_id == "D-1":
        orders = fork_orders(D, tail_adjacent=False)
        tail = 2
    else:  # D-2
        orders = fork_orders(D, tail_adjacent=True)
        tail = 2
    for order in orders:
        chain = order[: theta - tail]
        marked = _chain_marked(D, chain)
        last = D.vertex_labels[order[-1]]
        if diagram_id == "B-2":
            cands = [{"q": last}]
        elif diagram_id == "B-3":
            cands = [{"zeta": last}]
        elif diagram_id == "C":
            cands = [{"q": r} for r in last.roots(2)]
        elif diagram_id == "D-1":
            cands = [{"q": last.inverse()}]
        else:
            cands = [{"q": D.label(order[theta - 3], order[-1]).inverse()}]
        for params in cands:
            yield order, params, marked


def _fixed_candidates(D: GeneralizedDynkinDiagram, diagram_id: str):
    fam = family_of(diagram_id)
    scal = _scalar_candidates(D)
    if diagram_id == "B-1":
        zetas = [UnityScalar(3, 1), UnityScalar(3, 2)]
        for q in scal:
            for z in zetas:
                yield {"q": q, "zeta": z}
    elif fam == "D21":
        labs = sorted(set(D.vertex_labels) | set(D.edge_labels.values()), key=lambda s: s.sort_key())
        pool = sorted(set(labs) | {x.inverse() for x in labs}, key=lambda s: s.sort_key())
        for q in pool:
            for r in pool:
                yield {"q": q, "r": r, "s": (q * r).inverse()}
    else:
        for q in scal:
            yield {"q": q}


def _canonical_params(diagram_id: str, params: dict[str, UnityScalar]) -> dict[str, UnityScalar]:
    if family_of(diagram_id) == "D21":
        vals = sorted(params.values(), key=lambda s: s.sort_key())
        return dict(zip(("q", "r", "s"), vals))
    return params


def _matches_for(D: GeneralizedDynkinDiagram, diagram_id: str) -> list[tuple]:
    theta = D.theta
    rank = diagram_rank(diagram_id)
    if rank is not None and rank != theta:
        return []
    if rank is None and theta < _min_rank(diagram_id):
        return []
    found = []
    if family_of(diagram_id) in ("A", "B", "C", "D") and diagram_id != "B-1":
        for order, params, marked in _ordered_candidates(D, diagram_id):
            if not side_conditions(diagram_id, params, theta):
                continue
            try:
                S = build_family_diagram(diagram_id, theta, params, marked)
            except (KeyError, IndexError):
                continue
            if D.relabel(order) == S:
                found.append((order, params, marked))
        return found
    for params in _fixed_candidates(D, diagram_id):
        if not side_conditions(diagram_id, params, theta):
            continue
        S = build_family_diagram(diagram_id, theta, params)
        isos = diagram_isomorphisms(D, S, first_only=True)
        if isos:
            found.append((isos[0], params, ()))
    return found


def match_family(B: BraidingMatrix | GeneralizedDynkinDiagram, stop_at_first: bool = False) -> SuperTypeDescriptor | None:
    """First matching family in display order, with every matching id recorded."""
    D = dynkin_of(B) if isinstance(B, BraidingMatrix) else B
    if len(connected_components(D)) != 1:
        raise ValueError("match_family expects a connected diagram")
    best = None
    ids = []
    for did in DIAGRAM_IDS:
        found = _matches_for(D, did)
        if not found:
            continue
        ids.append(did)
        if best is None:
            # the match set is relabeling invariant, so this choice is too; parameters
            # stay as found so that the relabeling reproduces the standard diagram
            order, params, marked = min(
                found, key=lambda f: (_param_key(_canonical_params(did, f[1])), _param_key(f[1]), f[2], f[0]))
            best = (did, order, params, marked)
            if stop_at_first:
                break
    if best is None:
        return None
    did, order, params, marked = best
    pnames = sorted(params)
    if family_of(did) in ("D21",):
        pnames = ["q", "r", "s"]
    return SuperTypeDescriptor(family_of(did), D.theta, tuple((k, params[k]) for k in pnames),
                               did, tuple(order), tuple(marked), tuple(ids))


# ---------------------------------------------------------------------------
# Whole braidings
# ---------------------------------------------------------------------------

@dataclasses.dataclass
class ComponentResult:
    vertices: tuple[int, ...]
    descriptor: SuperTypeDescriptor | None

    def line(self, torsion: int | None = None) -> str:
        vs = "{" + ",".join(str(v + 1) for v in self.vertices) + "}"
        body = self.descriptor.text(torsion) if self.descriptor else "not super type"
        return f"component {vs} : {body}"


def standard_parity(desc: SuperTypeDescriptor) -> tuple[int, ...]:
    """Simple parities in standard labeling: odd exactly at the vertices labeled -1."""
    D = desc.standard_diagram()
    return tuple(-1 if lab == MINUS_ONE else 1 for lab in D.vertex_labels)


def crosscheck(B: BraidingMatrix, desc: SuperTypeDescriptor, object_cap: int = 10_000) -> str:
    """Compare the groupoid's root sets with the direct construction for the family."""
    from . import superroots, weyl
    atlas = weyl.explore(B, object_cap=object_cap)
    if not atlas.complete:
        return f"mismatch: groupoid {atlas.status.value}"
    report = weyl.verify_root_system(atlas)
    if not report.ok:
        return f"mismatch: {report.violations[0]}"
    gsets = weyl.distinct_positive_root_sets(atlas)
    if desc.family in superroots.CLASSICAL:
        fam = superroots.family_atlas(desc.family, desc.theta, standard_parity(desc))
    else:
        fam = superroots.family_atlas(desc.family)
    fsets = superroots.distinct_root_sets(fam)
    # root coordinates: standard k <- input vertex relabeling[k]
    preferred = desc.relabeling if desc.family in superroots.CLASSICAL else None
    if preferred is not None and {superroots.permute_root_set(R, preferred) for R in gsets} == fsets:
        return "ok"
    if desc.family in superroots.CLASSICAL:
        return "mismatch: root sets differ from the direct construction"
    return "ok" if superroots.match_root_sets(gsets, fsets) is not None else \
        "mismatch: root sets differ from the direct construction"


def classify_braiding(B: BraidingMatrix, validate: bool = True) -> list[ComponentResult]:
    out = []
    for comp in connected_components(B):
        sub = B.submatrix(comp)
        desc = match_family(sub)
        if desc is not None:
            desc = dataclasses.replace(desc, relabeling=tuple(comp[k] for k in desc.relabeling))
            if validate:
                status = crosscheck(sub, dataclasses.replace(
                    desc, relabeling=tuple(comp.index(v) for v in desc.relabeling)))
                desc = dataclasses.replace(desc, crosscheck=status)
        out.append(ComponentResult(tuple(comp), desc))
    return out


def classification_text(results: Sequence[ComponentResult], torsion: int | None = None) -> str:
    return "".join(r.line(torsion) + "\n" for r in results)

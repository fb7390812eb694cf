"""Text formats for braiding matrices and Hopf superalgebra presentations."""
from __future__ import annotations

import dataclasses
import re
from fractions import Fraction

from .braiding import BraidingMatrix
from .scalars import CycNumber, lcm, parse_scalar
from .superhopf import SuperHopfPresentation


class FormatError(ValueError):
    pass


def _lines(text: str):
    for n, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if line and not line.startswith("#"):
            yield n, line


# ---------------------------------------------------------------------------
# Braidings
# ---------------------------------------------------------------------------

@dataclasses.dataclass(frozen=True)
class BraidingFile:
    matrix: BraidingMatrix
    torsion: int
    generics: tuple[str, ...] = ()
    parity: tuple[int, ...] | None = None


def parse_braiding(text: str) -> BraidingFile:
    """``key = value`` lines: torsion, generics, theta, constraints, ``row i = ...``, parity."""
    keys: dict[str, str] = {}
    rows: dict[int, str] = {}
    for n, line in _lines(text):
        if "=" not in line:
            raise FormatError(f"line {n}: expected 'key = value'")
        key, value = (s.strip() for s in line.split("=", 1))
        m = re.fullmatch(r"row\s+(\d+)", key)
        if m:
            i = int(m.group(1))
            if i in rows:
                raise FormatError(f"line {n}: row {i} given twice")
            rows[i] = value
        elif key in ("torsion", "generics", "theta", "constraints", "parity"):
            if key in keys:
                raise FormatError(f"line {n}: key {key!r} given twice")
            keys[key] = value
        else:
            raise FormatError(f"line {n}: unknown key {key!r}")
    try:
        torsion = int(keys.get("torsion", "1"))
        theta = int(keys["theta"]) if "theta" in keys else len(rows)
    except ValueError as e:
        raise FormatError(f"bad integer: {e}") from None
    if torsion < 1 or theta < 1:
        raise FormatError("torsion and theta must be positive")
    if sorted(rows) != list(range(1, theta + 1)):
        raise FormatError(f"expected rows 1..{theta}, got {sorted(rows)}")
    generics = tuple(keys.get("generics", "").split())
    try:
        entries = []
        for i in range(1, theta + 1):
            row = [parse_scalar(tok, torsion) for tok in rows[i].split()]
            if len(row) != theta:
                raise FormatError(f"row {i} has {len(row)} entries, expected {theta}")
            entries.append(row)
        constraints = tuple(parse_scalar(tok, torsion) for tok in keys.get("constraints", "").split())
    except FormatError:
        raise
    except ValueError as e:
        raise FormatError(str(e)) from None
    used = {name for row in entries for s in row for name, _ in s.generic_exps}
    if not used <= set(generics):
        raise FormatError(f"undeclared generic parameters {sorted(used - set(generics))}")
    parity = None
    if "parity" in keys:
        toks = keys["parity"].split()
        if len(toks) != theta or any(t not in ("0", "1") for t in toks):
            raise FormatError("parity needs theta entries in {0, 1}")
        parity = tuple(int(t) for t in toks)
    return BraidingFile(BraidingMatrix.from_rows(entries, constraints), torsion, generics, parity)


def serialize_braiding(f: BraidingFile) -> str:
    B = f.matrix
    out = [f"torsion = {f.torsion}"]
    if f.generics:
        out.append("generics = " + " ".join(f.generics))
    out.append(f"theta = {B.theta}")
    if B.constraints:
        out.append("constraints = " + " ".join(c.literal(f.torsion) for c in B.constraints))
    for i, row in enumerate(B.entries, 1):
        out.append(f"row {i} = " + " ".join(s.literal(f.torsion) for s in row))
    if f.parity is not None:
        out.append("parity = " + " ".join(map(str, f.parity)))
    return "\n".join(out) + "\n"


def braiding_file(B: BraidingMatrix, parity=None) -> BraidingFile:
    """Wrap a matrix, picking the smallest ambient torsion that writes every entry as z^k."""
    orders = [s.reduced().torsion_order for row in B.entries for s in row]
    orders += [c.reduced().torsion_order for c in B.constraints]
    return BraidingFile(B, lcm(*orders), tuple(sorted(B.generics())), parity)


# ---------------------------------------------------------------------------
# Coefficients in Q(zeta_L)
# ---------------------------------------------------------------------------

_TERM = re.compile(r"^(?:(?P<num>\d+(?:/\d+)?)\*?)?(?P<z>z(?:\^(?P<exp>-?\d+))?)?$")


def parse_coefficient(text: str, order: int) -> CycNumber:
    """Sums like ``1``, ``-1/2``, ``2*z^3 - z``; z is zeta_order."""
    s = text.replace(" ", "")
    if not s:
        raise FormatError("empty coefficient")
    terms = re.findall(r"[+-]?(?:\^-?\d+|[^+\-^])+", s)
    if "".join(terms) != s:
        raise FormatError(f"malformed coefficient {text!r}")
    acc = CycNumber(order, [])
    for t in terms:
        sign = -1 if t.startswith("-") else 1
        body = t.lstrip("+-")
        m = _TERM.match(body)
        if not m or (m.group("num") is None and m.group("z") is None):
            raise FormatError(f"malformed coefficient term {t!r}")
        c = Fraction(m.group("num")) if m.group("num") else Fraction(1)
        if m.group("z"):
            e = int(m.group("exp")) if m.group("exp") else 1
            acc = acc + CycNumber.root(order, e) * (sign * c)
        else:
            acc = acc + CycNumber(order, [sign * c])
    return acc


def format_coefficient(c: CycNumber, order: int) -> str:
    c = c.embed(order) if c.order != order else c
    parts = []
    for k, a in enumerate(c.coeffs):
        if not a:
            continue
        mag = abs(a)
        if k == 0:
            body = str(mag)
        elif mag == 1:
            body = f"z^{k}"
        else:
            body = f"{mag}*z^{k}"
        parts.append(("-" if a < 0 else "+") + body)
    if not parts:
        return "0"
    s = " ".join(p[0] + " " + p[1:] for p in parts)
    return s[2:] if s.startswith("+ ") else "-" + s[2:]


# ---------------------------------------------------------------------------
# Hopf superalgebra presentations
# ---------------------------------------------------------------------------

def parse_hopf(text: str) -> SuperHopfPresentation:
    """Header ``field = L``, ``dim = n``, ``labels = ...``, ``parity = ...`` then sparse lines

        unit -> k : c          mult i j -> k : c       comult i -> j k : c
        counit i : c           antipode i -> j : c     grouplike i : c, j : c

    Indices are 1-based.
    """
    head: dict[str, str] = {}
    body: list[tuple[int, str]] = []
    for n, line in _lines(text):
        m = re.fullmatch(r"(field|dim|labels|parity)\s*=\s*(.*)", line)
        if m:
            if m.group(1) in head:
                raise FormatError(f"line {n}: {m.group(1)!r} given twice")
            head[m.group(1)] = m.group(2)
        else:
            body.append((n, line))
    try:
        L = int(head.get("field", "1"))
        n = int(head["dim"])
    except (KeyError, ValueError):
        raise FormatError("header needs 'dim = n' (and optionally 'field = L')") from None
    labels = head.get("labels", " ".join(f"b{k + 1}" for k in range(n))).split()
    ptoks = head.get("parity", " ".join("0" * n)).split()
    if len(labels) != n or len(ptoks) != n or any(t not in ("0", "1") for t in ptoks):
        raise FormatError("labels and parity need one entry per basis vector")
    mult, unit, comult, counit, antipode, groups = {}, {}, {}, {}, {}, []

    def idx(tok: str, line_no: int) -> int:
        try:
            k = int(tok)
        except ValueError:
            raise FormatError(f"line {line_no}: bad index {tok!r}") from None
        if not 1 <= k <= n:
            raise FormatError(f"line {line_no}: index {k} out of range 1..{n}")
        return k - 1

    def put(d, key, sub, c):
        d.setdefault(key, {})
        if sub in d[key]:
            raise FormatError(f"duplicate entry {key} {sub}")
        d[key][sub] = c

    for line_no, line in body:
        words = line.split(None, 1)
        kind, rest = words[0], words[1] if len(words) > 1 else ""
        try:
            if kind == "grouplike":
                g = {}
                for part in rest.split(","):
                    i, c = part.split(":")
                    g[idx(i.strip(), line_no)] = parse_coefficient(c, L)
                groups.append(g)
                continue
            lhs, coeff = rest.rsplit(":", 1)
            c = parse_coefficient(coeff, L)
            if kind == "counit":
                counit[idx(lhs.strip(), line_no)] = c
                continue
            src, dst = (s.split() for s in lhs.split("->"))
        except ValueError:
            raise FormatError(f"line {line_no}: malformed {kind!r} entry") from None
        if kind == "unit" and not src and len(dst) == 1:
            unit[idx(dst[0], line_no)] = c
        elif kind == "mult" and len(src) == 2 and len(dst) == 1:
            put(mult, (idx(src[0], line_no), idx(src[1], line_no)), idx(dst[0], line_no), c)
        elif kind == "comult" and len(src) == 1 and len(dst) == 2:
            put(comult, idx(src[0], line_no), (idx(dst[0], line_no), idx(dst[1], line_no)), c)
        elif kind == "antipode" and len(src) == 1 and len(dst) == 1:
            put(antipode, idx(src[0], line_no), idx(dst[0], line_no), c)
        else:
            raise FormatError(f"line {line_no}: malformed {kind!r} entry")
    return SuperHopfPresentation(L, labels, [int(t) for t in ptoks], mult, unit, comult, counit,
                                 antipode, tuple(groups))


def serialize_hopf(H: SuperHopfPresentation) -> str:
    L = H.order
    fc = lambda c: format_coefficient(c, L)
    out = [f"field = {L}", f"dim = {H.dim}", "labels = " + " ".join(H.labels),
           "parity = " + " ".join(map(str, H.parity))]
    for k, c in sorted(H.unit.items()):
        out.append(f"unit -> {k + 1} : {fc(c)}")
    for (i, j) in sorted(H.mult):
        for k, c in sorted(H.mult[(i, j)].items()):
            out.append(f"mult {i + 1} {j + 1} -> {k + 1} : {fc(c)}")
    for i in sorted(H.comult):
        for (j, k), c in sorted(H.comult[i].items()):
            out.append(f"comult {i + 1} -> {j + 1} {k + 1} : {fc(c)}")
    for i, c in sorted(H.counit.items()):
        out.append(f"counit {i + 1} : {fc(c)}")
    for i in sorted(H.antipode):
        for j, c in sorted(H.antipode[i].items()):
            out.append(f"antipode {i + 1} -> {j + 1} : {fc(c)}")
    for g in H.grouplikes:
        out.append("grouplike " + ", ".join(f"{k + 1} : {fc(c)}" for k, c in sorted(g.items())))
    return "\n".join(out) + "\n"

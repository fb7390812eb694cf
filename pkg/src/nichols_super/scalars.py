"""
Exact scalars for diagonal braidings.

Two kinds of numbers live here:

* ``UnityScalar`` -- an element of the multiplicative group generated by a root of
  unity and finitely many formal "generic" parameters.  Every braiding entry is one
  of these.  Generic parameters are treated as non-torsion and independent, which
  makes equality and multiplicative order decidable.
* ``CycNumber`` -- an element of the cyclotomic field Q(zeta_L), stored densely as
  rational coefficients modulo the L-th cyclotomic polynomial.  Used whenever an
  actual linear combination has to be decided equal to zero.

``CycLaurent`` combines both: a Laurent polynomial in the generic parameters with
cyclotomic coefficients.  Elements of the tensor algebra carry these as coefficients
so that symbolic verification works when nothing forces a specialization.
"""
from __future__ import annotations

import dataclasses
import functools
import math
import re
from fractions import Fraction
from typing import Iterable, Mapping, Union

import numpy as np

Rational = Union[int, Fraction]


def lcm(*args: int) -> int:
    out = 1
    for a in args:
        out = out * a // math.gcd(out, a)
    return out


# ---------------------------------------------------------------------------
# Cyclotomic polynomials and the field Q(zeta_L)
# ---------------------------------------------------------------------------

def _poly_divmod_int(num: list[int], den: list[int]) -> tuple[list[int], list[int]]:
    # den must be monic
    num = list(num)
    q = [0] * max(len(num) - len(den) + 1, 1)
    for shift in range(len(num) - len(den), -1, -1):
        c = num[shift + len(den) - 1]
        if c:
            q[shift] = c
            for k, d in enumerate(den):
                num[shift + k] -= c * d
    return q, num[: len(den) - 1]


@functools.lru_cache(maxsize=None)
def cyclotomic_poly(n: int) -> tuple[int, ...]:
    """Coefficients (constant term first) of the n-th cyclotomic polynomial.

    >>> cyclotomic_poly(6)
    (1, -1, 1)
    """
    if n < 1:
        raise ValueError("order must be positive")
    num = [-1] + [0] * (n - 1) + [1]
    for d in range(1, n):
        if n % d == 0:
            num, rem = _poly_divmod_int(num, list(cyclotomic_poly(d)))
            assert not any(rem)
    while len(num) > 1 and num[-1] == 0:
        num.pop()
    return tuple(num)


def totient(n: int) -> int:
    return len(cyclotomic_poly(n)) - 1


@functools.lru_cache(maxsize=None)
def power_table(L: int) -> np.ndarray:
    """Integer matrix P with row k = coefficients of t^k mod Phi_L, for 0 <= k < L."""
    phi = cyclotomic_poly(L)
    deg = len(phi) - 1
    rows = np.zeros((L, deg), dtype=np.int64)
    cur = [0] * deg
    if deg:
        cur[0] = 1
    for k in range(L):
        rows[k] = cur
        # multiply by t and reduce
        top = cur[-1] if deg else 0
        cur = [0] + cur[:-1]
        if top:
            cur = [c - top * p for c, p in zip(cur, phi[:-1])]
    rows.setflags(write=False)
    return rows


@functools.lru_cache(maxsize=None)
def companion_powers(L: int) -> np.ndarray:
    """Array C[k] = matrix of multiplication by zeta_L^k in the power basis, k < phi(L)."""
    P = power_table(L)
    deg = P.shape[1]
    out = np.zeros((deg, deg, deg), dtype=np.int64)
    for k in range(deg):
        for j in range(deg):
            out[k, :, j] = P[(k + j) % L]
    return out


def reduce_cyclic(vec: np.ndarray, L: int) -> np.ndarray:
    """Map coefficients in Z[t]/(t^L - 1) (last axis of length L) to Z[t]/Phi_L."""
    return vec @ power_table(L)


class CycNumber:
    """Element of Q(zeta_L), kept reduced modulo Phi_L.

    >>> z = CycNumber.root(3, 1)
    >>> (1 + z + z * z).is_zero()
    True
    """

    __slots__ = ("order", "coeffs")

    def __init__(self, order: int, coeffs: Iterable[Rational] = ()):
        phi = cyclotomic_poly(order)
        deg = len(phi) - 1
        cs = [Fraction(c) for c in coeffs]
        # reduce modulo Phi_L
        for top in range(len(cs) - 1, deg - 1, -1):
            c = cs[top]
            if c:
                base = top - deg
                for k in range(deg):
                    cs[base + k] -= c * phi[k]
        cs = cs[:deg] + [Fraction(0)] * (deg - len(cs))
        self.order = order
        self.coeffs = tuple(cs)

    @classmethod
    def root(cls, order: int, exp: int) -> CycNumber:
        return cls(order, [int(c) for c in power_table(order)[exp % order]])

    @classmethod
    def from_int_cyclic(cls, order: int, vec: Iterable[int]) -> CycNumber:
        """Build from coefficients of 1, t, ..., t^(L-1)."""
        red = reduce_cyclic(np.asarray(list(vec), dtype=np.int64), order)
        return cls(order, [int(c) for c in red])

    @classmethod
    def coerce(cls, x: CycNumber | Rational, order: int = 1) -> CycNumber:
        if isinstance(x, CycNumber):
            return x
        return cls(order, [x])

    def embed(self, order: int) -> CycNumber:
        """View this number inside Q(zeta_order); order must be a multiple."""
        if order == self.order:
            return self
        if order % self.order:
            raise ValueError(f"cannot embed Q(zeta_{self.order}) into Q(zeta_{order})")
        step = order // self.order
        acc = [Fraction(0)] * (step * len(self.coeffs) + 1)
        for k, c in enumerate(self.coeffs):
            acc[k * step] += c
        return CycNumber(order, acc)

    def _common(self, other) -> tuple[CycNumber, CycNumber]:
        if not isinstance(other, CycNumber):
            other = CycNumber(self.order, [other])
        if other.order == self.order:
            return self, other
        L = lcm(self.order, other.order)
        return self.embed(L), other.embed(L)

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            if not self.coeffs:
                return self
            return CycNumber(self.order, (self.coeffs[0] + other,) + self.coeffs[1:])
        a, b = self._common(other)
        return CycNumber(a.order, [x + y for x, y in zip(a.coeffs, b.coeffs)])

    __radd__ = __add__

    def __neg__(self):
        return CycNumber(self.order, [-c for c in self.coeffs])

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return CycNumber(self.order, [c * other for c in self.coeffs])
        a, b = self._common(other)
        prod = [Fraction(0)] * max(len(a.coeffs) + len(b.coeffs) - 1, 0)
        for i, x in enumerate(a.coeffs):
            if x:
                for j, y in enumerate(b.coeffs):
                    if y:
                        prod[i + j] += x * y
        return CycNumber(a.order, prod)

    __rmul__ = __mul__

    def inverse(self) -> CycNumber:
        """Multiplicative inverse via the extended Euclidean algorithm against Phi_L."""
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero in a cyclotomic field")
        a = _trim(list(self.coeffs))
        m = [Fraction(c) for c in cyclotomic_poly(self.order)]
        # invariant: s*a == r (mod m)
        r0, r1 = m, a
        s0, s1 = [Fraction(0)], [Fraction(1)]
        while len(r1) > 1 or (len(r1) == 1 and r1[0] == 0):
            q, r = _poly_divmod_q(r0, r1)
            r0, r1 = r1, r
            s0, s1 = s1, _poly_sub(s0, _poly_mul(q, s1))
            if not r1:
                break
        if not r1:
            # gcd is r0; a and Phi are coprime, so this only happens for constants
            raise ZeroDivisionError("non-invertible cyclotomic element")
        c = r1[0]
        return CycNumber(self.order, [x / c for x in s1])

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return CycNumber(self.order, [c / other for c in self.coeffs])
        return self * CycNumber.coerce(other, self.order).inverse()

    def __rtruediv__(self, other):
        return CycNumber.coerce(other, self.order) * self.inverse()

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        out = CycNumber(self.order, [1])
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def __bool__(self):
        return not self.is_zero()

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return (self - other).is_zero()
        if not isinstance(other, CycNumber):
            return NotImplemented
        a, b = self._common(other)
        return a.coeffs == b.coeffs

    # equal values may live in different ambient fields, so no canonical hash
    __hash__ = None

    def to_complex(self) -> complex:
        z = complex(math.cos(2 * math.pi / self.order), math.sin(2 * math.pi / self.order))
        return sum(float(c) * z ** k for k, c in enumerate(self.coeffs))

    def __repr__(self):
        terms = []
        for k, c in enumerate(self.coeffs):
            if c:
                mono = "" if k == 0 else ("z" if k == 1 else f"z^{k}")
                terms.append(f"{c}{'*' if mono else ''}{mono}")
        return f"Cyc{self.order}({' + '.join(terms) or '0'})"


def _trim(p: list[Fraction]) -> list[Fraction]:
    p = [Fraction(c) for c in p]
    while len(p) > 1 and p[-1] == 0:
        p.pop()
    return p


def _poly_mul(a, b):
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return _trim(out)


def _poly_sub(a, b):
    n = max(len(a), len(b))
    a = list(a) + [Fraction(0)] * (n - len(a))
    b = list(b) + [Fraction(0)] * (n - len(b))
    return _trim([x - y for x, y in zip(a, b)])


def _poly_divmod_q(num, den):
    num = _trim(num)
    den = _trim(den)
    if len(num) < len(den):
        return [Fraction(0)], num
    q = [Fraction(0)] * (len(num) - len(den) + 1)
    num = list(num)
    lead = den[-1]
    for shift in range(len(num) - len(den), -1, -1):
        c = num[shift + len(den) - 1] / lead
        q[shift] = c
        if c:
            for k, d in enumerate(den):
                num[shift + k] -= c * d
    rem = _trim(num[: len(den) - 1] or [Fraction(0)])
    if len(rem) == 1 and rem[0] == 0:
        rem = []
    return _trim(q), rem


def cyc_arith(a: CycNumber, b: CycNumber | None, op: str):
    """Dispatch helper: op in {'add', 'mul', 'inv', 'eq'}."""
    if op == "add":
        return a + b
    if op == "mul":
        return a * b
    if op == "inv":
        return a.inverse()
    if op == "eq":
        return a == b
    raise ValueError(f"unknown op {op!r}")


# ---------------------------------------------------------------------------
# The multiplicative group: roots of unity times generic parameters
# ---------------------------------------------------------------------------

@dataclasses.dataclass(frozen=True, eq=False)
class UnityScalar:
    """zeta_N^a * prod(name^e).

    ``torsion_order`` is the ambient N, ``torsion_exp`` is reduced mod N.  Equality
    and hashing ignore the ambient order: zeta_3 == zeta_6^2.

    >>> UnityScalar(6, 2).order()
    3
    >>> UnityScalar.parse("z^3*q^-2", 4)
    UnityScalar('z^3*q^-2' @4)
    """

    torsion_order: int = 1
    torsion_exp: int = 0
    generic_exps: tuple[tuple[str, int], ...] = ()

    def __post_init__(self):
        if self.torsion_order < 1:
            raise ValueError("torsion order must be positive")
        object.__setattr__(self, "torsion_exp", self.torsion_exp % self.torsion_order)
        gens = {}
        for name, e in self.generic_exps:
            gens[name] = gens.get(name, 0) + e
        object.__setattr__(
            self, "generic_exps", tuple(sorted((n, e) for n, e in gens.items() if e))
        )

    # constructors --------------------------------------------------------
    @classmethod
    def root(cls, order: int, exp: int = 1) -> UnityScalar:
        return cls(order, exp)

    @classmethod
    def generic(cls, name: str, exp: int = 1) -> UnityScalar:
        return cls(1, 0, ((name, exp),))

    @classmethod
    def parse(cls, text: str, torsion: int = 1) -> UnityScalar:
        return parse_scalar(text, torsion)

    # group structure -----------------------------------------------------
    @property
    def phase(self) -> Fraction:
        return Fraction(self.torsion_exp, self.torsion_order)

    @property
    def generics(self) -> dict[str, int]:
        return dict(self.generic_exps)

    def __mul__(self, other: UnityScalar) -> UnityScalar:
        if not isinstance(other, UnityScalar):
            return NotImplemented
        N = lcm(self.torsion_order, other.torsion_order)
        a = self.torsion_exp * (N // self.torsion_order) + other.torsion_exp * (N // other.torsion_order)
        return UnityScalar(N, a, self.generic_exps + other.generic_exps)

    def inverse(self) -> UnityScalar:
        return UnityScalar(self.torsion_order, -self.torsion_exp,
                           tuple((n, -e) for n, e in self.generic_exps))

    def __truediv__(self, other: UnityScalar) -> UnityScalar:
        return self * other.inverse()

    def __pow__(self, k: int) -> UnityScalar:
        return UnityScalar(self.torsion_order, self.torsion_exp * k,
                           tuple((n, e * k) for n, e in self.generic_exps))

    def __neg__(self) -> UnityScalar:
        return self * MINUS_ONE

    def __eq__(self, other):
        if isinstance(other, int) and other in (1, -1):
            other = ONE if other == 1 else MINUS_ONE
        if not isinstance(other, UnityScalar):
            return NotImplemented
        return self.phase == other.phase and self.generic_exps == other.generic_exps

    def __hash__(self):
        return hash((self.phase, self.generic_exps))

    def is_one(self) -> bool:
        return self.torsion_exp == 0 and not self.generic_exps

    def is_torsion(self) -> bool:
        return not self.generic_exps

    def order(self) -> int | float:
        """Multiplicative order; ``math.inf`` as soon as a generic exponent is nonzero."""
        if self.generic_exps:
            return math.inf
        return self.torsion_order // math.gcd(self.torsion_exp, self.torsion_order)

    def reduced(self) -> UnityScalar:
        """Same value with the smallest ambient order."""
        g = math.gcd(self.torsion_exp, self.torsion_order)
        return UnityScalar(self.torsion_order // g, self.torsion_exp // g, self.generic_exps)

    def roots(self, k: int) -> list[UnityScalar]:
        """All k-th roots; empty if some generic exponent is not divisible by k."""
        if k < 1:
            raise ValueError("k must be positive")
        if any(e % k for _, e in self.generic_exps):
            return []
        gens = tuple((n, e // k) for n, e in self.generic_exps)
        base = self.reduced()
        N = base.torsion_order * k
        return [UnityScalar(N, base.torsion_exp + t * base.torsion_order, gens).reduced()
                for t in range(k)]

    def sort_key(self):
        return (self.generic_exps, self.phase)

    def literal(self, torsion: int | None = None) -> str:
        """Scalar literal in the CLI grammar, relative to ambient ``torsion``."""
        N = self.torsion_order if torsion is None else torsion
        parts = []
        ph = self.phase
        if ph:
            a = ph * N
            if a.denominator == 1:
                parts.append(f"z^{a.numerator}")
            else:
                parts.append(f"z^({a.numerator}/{a.denominator})")
        parts.extend(f"{n}^{e}" for n, e in self.generic_exps)
        return "*".join(parts) or "1"

    def __repr__(self):
        return f"UnityScalar({self.literal()!r} @{self.torsion_order})"


ONE = UnityScalar()
MINUS_ONE = UnityScalar(2, 1)

_FACTOR = re.compile(r"^\s*([A-Za-z_][A-Za-z_0-9]*)\s*(?:\^\s*(\(\s*-?\d+\s*/\s*\d+\s*\)|-?\d+))?\s*$")


def parse_scalar(text: str, torsion: int = 1) -> UnityScalar:
    """Parse ``z^INT`` / ``NAME^INT`` factors joined by ``*``; ``1`` is the identity.

    ``z`` stands for zeta_torsion.  ``z^(a/b)`` denotes zeta_(torsion*b)^a.
    """
    text = text.strip()
    if text in ("1", ""):
        return UnityScalar(torsion, 0)
    if text == "-1":
        return MINUS_ONE
    out = UnityScalar(torsion, 0)
    for factor in text.split("*"):
        m = _FACTOR.match(factor)
        if not m:
            raise ValueError(f"malformed scalar factor {factor!r}")
        name, exp = m.group(1), m.group(2)
        if exp is None:
            e = Fraction(1)
        elif exp.startswith("("):
            num, den = exp.strip("() ").split("/")
            e = Fraction(int(num), int(den))
        else:
            e = Fraction(int(exp))
        if name == "z":
            out = out * UnityScalar(torsion * e.denominator, e.numerator)
        else:
            if e.denominator != 1:
                raise ValueError("generic exponents must be integers")
            out = out * UnityScalar.generic(name, e.numerator)
    return out


def unity_order(s: UnityScalar) -> int | float:
    return s.order()


# ---------------------------------------------------------------------------
# q-numbers
# ---------------------------------------------------------------------------

@dataclasses.dataclass(frozen=True)
class SymbolicValue:
    """Result of a symbolic q-combinatorial evaluation: zero test plus a value
    whenever that value is a single monomial."""

    zero: bool
    monomial: UnityScalar | None = None

    def value(self) -> UnityScalar:
        if self.zero or self.monomial is None:
            raise ValueError("value is not a pure monomial; specialize first")
        return self.monomial


def q_number(n: int, q: UnityScalar | CycNumber):
    """(n)_q = 1 + q + ... + q^(n-1).

    For a ``UnityScalar`` returns a ``SymbolicValue``; for a ``CycNumber`` the exact value.
    """
    if n < 0:
        raise ValueError("n must be nonnegative")
    if isinstance(q, CycNumber):
        acc = CycNumber(q.order, [0])
        p = CycNumber(q.order, [1])
        for _ in range(n):
            acc = acc + p
            p = p * q
        return acc
    if n == 0:
        return SymbolicValue(True)
    if q.is_one():
        return SymbolicValue(False, None if n > 1 else ONE)
    ordq = q.order()
    zero = ordq != math.inf and n % ordq == 0
    return SymbolicValue(zero, ONE if n == 1 else None)


def q_factorial(n: int, q):
    """(n)_q! = prod_{k=1}^n (k)_q."""
    if isinstance(q, CycNumber):
        out = CycNumber(q.order, [1])
        for k in range(1, n + 1):
            out = out * q_number(k, q)
        return out
    zero = any(q_number(k, q).zero for k in range(1, n + 1))
    return SymbolicValue(zero, ONE if n <= 1 else None)


def q_binomial(n: int, j: int, q):
    """Gaussian binomial via the q-Pascal recursion.

    binom(n, j) = binom(n-1, j-1) + q^j binom(n-1, j).  For symbolic ``q`` only the
    zero test is available (q-Lucas), plus the value on the trivial edges j in {0, n}.
    """
    if not 0 <= j <= n:
        raise ValueError("need 0 <= j <= n")
    if isinstance(q, CycNumber):
        one = CycNumber(q.order, [1])
        row = [one]
        for m in range(1, n + 1):
            new = [one]
            for k in range(1, m):
                new.append(row[k - 1] + (q ** k) * row[k])
            new.append(one)
            row = new
        return row[j]
    if j in (0, n):
        return SymbolicValue(False, ONE)
    ordq = q.order()
    if q.is_one() or ordq == math.inf:
        return SymbolicValue(False)
    # q-Lucas: binom(n,j)_q = binom(n//N, j//N) * binom(n%N, j%N)_q at primitive N-th roots
    return SymbolicValue(j % ordq > n % ordq)


# ---------------------------------------------------------------------------
# Specialization of generic parameters
# ---------------------------------------------------------------------------

class SpecializationError(ValueError):
    pass


@dataclasses.dataclass(frozen=True)
class SpecializationMap:
    """Assign each generic parameter a root of unity zeta_L^c."""

    target_order: int
    assignments: Mapping[str, int] = dataclasses.field(default_factory=dict)

    def scalar(self, s: UnityScalar) -> UnityScalar:
        """The torsion UnityScalar obtained by substituting the assignments."""
        out = UnityScalar(s.torsion_order, s.torsion_exp)
        for name, e in s.generic_exps:
            if name not in self.assignments:
                raise SpecializationError(f"no assignment for generic parameter {name!r}")
            out = out * UnityScalar(self.target_order, self.assignments[name] * e)
        return out

    def check(self, constraints: Iterable[UnityScalar]) -> None:
        """Each constraint c encodes the side condition c != 1."""
        for c in constraints:
            if self.scalar(c).is_one():
                raise SpecializationError(f"specialization violates {c.literal()} != 1")


def specialize(s: UnityScalar, m: SpecializationMap) -> CycNumber:
    t = m.scalar(s)
    L = m.target_order
    ph = t.phase * L
    if ph.denominator != 1:
        raise SpecializationError(
            f"target order {L} is not divisible by the torsion order of {s.literal()}")
    return CycNumber.root(L, ph.numerator)


def scalar_to_cyc(s: UnityScalar, L: int | None = None) -> CycNumber:
    """Torsion scalar as a CycNumber in Q(zeta_L) (default: its own reduced order)."""
    if s.generic_exps:
        raise SpecializationError(f"{s.literal()} still has generic parameters")
    L = L or s.reduced().torsion_order
    return specialize(s, SpecializationMap(L))


# ---------------------------------------------------------------------------
# Laurent polynomials in the generic parameters with cyclotomic coefficients
# ---------------------------------------------------------------------------

class CycLaurent:
    """Finite sum  c_m * m  over generic monomials m with CycNumber coefficients.

    Zero testing is exact because distinct generic monomials are linearly
    independent over Q(zeta).
    """

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[tuple, CycNumber] | None = None):
        self.terms = {k: v for k, v in (terms or {}).items() if not v.is_zero()}

    @classmethod
    def from_scalar(cls, s: UnityScalar, factor: Rational = 1) -> CycLaurent:
        red = UnityScalar(s.torsion_order, s.torsion_exp).reduced()
        return cls({s.generic_exps: CycNumber.root(red.torsion_order, red.torsion_exp) * factor})

    @classmethod
    def constant(cls, c: Rational | CycNumber) -> CycLaurent:
        return cls({(): CycNumber.coerce(c)})

    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other: CycLaurent) -> CycLaurent:
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out[k] + v if k in out else v
        return CycLaurent(out)

    def __neg__(self):
        return CycLaurent({k: -v for k, v in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, s: UnityScalar) -> CycLaurent:
        c = CycLaurent.from_scalar(s)
        return self * c

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, CycNumber)):
            return CycLaurent({k: v * other for k, v in self.terms.items()})
        out: dict[tuple, CycNumber] = {}
        for k1, v1 in self.terms.items():
            for k2, v2 in other.terms.items():
                key = UnityScalar(1, 0, k1 + k2).generic_exps
                val = v1 * v2
                out[key] = out[key] + val if key in out else val
        return CycLaurent(out)

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, CycLaurent):
            return NotImplemented
        return (self - other).is_zero()

    def __hash__(self):  # pragma: no cover - values are not used as dict keys
        return hash(tuple(sorted(self.terms)))

    def cyc(self) -> CycNumber:
        """The coefficient when no generic parameter occurs."""
        if any(self.terms.keys() - {()}):
            raise SpecializationError("coefficient depends on generic parameters")
        return self.terms.get((), CycNumber(1, [0]))

    def specialize(self, m: SpecializationMap) -> CycNumber:
        acc = CycNumber(m.target_order, [0])
        for key, v in self.terms.items():
            acc = acc + v * specialize(UnityScalar(1, 0, key), m)
        return acc

    def __repr__(self):
        if not self.terms:
            return "0"
        return " + ".join(f"{v}*{UnityScalar(1, 0, k).literal()}" for k, v in sorted(self.terms.items()))

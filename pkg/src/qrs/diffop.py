"""Difference operators in the dynamical coordinates.

A :class:`DiffOp` is a finite sum ``sum_m c_m(w) T^m`` in normal form
(coefficient to the left), where ``T_i`` is the elementary shift
``y_i -> y_i + 2``, i.e. ``w_i -> q w_i`` and ``u_i -> q^2 u_i``.  Acting on a
function ``phi``: ``(c T^m phi)(w) = c(w) phi(q^m w)``.

Coefficients are :class:`CoeffExpr` trees over rational constants and the
symbols ``q``, ``qh`` (``q^(1/2)``), ``w_i`` (``q^(t_i)``) and ``u_i``
(``q^(y_i) = w_i^2``).  Equality of operators is decided by exact evaluation
at random points (polynomial identity testing), never by simplification.

Prefix grammar used for serialization::

    expr  := RAT | "q" | "qh" | "(w I)" | "(u I)"
           | "(+ expr expr)" | "(- expr expr)" | "(* expr expr)" | "(/ expr expr)"
           | "(^ expr INT)" | "(neg expr)" | "(shift (INT ...) expr)"

``RAT`` is ``p`` or ``p/q``; indices ``I`` are 1-based.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from fractions import Fraction

from .report import Report
from .scalars import ParamPoint, SingularPoint, derive_seed, sample_point


class CoeffExpr:
    """Base class; subclasses are frozen dataclasses compared structurally."""

    __slots__ = ()

    def __add__(self, other):
        return add(self, as_expr(other))

    def __radd__(self, other):
        return add(as_expr(other), self)

    def __sub__(self, other):
        return sub(self, as_expr(other))

    def __rsub__(self, other):
        return sub(as_expr(other), self)

    def __mul__(self, other):
        return mul(self, as_expr(other))

    def __rmul__(self, other):
        return mul(as_expr(other), self)

    def __truediv__(self, other):
        return div(self, as_expr(other))

    def __rtruediv__(self, other):
        return div(as_expr(other), self)

    def __neg__(self):
        if isinstance(self, Const):
            return Const(-self.value)
        return Neg(self)

    def __pow__(self, k: int):
        if not isinstance(k, int):
            raise TypeError("only integer powers")
        if k == 1:
            return self
        if k == 0:
            return ONE
        if isinstance(self, Const):
            return Const(self.value ** k)
        return Pow(self, k)

    def __call__(self, pt, shift=None) -> Fraction:
        return evaluate(self, pt, shift)

    def __str__(self):
        return to_prefix(self)


@dataclass(frozen=True, eq=True)
class Const(CoeffExpr):
    value: Fraction


@dataclass(frozen=True, eq=True)
class Sym(CoeffExpr):
    name: str  # "q" | "qh" | "w" | "u"
    index: int = 0  # 1-based for w and u


@dataclass(frozen=True, eq=True)
class Bin(CoeffExpr):
    op: str  # "+" "-" "*" "/"
    a: CoeffExpr
    b: CoeffExpr


@dataclass(frozen=True, eq=True)
class Neg(CoeffExpr):
    a: CoeffExpr


@dataclass(frozen=True, eq=True)
class Pow(CoeffExpr):
    a: CoeffExpr
    k: int


@dataclass(frozen=True, eq=True)
class Shift(CoeffExpr):
    """Lazy substitution ``w_i -> q^{m_i} w_i`` inside ``a``."""

    m: tuple
    a: CoeffExpr


ZERO = Const(Fraction(0))
ONE = Const(Fraction(1))
Q = Sym("q")
QH = Sym("qh")


def W(i: int) -> Sym:
    return Sym("w", i)


def U(i: int) -> Sym:
    return Sym("u", i)


def const(x) -> Const:
    return Const(Fraction(x))


def as_expr(x) -> CoeffExpr:
    if isinstance(x, CoeffExpr):
        return x
    return Const(Fraction(x))


def is_zero(e: CoeffExpr) -> bool:
    return isinstance(e, Const) and e.value == 0


def add(a, b):
    if is_zero(a):
        return b
    if is_zero(b):
        return a
    if isinstance(a, Const) and isinstance(b, Const):
        return Const(a.value + b.value)
    return Bin("+", a, b)


def sub(a, b):
    if is_zero(b):
        return a
    if isinstance(a, Const) and isinstance(b, Const):
        return Const(a.value - b.value)
    return Bin("-", a, b)


def mul(a, b):
    if is_zero(a) or is_zero(b):
        return ZERO
    if a == ONE:
        return b
    if b == ONE:
        return a
    if isinstance(a, Const) and isinstance(b, Const):
        return Const(a.value * b.value)
    return Bin("*", a, b)


def div(a, b):
    if isinstance(b, Const):
        if b.value == 0:
            raise SingularPoint("division by the constant 0")
        if isinstance(a, Const):
            return Const(a.value / b.value)
        if b.value == 1:
            return a
    if is_zero(a):
        return ZERO
    return Bin("/", a, b)


def substitute(e: CoeffExpr, m) -> CoeffExpr:
    """``sigma^m``: replace ``w_i`` by ``q^{m_i} w_i`` (and ``u_i`` by ``q^{2 m_i} u_i``)."""
    m = tuple(m)
    if not any(m) or isinstance(e, Const) or e in (Q, QH):
        return e
    if isinstance(e, Shift):
        total = tuple(x + y for x, y in zip(e.m, m))
        return e.a if not any(total) else Shift(total, e.a)
    return Shift(m, e)


def expand_shift(e: CoeffExpr, m=None) -> CoeffExpr:
    """Push pending substitutions down to the symbols (no lazy nodes left)."""
    if isinstance(e, Shift):
        total = e.m if m is None else tuple(x + y for x, y in zip(e.m, m))
        return expand_shift(e.a, total)
    if isinstance(e, Sym):
        if m is None or e.name in ("q", "qh"):
            return e
        k = m[e.index - 1]
        if k == 0:
            return e
        return mul(Pow(Q, k if e.name == "w" else 2 * k), e)
    if isinstance(e, Const):
        return e
    if isinstance(e, Bin):
        return Bin(e.op, expand_shift(e.a, m), expand_shift(e.b, m))
    if isinstance(e, Neg):
        return Neg(expand_shift(e.a, m))
    if isinstance(e, Pow):
        return Pow(expand_shift(e.a, m), e.k)
    raise TypeError(e)


def evaluate(e: CoeffExpr, pt, shift=None) -> Fraction:
    """Exact value at ``pt``, optionally at the shifted point ``w -> q^shift w``."""
    if isinstance(e, Const):
        return e.value
    if isinstance(e, Sym):
        if e.name == "q":
            return pt.q
        if e.name == "qh":
            return pt.q_half
        k = 0 if shift is None else shift[e.index - 1]
        if e.name == "w":
            return pt.w[e.index - 1] * pt.q ** k
        if e.name == "u":
            return pt.u[e.index - 1] * pt.q ** (2 * k)
        raise ValueError(e.name)
    if isinstance(e, Bin):
        a = evaluate(e.a, pt, shift)
        b = evaluate(e.b, pt, shift)
        if e.op == "+":
            return a + b
        if e.op == "-":
            return a - b
        if e.op == "*":
            return a * b
        if b == 0:
            raise SingularPoint(f"denominator {to_prefix(e.b)} vanishes")
        return a / b
    if isinstance(e, Neg):
        return -evaluate(e.a, pt, shift)
    if isinstance(e, Pow):
        base = evaluate(e.a, pt, shift)
        if base == 0 and e.k < 0:
            raise SingularPoint(f"negative power of vanishing {to_prefix(e.a)}")
        return base ** e.k
    if isinstance(e, Shift):
        total = e.m if shift is None else tuple(x + y for x, y in zip(e.m, shift))
        return evaluate(e.a, pt, total)
    raise TypeError(e)


# -- prefix serialization ----------------------------------------------------

def _rat(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def to_prefix(e: CoeffExpr) -> str:
    if isinstance(e, Const):
        return _rat(e.value)
    if isinstance(e, Sym):
        return e.name if e.name in ("q", "qh") else f"({e.name} {e.index})"
    if isinstance(e, Bin):
        return f"({e.op} {to_prefix(e.a)} {to_prefix(e.b)})"
    if isinstance(e, Neg):
        return f"(neg {to_prefix(e.a)})"
    if isinstance(e, Pow):
        return f"(^ {to_prefix(e.a)} {e.k})"
    if isinstance(e, Shift):
        return f"(shift ({' '.join(map(str, e.m))}) {to_prefix(e.a)})"
    raise TypeError(e)


_TOKEN = re.compile(r"\(|\)|[^\s()]+")


def parse_prefix(text: str) -> CoeffExpr:
    tokens = _TOKEN.findall(text)
    pos = 0

    def expect(tok):
        nonlocal pos
        if pos >= len(tokens) or tokens[pos] != tok:
            raise ValueError(f"expected {tok!r} at token {pos} in {text!r}")
        pos += 1

    def parse():
        nonlocal pos
        if pos >= len(tokens):
            raise ValueError(f"unexpected end of {text!r}")
        tok = tokens[pos]
        pos += 1
        if tok == "(":
            head = tokens[pos]
            pos += 1
            if head in ("w", "u"):
                out = Sym(head, int(tokens[pos]))
                pos += 1
            elif head in ("+", "-", "*", "/"):
                a = parse()
                b = parse()
                out = Bin(head, a, b)
            elif head == "neg":
                out = Neg(parse())
            elif head == "^":
                a = parse()
                out = Pow(a, int(tokens[pos]))
                pos += 1
            elif head == "shift":
                expect("(")
                m = []
                while tokens[pos] != ")":
                    m.append(int(tokens[pos]))
                    pos += 1
                expect(")")
                out = Shift(tuple(m), parse())
            else:
                raise ValueError(f"unknown head {head!r}")
            expect(")")
            return out
        if tok in ("q", "qh"):
            return Sym(tok)
        return Const(Fraction(tok))

    out = parse()
    if pos != len(tokens):
        raise ValueError(f"trailing tokens in {text!r}")
    return out


# -- operators ---------------------------------------------------------------

def _add_shift(a, b):
    return tuple(x + y for x, y in zip(a, b))


class DiffOp:
    """``sum_m c_m T^m`` with coefficients on the left."""

    __slots__ = ("n", "terms")

    def __init__(self, n: int, terms=None):
        self.n = n
        self.terms: dict[tuple, CoeffExpr] = {}
        for m, c in (terms or {}).items():
            m = tuple(m)
            if len(m) != n:
                raise ValueError(f"shift {m} has wrong length for n={n}")
            c = as_expr(c)
            if not is_zero(c):
                self.terms[m] = c

    @classmethod
    def identity(cls, n):
        return cls(n, {(0,) * n: ONE})

    @classmethod
    def shift(cls, n, i, k=1):
        """``T_i^k`` (``i`` 1-based)."""
        m = [0] * n
        m[i - 1] = k
        return cls(n, {tuple(m): ONE})

    @classmethod
    def mult(cls, n, c):
        """Multiplication operator ``M_c``."""
        return cls(n, {(0,) * n: as_expr(c)})

    def __add__(self, other: "DiffOp") -> "DiffOp":
        self._check(other)
        terms = dict(self.terms)
        for m, c in other.terms.items():
            terms[m] = add(terms[m], c) if m in terms else c
        return DiffOp(self.n, terms)

    def __neg__(self):
        return DiffOp(self.n, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __matmul__(self, other: "DiffOp") -> "DiffOp":
        return compose(self, other)

    def _check(self, other):
        if self.n != other.n:
            raise ValueError(f"operators on different numbers of variables ({self.n}, {other.n})")

    def structurally_equal(self, other: "DiffOp") -> bool:
        return self.n == other.n and self.terms == other.terms

    def support(self) -> set:
        return set(self.terms)

    def coeff(self, m) -> CoeffExpr:
        return self.terms.get(tuple(m), ZERO)

    def to_dict(self) -> dict:
        return {"n": self.n,
                "terms": [{"shift": list(m), "coeff": to_prefix(c)}
                          for m, c in sorted(self.terms.items())]}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    @classmethod
    def from_dict(cls, d) -> "DiffOp":
        return cls(int(d["n"]), {tuple(t["shift"]): parse_prefix(t["coeff"]) for t in d["terms"]})

    @classmethod
    def from_json(cls, s) -> "DiffOp":
        return cls.from_dict(json.loads(s))

    def __repr__(self):
        return f"DiffOp(n={self.n}, shifts={sorted(self.terms)})"


def compose(a: DiffOp, b: DiffOp) -> DiffOp:
    """``(c T^m)(d T^k) = c sigma^m(d) T^{m+k}``, extended bilinearly."""
    a._check(b)
    terms: dict[tuple, CoeffExpr] = {}
    for m, c in a.terms.items():
        for k, d in b.terms.items():
            key = _add_shift(m, k)
            t = mul(c, substitute(d, m))
            terms[key] = add(terms[key], t) if key in terms else t
    return DiffOp(a.n, terms)


def commutator(a: DiffOp, b: DiffOp) -> DiffOp:
    return compose(a, b) - compose(b, a)


def conjugate(g: CoeffExpr, op: DiffOp) -> DiffOp:
    """``M_g op M_g^-1``."""
    n = op.n
    return compose(compose(DiffOp.mult(n, g), op), DiffOp.mult(n, ONE / g))


def apply(op: DiffOp, f, pt) -> Fraction:
    """``(op f)(pt)`` for ``f`` a coefficient expression (e.g. a Laurent monomial)."""
    f = as_expr(f)
    return sum((evaluate(c, pt) * evaluate(f, pt, m) for m, c in op.terms.items()), Fraction(0))


def monomial(exponents, var: str = "w") -> CoeffExpr:
    """``prod_i var_i^{a_i}``."""
    out = ONE
    for i, a in enumerate(exponents, start=1):
        if a:
            out = mul(out, Sym(var, i) ** a)
    return out


def coefficient_values(op: DiffOp, pt) -> dict[tuple, Fraction]:
    return {m: evaluate(c, pt) for m, c in op.terms.items()}


def _points(n, l, trials, seed, bound):
    """Non-singular sample points, reseeding deterministically after each rejection."""
    k = 0
    while True:
        yield sample_point(n, l, derive_seed(seed, f"op_equal:{k}"), bound)
        k += 1


def op_equal(a: DiffOp, b: DiffOp, trials: int = 10, seed: int = 0, l: int = 1,
             bound: int = 16, max_rejects: int = 200) -> Report:
    """Shift-support equality plus coefficient agreement at random exact points.

    Points where a coefficient is singular are skipped and replaced; the
    singular locus itself is never tested.
    """
    a._check(b)
    rpt = Report("op_equal")
    if a.structurally_equal(b):
        rpt.add("structural", True, note="identical trees; 0 evaluations")
        return rpt
    shifts = sorted(a.support() | b.support())
    done = rejects = 0
    for pt in _points(a.n, l, trials, seed, bound):
        if done >= trials:
            break
        try:
            diffs = [(m, evaluate(a.coeff(m), pt) - evaluate(b.coeff(m), pt)) for m in shifts]
        except SingularPoint:
            rejects += 1
            if rejects > max_rejects:
                rpt.add("sampling", False, note="too many singular points")
                return rpt
            continue
        done += 1
        for m, d in diffs:
            if d != 0:
                rpt.add(f"shift {list(m)}", False, residual=d, point=pt.to_dict())
                return rpt
    rpt.add("coefficients", True,
            note=f"{done} points agree on {len(shifts)} shifts; singular locus untested")
    return rpt

"""Concrete representations of U_q(sl_n).

Two models are provided, both evaluated at a :class:`ParamPoint`:

* the fundamental (vector) representation, where ``e_i``, ``f_i``, ``h_i``
  are the matrix units ``E_{i,i+1}``, ``E_{i+1,i}`` and ``E_ii - E_{i+1,i+1}``;
* the q-symmetric monomial model of the highest weight ``(nl, 0, ..., 0)``
  module, on monomials ``x^m`` with ``|m| = nl``.

Indices of generators and root vectors are 1-based as in the usual
notation; matrix indices are 0-based.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb

from .linop import LinOp, commutator
from .report import Report
from .scalars import ParamPoint, qint


@dataclass(eq=False)
class RepSpace:
    """A based, weight-graded U_q(sl_n)-module with its generator matrices."""

    kind: str  # "fundamental" | "symmetric"
    n: int
    l: int | None
    pt: ParamPoint
    basis: list
    weights: list[tuple[int, ...]]  # h_1..h_{n-1} eigenvalues per basis vector
    e: list[LinOp]  # e[0] is e_1
    f: list[LinOp]
    h: list[LinOp]
    _cache: dict = field(default_factory=dict, repr=False)

    @property
    def dim(self) -> int:
        return len(self.basis)

    def index(self, label) -> int:
        idx = self._cache.get("index")
        if idx is None:
            idx = {b: k for k, b in enumerate(self.basis)}
            self._cache["index"] = idx
        return idx[tuple(label) if isinstance(label, (list, tuple)) else label]

    @property
    def v0(self) -> int:
        """Index of the zero-weight vector (symmetric model only)."""
        if self.kind != "symmetric":
            raise ValueError("v0 is defined for the symmetric representation")
        return self.index((self.l,) * self.n)

    def gen(self, kind: str, i: int) -> LinOp:
        if not 1 <= i <= self.n - 1:
            raise IndexError(f"simple index {i} out of range for sl_{self.n}")
        return {"e": self.e, "f": self.f, "h": self.h}[kind][i - 1]

    def identity(self) -> LinOp:
        return LinOp.identity(self.dim)

    def weight_shift(self, op: LinOp):
        """Common weight shift of a weight-homogeneous operator, else None.

        The zero operator returns the string ``"zero"``.
        """
        shift = None
        for (r, c), _ in op.entries():
            d = tuple(a - b for a, b in zip(self.weights[r], self.weights[c]))
            if shift is None:
                shift = d
            elif d != shift:
                return None
        return "zero" if shift is None else shift

    def k_power(self, i: int) -> LinOp:
        """``(q^{h_i} - q^{-h_i}) / (q - q^{-1})`` as a diagonal matrix."""
        return LinOp.diagonal(qint(w[i - 1], self.pt) for w in self.weights)

    def with_generator(self, kind: str, i: int, op: LinOp) -> "RepSpace":
        """Copy with one generator replaced (used for negative controls)."""
        gens = {"e": list(self.e), "f": list(self.f), "h": list(self.h)}
        gens[kind][i - 1] = op
        return RepSpace(self.kind, self.n, self.l, self.pt, self.basis, self.weights,
                        gens["e"], gens["f"], gens["h"])


def simple_root(n: int, i: int) -> tuple[int, ...]:
    """``alpha_i`` in h-eigenvalue coordinates (row ``i`` of the Cartan matrix)."""
    return tuple(cartan_matrix(n)[i - 1])


def cartan_matrix(n: int) -> list[list[int]]:
    return [[2 if a == b else (-1 if abs(a - b) == 1 else 0) for b in range(n - 1)]
            for a in range(n - 1)]


def root_weight(n: int, i: int, j: int) -> tuple[int, ...]:
    """``alpha_i + ... + alpha_{j-1}`` in h-eigenvalue coordinates."""
    out = [0] * (n - 1)
    for k in range(i, j):
        for a, v in enumerate(simple_root(n, k)):
            out[a] += v
    return tuple(out)


def fundamental_rep(n: int, pt: ParamPoint) -> RepSpace:
    if n < 2:
        raise ValueError("n must be >= 2")
    basis = list(range(1, n + 1))
    weights = [tuple((1 if a == i else 0) - (1 if a == i + 1 else 0) for i in range(1, n))
               for a in basis]
    e = [LinOp.unit(n, i - 1, i) for i in range(1, n)]
    f = [LinOp.unit(n, i, i - 1) for i in range(1, n)]
    h = [LinOp.diagonal(w[i - 1] for w in weights) for i in range(1, n)]
    return RepSpace("fundamental", n, None, pt, basis, weights, e, f, h)


def symmetric_basis(n: int, l: int) -> list[tuple[int, ...]]:
    """Exponent vectors of total degree ``nl``, highest weight first."""
    total = n * l
    out = []
    for bars in itertools.combinations(range(total + n - 1), n - 1):
        m, prev = [], -1
        for b in bars:
            m.append(b - prev - 1)
            prev = b
        m.append(total + n - 2 - prev)
        out.append(tuple(m))
    out.sort(reverse=True)
    return out


def symmetric_rep(n: int, l: int, pt: ParamPoint) -> RepSpace:
    """The ``(nl, 0, ..., 0)`` module in the q-symmetric monomial model.

    ``e_i x^m = [m_{i+1}] x^{m + eps_i - eps_{i+1}}`` and
    ``f_i x^m = [m_i] x^{m - eps_i + eps_{i+1}}``.
    """
    if n < 2 or l < 1:
        raise ValueError("need n >= 2 and l >= 1")
    basis = symmetric_basis(n, l)
    assert len(basis) == comb(n * l + n - 1, n - 1)
    index = {m: k for k, m in enumerate(basis)}
    d = len(basis)
    weights = [tuple(m[i] - m[i + 1] for i in range(n - 1)) for m in basis]
    e, f, h = [], [], []
    for i in range(n - 1):
        e_rows: dict[int, dict[int, Fraction]] = {}
        f_rows: dict[int, dict[int, Fraction]] = {}
        for col, m in enumerate(basis):
            if m[i + 1] > 0:
                t = list(m)
                t[i] += 1
                t[i + 1] -= 1
                e_rows.setdefault(index[tuple(t)], {})[col] = qint(m[i + 1], pt)
            if m[i] > 0:
                t = list(m)
                t[i] -= 1
                t[i + 1] += 1
                f_rows.setdefault(index[tuple(t)], {})[col] = qint(m[i], pt)
        e.append(LinOp(d, d, e_rows))
        f.append(LinOp(d, d, f_rows))
        h.append(LinOp.diagonal(w[i] for w in weights))
    return RepSpace("symmetric", n, l, pt, basis, weights, e, f, h)


def _check_indices(rep: RepSpace, i: int, j: int) -> None:
    if not (1 <= i < j <= rep.n):
        raise IndexError(f"root ({i},{j}) out of range for sl_{rep.n}")


def root_vector(rep: RepSpace, kind: str, i: int, j: int, k: int | None = None) -> LinOp:
    """Canonical root vector ``e_ij`` or ``f_ij``.

    ``e_ij = e_ik e_kj - q e_kj e_ik`` and ``f_ij = f_kj f_ik - q^-1 f_ik f_kj``;
    the split defaults to ``k = i + 1`` and the sub-vectors are built with
    their own default split.
    """
    _check_indices(rep, i, j)
    if kind not in ("e", "f"):
        raise ValueError(f"kind must be 'e' or 'f', got {kind!r}")
    if j == i + 1:
        return rep.gen(kind, i)
    if k is None:
        key = ("root", kind, i, j)
        if key in rep._cache:
            return rep._cache[key]
        k = i + 1
    else:
        key = None
        if not i < k < j:
            raise IndexError(f"split index {k} not strictly between {i} and {j}")
    a = root_vector(rep, kind, i, k)
    b = root_vector(rep, kind, k, j)
    q = rep.pt.q
    if kind == "e":
        out = a @ b - (b @ a).scale(q)
    else:
        out = b @ a - (a @ b).scale(1 / q)
    if key is not None:
        rep._cache[key] = out
    return out


def star_vector(rep: RepSpace, kind: str, i: int, j: int) -> LinOp:
    """``x_{j-1,j} x_{j-2,j-1} ... x_{i,i+1}`` for ``x`` in ``{e, f}``."""
    _check_indices(rep, i, j)
    key = ("star", kind, i, j)
    if key not in rep._cache:
        out = rep.gen(kind, i)
        for k in range(i + 1, j):
            out = rep.gen(kind, k) @ out
        rep._cache[key] = out
    return rep._cache[key]


def check_relations(rep: RepSpace) -> Report:
    """Defining relations and both cubic Serre relations, exact and entrywise."""
    n, q = rep.n, rep.pt.q
    A = cartan_matrix(n)
    rpt = Report(f"relations[{rep.kind}, n={n}, l={rep.l}]")
    r = range(1, n)
    ok = all(commutator(rep.gen("h", i), rep.gen("h", j)).is_zero() for i in r for j in r)
    rpt.add("[h_i,h_j]=0", ok)
    ok = True
    for i in r:
        for j in r:
            lhs = commutator(rep.gen("e", i), rep.gen("f", j))
            rhs = rep.k_power(i) if i == j else LinOp.zero(rep.dim)
            ok &= lhs == rhs
    rpt.add("[e_i,f_j]=delta_ij [h_i]", ok)
    ok_e = ok_f = True
    for i in r:
        for j in r:
            a = A[i - 1][j - 1]
            ok_e &= commutator(rep.gen("h", i), rep.gen("e", j)) == rep.gen("e", j).scale(a)
            ok_f &= commutator(rep.gen("h", i), rep.gen("f", j)) == rep.gen("f", j).scale(-a)
    rpt.add("[h_i,e_j]=a_ij e_j", ok_e)
    rpt.add("[h_i,f_j]=-a_ij f_j", ok_f)
    for kind in ("e", "f"):
        ok = all(commutator(rep.gen(kind, i), rep.gen(kind, j)).is_zero()
                 for i in r for j in r if abs(i - j) > 1)
        rpt.add(f"[{kind}_i,{kind}_j]=0 for |i-j|>1", ok)
    for kind in ("e", "f"):
        ok = True
        for i in r:
            for j in (i - 1, i + 1):
                if not 1 <= j <= n - 1:
                    continue
                x, y = rep.gen(kind, i), rep.gen(kind, j)
                lhs = x @ x @ y + y @ x @ x
                rhs = (x @ y @ x).scale(q + 1 / q)
                ok &= lhs == rhs
        rpt.add(f"cubic Serre ({kind})", ok)
    return rpt


def _chain_product(rep: RepSpace, kind: str, chain) -> LinOp:
    """``x_{i_{m-1} i_m} ... x_{i_1 i_2}`` (the first link acts first)."""
    out = rep.identity()
    for a, b in zip(chain, chain[1:]):
        out = root_vector(rep, kind, a, b) @ out
    return out


def _vector_ratio(lhs: dict, rhs: dict):
    """``c`` with ``lhs = c * rhs`` if it exists (``rhs`` nonzero), else None."""
    if not rhs:
        return None
    k0 = next(iter(rhs))
    c = lhs.get(k0, Fraction(0)) / rhs[k0]
    if set(lhs) - set(rhs):
        return None
    return c if all(lhs.get(k, 0) == c * v for k, v in rhs.items()) else None


def check_star_reduction(rep: RepSpace, chain) -> Report:
    """Chain products of root vectors against starred elements near ``v_0``.

    f-side: ``f_{i_{m-1} i_m} ... f_{i_1 i_2} v_0 = (q_l)^s f*_{i_1 i_m} v_0`` with
    ``q_l = [l+1] q^-l`` and ``s = m - 1 - i_m + i_1``.
    e-side: ``e_{i_{m-1} i_m} ... e_{i_1 i_2} w = ([l] q^l)^s e*_{i_1 i_m} w`` for
    ``w = f*_{i_1 i_m} v_0``.
    """
    chain = tuple(chain)
    if len(chain) < 2 or any(a >= b for a, b in zip(chain, chain[1:])):
        raise ValueError(f"chain {chain} must be strictly increasing of length >= 2")
    pt, l = rep.pt, rep.l
    i1, im, m = chain[0], chain[-1], len(chain)
    s = m - 1 - im + i1
    v0 = {rep.v0: Fraction(1)}
    rpt = Report(f"star reduction {chain}")

    lhs = _chain_product(rep, "f", chain).apply(v0)
    fstar = star_vector(rep, "f", i1, im).apply(v0)
    coeff = (qint(l + 1, pt) * pt.q ** -l) ** s
    rhs = {k: coeff * v for k, v in fstar.items()}
    rpt.add(f"f-chain {chain}", lhs == rhs and bool(rhs))

    w = fstar
    lhs = _chain_product(rep, "e", chain).apply(w)
    estar = star_vector(rep, "e", i1, im).apply(w)
    coeff = (qint(l, pt) * pt.q ** l) ** s
    rhs = {k: coeff * v for k, v in estar.items()}
    rpt.add(f"e-chain {chain}", lhs == rhs and bool(rhs))
    return rpt


def increasing_chains(n: int):
    """All strictly increasing chains of length >= 2 in ``1..n``."""
    for size in range(2, n + 1):
        yield from itertools.combinations(range(1, n + 1), size)


def check_ef(rep: RepSpace) -> Report:
    """``e*_ij f*_ij v_0 = ([l][l+1])^(j-i) v_0`` for all ``i < j``."""
    pt, l = rep.pt, rep.l
    v0 = {rep.v0: Fraction(1)}
    base = qint(l, pt) * qint(l + 1, pt)
    rpt = Report(f"e*f* v0 [n={rep.n}, l={l}]")
    for i in range(1, rep.n):
        for j in range(i + 1, rep.n + 1):
            out = (star_vector(rep, "e", i, j) @ star_vector(rep, "f", i, j)).apply(v0)
            expected = base ** (j - i)
            got = out.get(rep.v0, Fraction(0))
            ok = set(out) <= {rep.v0} and got == expected
            rpt.add(f"({i},{j})", ok, residual=got - expected)
    return rpt


def check_k_independence(rep: RepSpace) -> Report:
    """Root vectors agree for every admissible split index."""
    rpt = Report(f"k-independence[{rep.kind}, n={rep.n}, l={rep.l}]")
    for kind in ("e", "f"):
        for i in range(1, rep.n):
            for j in range(i + 2, rep.n + 1):
                ref = root_vector(rep, kind, i, j)
                for k in range(i + 1, j):
                    rpt.add(f"{kind}_({i},{j}) k={k}", root_vector(rep, kind, i, j, k=k) == ref)
    return rpt


def check_weight_homogeneity(rep: RepSpace) -> Report:
    """Generators and root vectors shift weights by the expected root."""
    n = rep.n
    rpt = Report(f"weights[{rep.kind}, n={n}, l={rep.l}]")
    for i in range(1, n):
        for j in range(i + 1, n + 1):
            alpha = root_weight(n, i, j)
            neg = tuple(-a for a in alpha)
            for kind, expect in (("e", alpha), ("f", neg)):
                sh = rep.weight_shift(root_vector(rep, kind, i, j))
                rpt.add(f"{kind}_({i},{j})", sh == expect or sh == "zero")
    return rpt

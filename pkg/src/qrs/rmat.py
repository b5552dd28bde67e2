"""The universal R-matrix ``R = K * Rhat`` in concrete representation pairs.

Operators on ``V1 (x) V2`` use the tensor index ``a * dim2 + b``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction

from .linop import LinOp
from .qsl import RepSpace, fundamental_rep, root_vector, star_vector, symmetric_rep
from .report import Report
from .scalars import ParamPoint, qfactorial, qint


class NotNilpotent(ValueError):
    """qexp received an argument that is not nilpotent."""


@dataclass(eq=False)
class TensorOp:
    """A LinOp on an ordered pair of spaces, with the roots its factors came from."""

    op: LinOp
    space1: RepSpace
    space2: RepSpace
    factors: list = field(default_factory=list)

    def __matmul__(self, other: "TensorOp") -> "TensorOp":
        return TensorOp(self.op @ other.op, self.space1, self.space2,
                        self.factors + other.factors)

    def __eq__(self, other):
        return isinstance(other, TensorOp) and self.op == other.op

    __hash__ = None

    def index(self, a: int, b: int) -> int:
        return a * self.space2.dim + b


def positive_roots(n: int) -> list[tuple[int, int]]:
    """Lexicographic order ``(1,2) < (1,3) < ... < (1,n) < (2,3) < ... < (n-1,n)``."""
    return [(i, j) for i in range(1, n) for j in range(i + 1, n + 1)]


def inverse_cartan(n: int) -> list[list[Fraction]]:
    """``(A^-1)_ij = min(i,j) - ij/n`` for sl_n."""
    return [[Fraction(min(i, j)) - Fraction(i * j, n) for j in range(1, n)]
            for i in range(1, n)]


def weight_pairing(n: int, lam, mu) -> Fraction:
    """``<lam, mu> = sum lam_i (A^-1)_ij mu_j`` on h-eigenvalue coordinates."""
    inv = inverse_cartan(n)
    return sum((lam[i] * inv[i][j] * mu[j] for i in range(n - 1) for j in range(n - 1)),
               Fraction(0))


def qexp(z: LinOp, pt: ParamPoint) -> LinOp:
    """``sum_k z^k / [k]!`` for nilpotent ``z``; the series stops at the first zero power."""
    if z.nrows != z.ncols:
        raise ValueError("qexp needs a square operator")
    out = LinOp.identity(z.nrows)
    power = LinOp.identity(z.nrows)
    for k in range(1, z.nrows + 2):
        power = power @ z
        if power.is_zero():
            return out
        out = out + power.scale(1 / qfactorial(k, pt))
    raise NotNilpotent(f"argument not nilpotent after {z.nrows + 1} powers")


def cartan_K(space1: RepSpace, space2: RepSpace, pt: ParamPoint | None = None) -> TensorOp:
    """Diagonal ``q^{<lam, mu>}``, realized as integer powers of ``tau^2 = q^(1/n)``."""
    pt = pt or space1.pt
    n = space1.n
    vals = [pt.qpow(weight_pairing(n, lam, mu)) for lam in space1.weights for mu in space2.weights]
    return TensorOp(LinOp.diagonal(vals), space1, space2, ["K"])


def root_factor(space1: RepSpace, space2: RepSpace, i: int, j: int, pt: ParamPoint) -> LinOp:
    q = pt.q
    z = root_vector(space1, "e", i, j).kron(root_vector(space2, "f", i, j)).scale(q - 1 / q)
    return qexp(z, pt)


def rhat(space1: RepSpace, space2: RepSpace, pt: ParamPoint | None = None,
         order: str = "decreasing") -> TensorOp:
    """Ordered product of ``exp_q((q - q^-1) e_a (x) f_a)`` over positive roots.

    ``order="decreasing"`` multiplies left to right from ``(n-1,n)`` down to
    ``(1,2)``, the order in which both mixed closed forms hold;
    ``"increasing"`` is kept for comparison.
    """
    pt = pt or space1.pt
    roots = positive_roots(space1.n)
    if order == "decreasing":
        roots = roots[::-1]
    elif order != "increasing":
        raise ValueError(f"unknown order {order!r}")
    out = LinOp.identity(space1.dim * space2.dim)
    for i, j in roots:
        out = out @ root_factor(space1, space2, i, j, pt)
    return TensorOp(out, space1, space2, list(roots))


def r_matrix(space1: RepSpace, space2: RepSpace, pt: ParamPoint | None = None,
             order: str = "decreasing", with_K: bool = True) -> TensorOp:
    rh = rhat(space1, space2, pt, order)
    return cartan_K(space1, space2, pt) @ rh if with_K else rh


def closed_first(space2: RepSpace, pt: ParamPoint | None = None) -> TensorOp:
    """``1 + (q - q^-1) sum_{i<j} E_ij (x) f_ij`` with the fundamental rep first."""
    pt = pt or space2.pt
    n, q = space2.n, pt.q
    fund = fundamental_rep(n, pt)
    out = LinOp.identity(n * space2.dim)
    for i, j in positive_roots(n):
        term = LinOp.unit(n, i - 1, j - 1).kron(root_vector(space2, "f", i, j))
        out = out + term.scale(q - 1 / q)
    return TensorOp(out, fund, space2, ["closed_first"])


def partitions(i: int, j: int):
    """Chains ``i = i_1 < i_2 < ... < i_m = j``."""
    inner = range(i + 1, j)
    for size in range(len(inner) + 1):
        for mid in itertools.combinations(inner, size):
            yield (i, *mid, j)


def chain_e_sum(space: RepSpace, i: int, j: int, pt: ParamPoint) -> LinOp:
    """``sum over chains of e_{i_{m-1} i_m} ... e_{i_1 i_2} (q - q^-1)^(m-1)``."""
    c = pt.q - 1 / pt.q
    out = LinOp.zero(space.dim)
    for chain in partitions(i, j):
        prod = space.identity()
        for a, b in zip(chain, chain[1:]):
            prod = root_vector(space, "e", a, b) @ prod
        out = out + prod.scale(c ** (len(chain) - 1))
    return out


def closed_second(space1: RepSpace, pt: ParamPoint | None = None) -> TensorOp:
    """Partition-sum closed form with the fundamental rep second (``f_ij = E_ji``)."""
    pt = pt or space1.pt
    n = space1.n
    fund = fundamental_rep(n, pt)
    out = LinOp.identity(space1.dim * n)
    for i, j in positive_roots(n):
        out = out + chain_e_sum(space1, i, j, pt).kron(LinOp.unit(n, j - 1, i - 1))
    return TensorOp(out, space1, fund, ["closed_second"])


def reduced_r21_coeff(i: int, j: int, pt: ParamPoint) -> Fraction:
    """``(q - q^-1) (q^l / [l])^(j-i-1)``."""
    q, l = pt.q, pt.l
    return (q - 1 / q) * (q ** l / qint(l, pt)) ** (j - i - 1)


def reduced_r21(n: int, l: int, pt: ParamPoint, sym: RepSpace | None = None) -> TensorOp:
    """Reduced ``Rhat_21`` on ``fundamental (x) symmetric``.

    ``1 + sum_{i<j} c_ij f_ij (x) e*_ij`` with ``f_ij = E_ji`` and
    ``c_ij = (q - q^-1)(q^l/[l])^(j-i-1)``.  It agrees with the flipped product
    on ``e_a (x) v_0`` and on the ``e_j`` component of ``e_i (x) f*_ij v_0``; for
    ``n >= 3`` other components on the ``f*_ab v_0`` differ (see
    :func:`qrs.twist.reduced_r21_unmatched_defects`).
    """
    sym = sym or symmetric_rep(n, l, pt)
    fund = fundamental_rep(n, pt)
    out = LinOp.identity(n * sym.dim)
    for i, j in positive_roots(n):
        term = LinOp.unit(n, j - 1, i - 1).kron(star_vector(sym, "e", i, j))
        out = out + term.scale(reduced_r21_coeff(i, j, pt))
    return TensorOp(out, fund, sym, ["reduced_r21"])


def star_subspace(sym: RepSpace) -> list[dict[int, Fraction]]:
    """``v_0`` and the vectors ``f*_ab v_0``."""
    v0 = {sym.v0: Fraction(1)}
    vecs = [v0]
    for a, b in positive_roots(sym.n):
        vecs.append(star_vector(sym, "f", a, b).apply(v0))
    return vecs


def tensor_vector(x: dict, y: dict, d2: int) -> dict[int, Fraction]:
    return {a * d2 + b: va * vb for a, va in x.items() for b, vb in y.items()}


def _embed(op: LinOp, d: int, legs: str) -> LinOp:
    """Place a two-leg operator on ``V^{(x)3}`` (all legs of dimension ``d``)."""
    ident = LinOp.identity(d)
    if legs == "12":
        return op.kron(ident)
    if legs == "23":
        return ident.kron(op)
    if legs == "13":
        # move leg 3 next to leg 1: conjugate (op (x) 1) by the swap of legs 2,3
        perm = [a * d * d + c * d + b for a in range(d) for b in range(d) for c in range(d)]
        return op.kron(ident).permute(perm)
    raise ValueError(legs)


def check_ybe(n: int, pt: ParamPoint, with_K: bool = True, order: str = "decreasing") -> Report:
    """``R12 R13 R23 = R23 R13 R12`` on the threefold fundamental representation."""
    fund = fundamental_rep(n, pt)
    R = r_matrix(fund, fund, pt, order, with_K).op
    r12, r13, r23 = (_embed(R, n, s) for s in ("12", "13", "23"))
    lhs = r12 @ r13 @ r23
    rhs = r23 @ r13 @ r12
    rpt = Report(f"ybe[n={n}]")
    diff = lhs.first_difference(rhs)
    rpt.add("R12 R13 R23 = R23 R13 R12" + ("" if with_K else " (K omitted)"),
            diff is None, residual=None if diff is None else diff[1] - diff[2],
            point=pt.to_dict())
    return rpt


def check_mixed_ybe(n: int, l: int, pt: ParamPoint, order: str = "decreasing") -> Report:
    """YBE on ``fund (x) fund (x) sym``; exercises the ordered product beyond the vector rep."""
    fund = fundamental_rep(n, pt)
    sym = symmetric_rep(n, l, pt)
    d = sym.dim
    R_ff = r_matrix(fund, fund, pt, order).op
    R_fs = r_matrix(fund, sym, pt, order).op
    ident_s = LinOp.identity(d)
    ident_f = LinOp.identity(n)
    r12 = R_ff.kron(ident_s)
    r23 = ident_f.kron(R_fs)
    # R13: leg 1 fund, leg 3 sym; reorder (a, s, b) -> (a, b, s)
    perm = [a * n * d + b * d + s for a in range(n) for s in range(d) for b in range(n)]
    r13 = R_fs.kron(ident_f).permute(perm)
    lhs = r12 @ r13 @ r23
    rhs = r23 @ r13 @ r12
    rpt = Report(f"mixed ybe[n={n}, l={l}, order={order}]")
    rpt.add("R12 R13 R23 = R23 R13 R12 on V(x)V(x)S", lhs == rhs, point=pt.to_dict())
    return rpt

"""Diagonal of the dressed R-matrix ``F_21^-1 K Rhat_12 F_12`` on ``fund (x) v_0``."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .report import Report
from .scalars import ParamPoint, SingularPoint, qint
from .twist import TwistCoeffs


def xi(U: Fraction, pt: ParamPoint) -> Fraction:
    """Coupling ``(q - q^-1)^2 q U / ((U - 1)(q^2 U - 1))`` with ``U = q^y``."""
    q = pt.q
    den = (U - 1) * (q ** 2 * U - 1)
    if den == 0:
        raise SingularPoint(f"xi has a pole at U={U}")
    return (q - 1 / q) ** 2 * q * U / den


def xi_t(W: Fraction, pt: ParamPoint) -> Fraction:
    """The same coupling in half-coordinates, ``W = q^t`` with ``t = y/2``.

    ``(q - q^-1)^2 / ((W - W^-1)(q W - q^-1 W^-1))``.
    """
    q = pt.q
    den = (W - 1 / W) * (q * W - 1 / (q * W))
    if den == 0:
        raise SingularPoint(f"xi has a pole at W={W}")
    return (q - 1 / q) ** 2 / den


def coupling(pt: ParamPoint) -> Fraction:
    """``[l][l+1]``."""
    return qint(pt.l, pt) * qint(pt.l + 1, pt)


@dataclass
class DressedDiag:
    n: int
    l: int
    pt: ParamPoint
    rjj: dict = field(default_factory=dict)      # j -> R_jj
    reduced: dict = field(default_factory=dict)  # (j, k) -> partial sum from i = k
    terms: dict = field(default_factory=dict)    # (i, j) -> summand


def dressed_term(i: int, j: int, coeffs: TwistCoeffs) -> Fraction:
    """``Phi_ij Psi_ij q^{y_j - y_i + 1} ([l][l+1])^{j-i}``."""
    pt = coeffs.pt
    return (coeffs.Phi(i, j) * coeffs.Psi(i, j) * pt.q * pt.ratio(j, i)
            * coupling(pt) ** (j - i))


def dressed_diagonal(n: int, l: int, pt: ParamPoint, coeffs: TwistCoeffs | None = None) -> DressedDiag:
    coeffs = coeffs or TwistCoeffs(pt)
    out = DressedDiag(n, l, pt)
    for j in range(1, n + 1):
        acc = Fraction(1)
        out.reduced[(j, j)] = acc
        for k in range(j - 1, 0, -1):
            t = dressed_term(k, j, coeffs)
            out.terms[(k, j)] = t
            acc += t
            out.reduced[(j, k)] = acc
        out.rjj[j] = acc
    return out


def coupling_product(j: int, k: int, pt: ParamPoint) -> Fraction:
    """``prod_{i=k}^{j-1} (1 - [l][l+1] xi(y_j - y_i))``."""
    c = coupling(pt)
    out = Fraction(1)
    for i in range(k, j):
        out *= 1 - c * xi(pt.ratio(j, i), pt)
    return out


def check_sum_product(n: int, l: int, pt: ParamPoint, diag: DressedDiag | None = None) -> Report:
    """Sum form against product form for every ``k < j``, the induction step and
    the Phi/Psi ratio identity behind it.

    The ratio identity carries the factor ``[l][l+1]`` on the left: the
    consecutive summands differ by one power of it.
    """
    coeffs = TwistCoeffs(pt)
    diag = diag or dressed_diagonal(n, l, pt, coeffs)
    c = coupling(pt)
    rpt = Report(f"sum = product [n={n}, l={l}]")
    for j in range(2, n + 1):
        for k in range(1, j):
            prod = coupling_product(j, k, pt)
            r = diag.reduced[(j, k)] - prod
            rpt.add(f"sum=product (j={j},k={k})", r == 0, residual=r, point=pt.to_dict())
    for j in range(2, n + 1):
        for k in range(1, j):
            lhs = diag.terms[(k, j)]
            rhs = -c * xi(pt.ratio(j, k), pt) * coupling_product(j, k + 1, pt)
            rpt.add(f"induction step (k={k},j={j})", lhs == rhs, residual=lhs - rhs,
                    point=pt.to_dict())
    for j in range(3, n + 1):
        for k in range(2, j):
            lhs = (coeffs.Phi(k - 1, j) / coeffs.Phi(k, j) * coeffs.Psi(k - 1, j) / coeffs.Psi(k, j)
                   * pt.ratio(k, k - 1) * c)
            rhs = (xi(pt.ratio(j, k - 1), pt) / xi(pt.ratio(j, k), pt)
                   * (1 - c * xi(pt.ratio(j, k), pt)))
            rpt.add(f"ratio identity (k={k},j={j})", lhs == rhs, residual=lhs - rhs,
                    point=pt.to_dict())
    return rpt


def dressed_diagonal_operator(n: int, l: int, pt: ParamPoint) -> dict[int, Fraction]:
    """Debug path: ``<e_j (x) v_0 | F_21^-1 K Rhat_12 F_12 | e_j (x) v_0>`` from full matrices."""
    from .qsl import fundamental_rep, symmetric_rep
    from .rmat import cartan_K, rhat, tensor_vector
    from .twist import build_F12, build_F21_inv

    sym = symmetric_rep(n, l, pt)
    fund = fundamental_rep(n, pt)
    coeffs = TwistCoeffs(pt)
    d = sym.dim
    op = (build_F21_inv(n, l, pt, coeffs, sym).op @ cartan_K(fund, sym, pt).op
          @ rhat(fund, sym, pt).op @ build_F12(n, l, pt, coeffs, sym).op)
    out = {}
    for j in range(1, n + 1):
        idx = (j - 1) * d + sym.v0
        v = tensor_vector({j - 1: Fraction(1)}, {sym.v0: Fraction(1)}, d)
        out[j] = op.apply(v).get(idx, Fraction(0))
    return out

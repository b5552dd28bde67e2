"""The dynamical twist: coefficients Phi_ij, Psi_ij and the operators F_12, F_21^-1.

``F_12`` acts on ``fundamental (x) symmetric`` and ``F_21^-1`` on the same
ordered pair (the ``21`` label refers to the roles of the legs in the
universal element, not to the order of the spaces here).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .linop import LinOp, flip
from .qsl import RepSpace, fundamental_rep, root_vector, star_vector, symmetric_rep
from .report import Report
from .rmat import (
    TensorOp,
    cartan_K,
    closed_first,
    positive_roots,
    reduced_r21,
    reduced_r21_coeff,
    rhat,
    tensor_vector,
)
from .scalars import ParamPoint, SingularPoint, qint


def q_l(pt: ParamPoint) -> Fraction:
    """``[l+1] q^-l``."""
    return qint(pt.l + 1, pt) * pt.q ** -pt.l


def _div(num, den, what):
    if den == 0:
        raise SingularPoint(f"zero denominator in {what}")
    return num / den


@dataclass
class TwistCoeffs:
    """Memoized Phi and Psi tables at one point (1-based root indices)."""

    pt: ParamPoint
    phi: dict = field(default_factory=dict)
    psi: dict = field(default_factory=dict)

    @property
    def n(self):
        return self.pt.n

    @property
    def l(self):
        return self.pt.l

    def Phi(self, i: int, j: int) -> Fraction:
        if not 1 <= i < j <= self.n:
            raise IndexError(f"({i},{j}) is not a positive root of sl_{self.n}")
        key = (i, j)
        if key not in self.phi:
            pt = self.pt
            q = pt.q
            if j == i + 1:
                val = _div(q - 1 / q, q ** 2 * pt.ratio(j, i) - 1, f"Phi_{i}{j}")
            else:
                num = q ** 2 * pt.ratio(j, i + 1) - q ** (-2 * pt.l)
                den = q ** 2 * pt.ratio(j, i) - 1
                val = self.Phi(i + 1, j) / q_l(pt) * _div(num, den, f"Phi_{i}{j}")
            self.phi[key] = val
        return self.phi[key]

    def Psi(self, i: int, j: int) -> Fraction:
        if not 1 <= i < j <= self.n:
            raise IndexError(f"({i},{j}) is not a positive root of sl_{self.n}")
        key = (i, j)
        if key not in self.psi:
            pt = self.pt
            q, l = pt.q, pt.l
            if j == i + 1:
                val = _div(q - 1 / q, 1 - pt.ratio(j, i), f"Psi_{i}{j}")
            else:
                num = pt.ratio(j, i + 1) - q ** (2 * l)
                den = pt.ratio(j, i) - 1
                val = q ** -l / qint(l, pt) * _div(num, den, f"Psi_{i}{j}") * self.Psi(i + 1, j)
            self.psi[key] = val
        return self.psi[key]

    def fill(self) -> "TwistCoeffs":
        for i, j in positive_roots(self.n):
            self.Phi(i, j)
            self.Psi(i, j)
        return self


def phi(i: int, j: int, pt: ParamPoint) -> Fraction:
    return TwistCoeffs(pt).Phi(i, j)


def psi(i: int, j: int, pt: ParamPoint) -> Fraction:
    return TwistCoeffs(pt).Psi(i, j)


def build_F12(n: int, l: int, pt: ParamPoint, coeffs=None, sym=None) -> TensorOp:
    """``1 + sum_{i<j} Phi_ij E_ij (x) f*_ij`` on ``fundamental (x) symmetric``.

    ``coeffs`` may be any mapping-like object with ``Phi(i, j)``.
    """
    sym = sym or symmetric_rep(n, l, pt)
    coeffs = coeffs or TwistCoeffs(pt)
    out = LinOp.identity(n * sym.dim)
    for i, j in positive_roots(n):
        term = LinOp.unit(n, i - 1, j - 1).kron(star_vector(sym, "f", i, j))
        out = out + term.scale(coeffs.Phi(i, j))
    return TensorOp(out, fundamental_rep(n, pt), sym, ["F12"])


def build_F21_inv(n: int, l: int, pt: ParamPoint, coeffs=None, sym=None) -> TensorOp:
    """``1 + sum_{i<j} Psi_ij E_ji (x) e*_ij`` on ``fundamental (x) symmetric``."""
    sym = sym or symmetric_rep(n, l, pt)
    coeffs = coeffs or TwistCoeffs(pt)
    out = LinOp.identity(n * sym.dim)
    for i, j in positive_roots(n):
        term = LinOp.unit(n, j - 1, i - 1).kron(star_vector(sym, "e", i, j))
        out = out + term.scale(coeffs.Psi(i, j))
    return TensorOp(out, fundamental_rep(n, pt), sym, ["F21_inv"])


# -- the B element --------------------------------------------------------

def root_coordinates(n: int, weight) -> list[Fraction]:
    """Coefficients ``c_j`` of ``mu = sum_j c_j alpha_j`` (``c = A^-1 lambda``)."""
    from .rmat import inverse_cartan

    inv = inverse_cartan(n)
    return [sum((inv[j][i] * weight[i] for i in range(n - 1)), Fraction(0)) for j in range(n - 1)]


def b_eigenvalue(weight, pt: ParamPoint) -> Fraction:
    """Diagonal entry of ``B = q^{sum_j (h_j h^j - x_j h^j)}`` on weight ``mu``.

    ``q^{<mu,mu>} * prod_j (q^{y_j - y_{j+1}})^{c_j}`` with ``x_j = y_{j+1} - y_j``;
    every power is resolved through ``omega``, so fractional ``c_j`` are exact.
    """
    from .rmat import weight_pairing

    n = pt.n
    val = pt.qpow(weight_pairing(n, weight, weight))
    for j, c in enumerate(root_coordinates(n, weight)):
        e = c * 2 * n
        if e.denominator != 1:
            raise ValueError("weight outside the weight lattice")
        val *= (pt.omega[j] / pt.omega[j + 1]) ** int(e)
    return val


def b_diagonal(space: RepSpace, pt: ParamPoint | None = None, inverse: bool = False) -> LinOp:
    pt = pt or space.pt
    vals = [b_eigenvalue(w, pt) for w in space.weights]
    if inverse:
        vals = [1 / v for v in vals]
    return LinOp.diagonal(vals)


def adB_conjugate(X: LinOp, space: RepSpace, pt: ParamPoint | None = None,
                  inverse: bool = False) -> LinOp:
    """``B X B^-1`` (or ``B^-1 X B``) for weight-homogeneous ``X`` on ``space``."""
    pt = pt or space.pt
    if space.weight_shift(X) is None:
        raise ValueError("adB_conjugate needs a weight-homogeneous operator")
    vals = [b_eigenvalue(w, pt) for w in space.weights]
    rows = {}
    for r, row in X.rows.items():
        rows[r] = {c: v * (vals[r] / vals[c] if not inverse else vals[c] / vals[r])
                   for c, v in row.items()}
    out = LinOp(X.nrows, X.ncols)
    out.rows = rows
    return out


def adB_tensor(op: LinOp, fund: RepSpace, sym: RepSpace, pt: ParamPoint,
               leg: str = "sym") -> LinOp:
    """``B X B^-1`` for ``X`` on ``fundamental (x) symmetric`` with B on one leg.

    ``leg="sym"`` is ``B_2`` of the F_12 equation; ``leg="fund"`` is ``B_1``
    of the F_21^-1 equation, where the fundamental module carries the
    ``f_ij`` factor.
    """
    d = sym.dim
    if leg == "sym":
        vals = [b_eigenvalue(w, pt) for w in sym.weights]
        which = lambda idx: vals[idx % d]
    elif leg == "fund":
        vals = [b_eigenvalue(w, pt) for w in fund.weights]
        which = lambda idx: vals[idx // d]
    else:
        raise ValueError(f"unknown leg {leg!r}")
    rows = {}
    for r, row in op.rows.items():
        br = which(r)
        rows[r] = {c: v * br / which(c) for c, v in row.items()}
    out = LinOp(op.nrows, op.ncols)
    out.rows = rows
    return out


def conjugate_root_by_rule(sym: RepSpace, i: int, j: int, pt: ParamPoint) -> LinOp:
    """``f_ij q^{y_j - y_i - 2 h_ij + 2}`` with ``h_ij = h_i + ... + h_{j-1}`` acting first."""
    from .qsl import root_vector

    fij = root_vector(sym, "f", i, j)
    q = pt.q
    diag = LinOp.diagonal(pt.ratio(j, i) * q ** (2 - 2 * sum(w[i - 1:j - 1]))
                          for w in sym.weights)
    return fij @ diag


def _star_line(sym: RepSpace, i: int, j: int) -> dict:
    v0 = {sym.v0: Fraction(1)}
    return star_vector(sym, "f", i, j).apply(v0)


def _component(vec: dict, a: int, d: int) -> dict:
    """Symmetric-leg vector sitting next to fundamental basis vector ``a`` (0-based)."""
    return {k % d: v for k, v in vec.items() if k // d == a}


def _proportionality(vec: dict, line: dict):
    """Scalar ``c`` with ``vec = c * line`` or None."""
    from .qsl import _vector_ratio

    if not vec:
        return Fraction(0)
    return _vector_ratio(vec, line)


def phi_equation_residual(i: int, j: int, coeffs: TwistCoeffs) -> Fraction:
    """Residual of the scalar system solved by Phi.

    ``Phi_ij (q^{y_j-y_i+2} - 1) = q_l^{i-j+1}(q - q^-1)
    + sum_{i<k<j} (q^2 - 1)(q_l - 1) q_l^{i-k} Phi_kj``.
    """
    pt = coeffs.pt
    q, ql = pt.q, q_l(pt)
    lhs = coeffs.Phi(i, j) * (q ** 2 * pt.ratio(j, i) - 1)
    rhs = ql ** (i - j + 1) * (q - 1 / q)
    rhs += sum(((q ** 2 - 1) * (ql - 1) * ql ** (i - k) * coeffs.Phi(k, j)
                for k in range(i + 1, j)), Fraction(0))
    return lhs - rhs


def psi_equation_residual(i: int, j: int, coeffs: TwistCoeffs) -> Fraction:
    """Residual of the scalar system solved by Psi.

    ``Psi_ij (1 - q^{y_j-y_i}) = (q - q^-1) c^{j-i-1}
    + sum_{i<k<j} Psi_kj q^{y_j-y_k} (q - q^-1) c^{k-i-1}`` with ``c = q^l/[l]``.
    """
    pt = coeffs.pt
    q = pt.q
    c = q ** pt.l / qint(pt.l, pt)
    lhs = coeffs.Psi(i, j) * (1 - pt.ratio(j, i))
    rhs = (q - 1 / q) * c ** (j - i - 1)
    rhs += sum((coeffs.Psi(k, j) * pt.ratio(j, k) * (q - 1 / q) * c ** (k - i - 1)
                for k in range(i + 1, j)), Fraction(0))
    return lhs - rhs


def check_F12_equation(n: int, l: int, pt: ParamPoint, coeffs: TwistCoeffs | None = None,
                       sym: RepSpace | None = None) -> Report:
    """``Rhat_12 F_12 = B_2 F_12 B_2^-1`` on every ``e_j (x) v_0``.

    Operator form: the ``e_i`` component of both sides is compared for each
    ``i < j`` (plus the diagonal and any stray component).  Scalar form:
    :func:`phi_equation_residual` for each root.
    """
    sym = sym or symmetric_rep(n, l, pt)
    coeffs = coeffs or TwistCoeffs(pt)
    fund = fundamental_rep(n, pt)
    d = sym.dim
    F12 = build_F12(n, l, pt, coeffs, sym).op
    lhs_op = rhat(fund, sym, pt).op @ F12
    rhs_op = adB_tensor(F12, fund, sym, pt, "sym")
    v0 = {sym.v0: Fraction(1)}
    rpt = Report(f"F12 equation [n={n}, l={l}]")
    for j in range(1, n + 1):
        v = tensor_vector({j - 1: Fraction(1)}, v0, d)
        a, b = lhs_op.apply(v), rhs_op.apply(v)
        for i in range(1, n + 1):
            ca, cb = _component(a, i - 1, d), _component(b, i - 1, d)
            if i < j:
                line = _star_line(sym, i, j)
                sa, sb = _proportionality(ca, line), _proportionality(cb, line)
                ok = ca == cb
                residual = sa - sb if (sa is not None and sb is not None) else None
                rpt.add(f"operator ({i},{j})", ok, residual=residual, point=pt.to_dict())
            elif ca != cb:
                rpt.add(f"operator stray component e_{i} on e_{j}(x)v0", False,
                        point=pt.to_dict())
    for i, j in positive_roots(n):
        r = phi_equation_residual(i, j, coeffs)
        rpt.add(f"scalar ({i},{j})", r == 0, residual=r, point=pt.to_dict())
    return rpt


def check_F21_equation(n: int, l: int, pt: ParamPoint, coeffs: TwistCoeffs | None = None,
                       sym: RepSpace | None = None, reduced: bool = False) -> Report:
    """``F_21^-1 = B_1 F_21^-1 B_1^-1 Rhat_21`` on ``e_i (x) f*_ij v_0``, ``e_j`` component.

    ``Rhat_21`` is the flipped full product by default, or the reduced form
    when ``reduced=True``.  The scalar form checks :func:`psi_equation_residual`.
    """
    sym = sym or symmetric_rep(n, l, pt)
    coeffs = coeffs or TwistCoeffs(pt)
    fund = fundamental_rep(n, pt)
    d = sym.dim
    Finv = build_F21_inv(n, l, pt, coeffs, sym).op
    if reduced:
        r21 = reduced_r21(n, l, pt, sym).op
    else:
        r21 = flip(rhat(sym, fund, pt).op, d, n)
    rhs_op = adB_tensor(Finv, fund, sym, pt, "fund") @ r21
    rpt = Report(f"F21 equation [n={n}, l={l}{', reduced' if reduced else ''}]")
    for i, j in positive_roots(n):
        v = tensor_vector({i - 1: Fraction(1)}, _star_line(sym, i, j), d)
        ca = _component(Finv.apply(v), j - 1, d)
        cb = _component(rhs_op.apply(v), j - 1, d)
        v0 = {sym.v0: Fraction(1)}
        sa, sb = _proportionality(ca, v0), _proportionality(cb, v0)
        residual = sa - sb if (sa is not None and sb is not None) else None
        rpt.add(f"operator ({i},{j})", ca == cb, residual=residual, point=pt.to_dict())
    for i, j in positive_roots(n):
        r = psi_equation_residual(i, j, coeffs)
        rpt.add(f"scalar ({i},{j})", r == 0, residual=r, point=pt.to_dict())
    return rpt


def check_reduced_r21(n: int, l: int, pt: ParamPoint, sym: RepSpace | None = None) -> Report:
    """Reduced ``Rhat_21`` against the flipped product on matched components.

    For each ``i < j`` the ``e_j`` component of ``Rhat_21 (e_i (x) f*_ij v_0)``
    is compared, together with the full action on every ``e_a (x) v_0``.
    """
    sym = sym or symmetric_rep(n, l, pt)
    fund = fundamental_rep(n, pt)
    d = sym.dim
    full = flip(rhat(sym, fund, pt).op, d, n)
    red = reduced_r21(n, l, pt, sym).op
    rpt = Report(f"reduced Rhat_21 [n={n}, l={l}]")
    v0 = {sym.v0: Fraction(1)}
    for a in range(n):
        v = tensor_vector({a: Fraction(1)}, v0, d)
        rpt.add(f"e_{a + 1} (x) v0", full.apply(v) == red.apply(v), point=pt.to_dict())
    for i, j in positive_roots(n):
        v = tensor_vector({i - 1: Fraction(1)}, _star_line(sym, i, j), d)
        ok = _component(full.apply(v), j - 1, d) == _component(red.apply(v), j - 1, d)
        rpt.add(f"({i},{j}) matched", ok, point=pt.to_dict())
    return rpt


def reduced_r21_unmatched_defects(n: int, l: int, pt: ParamPoint,
                                  sym: RepSpace | None = None) -> list[tuple[int, int, int]]:
    """Components ``(a, (i,j), b)`` where the reduced form and the product disagree.

    Only components off the matched pattern ``e_i (x) f*_ij v_0 -> e_j`` can
    appear; the list is informational.
    """
    sym = sym or symmetric_rep(n, l, pt)
    fund = fundamental_rep(n, pt)
    d = sym.dim
    full = flip(rhat(sym, fund, pt).op, d, n)
    red = reduced_r21(n, l, pt, sym).op
    out = []
    for i, j in positive_roots(n):
        line = _star_line(sym, i, j)
        for a in range(1, n + 1):
            v = tensor_vector({a - 1: Fraction(1)}, line, d)
            x, y = full.apply(v), red.apply(v)
            for b in range(1, n + 1):
                if _component(x, b - 1, d) != _component(y, b - 1, d):
                    out.append((a, (i, j), b))
    return out

"""Exact scalars and parameter points.

Every quantity is a :class:`fractions.Fraction`.  A parameter point fixes
``tau = q^(1/(2n))`` and ``omega_i = q^(y_i/(2n))``, so that every power of
``q`` met in the construction (including ``q^(1/n)`` from the dual Cartan
basis and ``q^(1/2)`` from the half-coordinates ``t_i = y_i/2``) is an exact
integer power of a rational number.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property

Rat = Fraction

__all__ = [
    "Rat",
    "ParamPoint",
    "ScalarPoint",
    "SamplingExhausted",
    "SingularPoint",
    "qint",
    "qfactorial",
    "sample_point",
    "derive_seed",
]

# Generic points avoid u_j/u_i = q^(2k) for |k| up to 2l + GENERIC_MARGIN.
GENERIC_MARGIN = 4
MAX_SAMPLING_ATTEMPTS = 2000


class SamplingExhausted(RuntimeError):
    """No admissible point was found within the retry budget."""


class SingularPoint(ZeroDivisionError):
    """A denominator vanished at the requested parameter point."""


def _as_rat(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


@dataclass(frozen=True)
class ParamPoint:
    """Exact specialization of ``q`` and the dynamical coordinates.

    ``q = tau**(2n)``, ``u_i = omega_i**(2n)`` stands for ``q^(y_i)`` and
    ``w_i = omega_i**n`` for ``q^(t_i)`` with ``t_i = y_i/2``.
    """

    n: int
    l: int
    tau: Fraction
    omega: tuple[Fraction, ...]

    def __post_init__(self):
        object.__setattr__(self, "tau", _as_rat(self.tau))
        object.__setattr__(self, "omega", tuple(_as_rat(o) for o in self.omega))
        if self.n < 2:
            raise ValueError(f"n must be >= 2, got {self.n}")
        if self.l < 1:
            raise ValueError(f"l must be >= 1, got {self.l}")
        if len(self.omega) != self.n:
            raise ValueError("need exactly n dynamical bases")
        if self.tau in (0, 1, -1):
            raise ValueError("tau must avoid 0 and +-1")
        if any(o == 0 for o in self.omega):
            raise ValueError("dynamical bases must be nonzero")

    @cached_property
    def q(self) -> Fraction:
        return self.tau ** (2 * self.n)

    @cached_property
    def q_half(self) -> Fraction:
        return self.tau ** self.n

    @cached_property
    def u(self) -> tuple[Fraction, ...]:
        """``q^(y_i)``, 0-based."""
        return tuple(o ** (2 * self.n) for o in self.omega)

    @cached_property
    def w(self) -> tuple[Fraction, ...]:
        """``q^(t_i)``, 0-based."""
        return tuple(o ** self.n for o in self.omega)

    def qpow(self, e) -> Fraction:
        """``q**e`` for ``e`` in ``(1/(2n)) Z``."""
        e = _as_rat(e) * 2 * self.n
        if e.denominator != 1:
            raise ValueError(f"q-exponent {e / (2 * self.n)} is not in (1/2n)Z")
        return self.tau ** int(e)

    def ratio(self, j: int, i: int) -> Fraction:
        """``q^(y_j - y_i)`` with 1-based indices."""
        return self.u[j - 1] / self.u[i - 1]

    def shifted(self, shift) -> "ParamPoint":
        """The point with ``y_i -> y_i + 2*shift_i`` (``w_i -> q^shift_i w_i``)."""
        t2 = self.tau ** 2
        return ParamPoint(self.n, self.l, self.tau,
                          tuple(o * t2 ** s for o, s in zip(self.omega, shift)))

    # -- validity -----------------------------------------------------

    def singular_pairs(self, margin: int | None = None) -> list[tuple[int, int, str]]:
        """Pairs ``i < j`` violating the non-singularity conditions.

        With ``margin`` set, the stricter generic condition
        ``u_j/u_i != q^(2k)`` for ``|k| <= 2l + margin`` is used as well.
        """
        q, l = self.q, self.l
        bad = []
        for i in range(1, self.n + 1):
            for j in range(i + 1, self.n + 1):
                r = self.ratio(j, i)
                if r == 1:
                    bad.append((i, j, "u_j/u_i = 1"))
                elif r == q ** -2:
                    bad.append((i, j, "u_j/u_i = q^-2"))
                elif r == q ** 2:
                    bad.append((i, j, "u_j/u_i = q^2"))
                elif q ** 2 * r == q ** (-2 * l):
                    bad.append((i, j, "q^2 u_j/u_i = q^-2l"))
                elif r == q ** (2 * l):
                    bad.append((i, j, "u_j/u_i = q^2l"))
                elif margin is not None:
                    for k in range(-2 * l - margin, 2 * l + margin + 1):
                        if r == q ** (2 * k):
                            bad.append((i, j, f"u_j/u_i = q^{2 * k}"))
                            break
        return bad

    def is_nonsingular(self, margin: int | None = None) -> bool:
        return not self.singular_pairs(margin)

    # -- serialization ------------------------------------------------

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "l": self.l,
            "tau": _rat_str(self.tau),
            "omega": [_rat_str(o) for o in self.omega],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    @classmethod
    def from_dict(cls, d: dict) -> "ParamPoint":
        return cls(int(d["n"]), int(d["l"]), Fraction(d["tau"]),
                   tuple(Fraction(o) for o in d["omega"]))

    @classmethod
    def from_json(cls, s: str) -> "ParamPoint":
        return cls.from_dict(json.loads(s))


@dataclass(frozen=True)
class ScalarPoint:
    """A point given directly by ``q`` and ``u_i = q^(y_i)``.

    Enough for every formula that needs only integer powers of ``q`` and
    ratios ``u_j/u_i`` (q-numbers, Phi, Psi, xi, the dressed diagonal); there
    are no fractional powers, so ``tau``, ``w`` and ``q_half`` are absent.
    """

    n: int
    l: int
    q: Fraction
    u: tuple[Fraction, ...]

    def __post_init__(self):
        object.__setattr__(self, "q", _as_rat(self.q))
        object.__setattr__(self, "u", tuple(_as_rat(x) for x in self.u))
        if len(self.u) != self.n:
            raise ValueError("need exactly n values u_i")
        if self.q in (0, 1, -1) or any(x == 0 for x in self.u):
            raise ValueError("q must avoid 0 and +-1 and every u_i must be nonzero")

    def ratio(self, j: int, i: int) -> Fraction:
        return self.u[j - 1] / self.u[i - 1]

    def to_dict(self) -> dict:
        return {"n": self.n, "l": self.l, "q": _rat_str(self.q),
                "u": [_rat_str(x) for x in self.u]}


def _rat_str(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


def qint(m: int, pt: ParamPoint) -> Fraction:
    """Symmetric q-number ``(q^m - q^-m)/(q - q^-1)``."""
    q = pt.q
    return (q ** m - q ** -m) / (q - 1 / q)


def qfactorial(m: int, pt: ParamPoint) -> Fraction:
    if m < 0:
        raise ValueError(f"q-factorial of negative integer {m}")
    out = Fraction(1)
    for k in range(1, m + 1):
        out *= qint(k, pt)
    return out


def derive_seed(seed: int, label: str) -> int:
    """Deterministic per-label seed (independent of PYTHONHASHSEED)."""
    h = 0
    for ch in label.encode():
        h = (h * 131 + ch) % (1 << 31)
    return (seed * 1_000_003) ^ h


def _small_rationals(rng: random.Random, bound: int) -> Fraction:
    return Fraction(rng.randint(1, bound), rng.randint(1, bound))


def sample_point(n: int, l: int, seed: int, bound: int = 16,
                 margin: int | None = GENERIC_MARGIN) -> ParamPoint:
    """Rejection-sample a non-singular point with small positive rationals.

    ``tau`` and the ``omega_i`` are ratios of integers in ``[1, bound]``.
    Raises :class:`SamplingExhausted` when no admissible point turns up.
    """
    if n < 2 or l < 1:
        raise ValueError("need n >= 2 and l >= 1")
    rng = random.Random(seed)
    for _ in range(MAX_SAMPLING_ATTEMPTS):
        tau = _small_rationals(rng, bound)
        if tau == 1:
            continue
        omega = tuple(_small_rationals(rng, bound) for _ in range(n))
        pt = ParamPoint(n, l, tau, omega)
        if pt.is_nonsingular(margin):
            return pt
    raise SamplingExhausted(
        f"no non-singular point for n={n}, l={l} with bound={bound}")

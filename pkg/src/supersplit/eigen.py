"""
Collective eigenvalues of a magnetically split superradiant ensemble.

Two driven transitions with equal coupling, split by ``phi``, share one
collective decay channel. In the small-sample limit the single-excitation
dynamics close on a 2x2 non-Hermitian problem whose eigenvalues are

    lambda_pm = (Gamma + gamma + iL -/+ i sqrt(phi^2 + (L - i(Gamma - gamma))^2)) / 2

with amplitude evolution beta ~ exp(-lambda t). All rates are measured in
units of the single-atom amplitude decay rate ``gamma``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

#: |lambda_+ - lambda_-| below this (times gamma) counts as degenerate.
DEGENERACY_TOL = 1e-12


@dataclass(frozen=True)
class CollectiveParams:
    """
    Four-rate parameter set of a split superradiant ensemble.

    Parameters
    ----------
    big_gamma : float
        Superradiant decay rate of the unsplit ensemble.
    lamb_shift : float
        Collective Lamb shift of the unsplit ensemble (sign free).
    phi : float
        Single-atom magnetic splitting ``omega_1 - omega_2``. Negative
        values are folded to ``|phi|``; the spectrum only relabels poles.
    gamma : float
        Single-atom amplitude decay rate, default 1 (the unit).
    """

    big_gamma: float
    lamb_shift: float = 0.0
    phi: float = 0.0
    gamma: float = 1.0

    def __post_init__(self):
        for name in ("big_gamma", "lamb_shift", "phi", "gamma"):
            value = float(getattr(self, name))
            if not math.isfinite(value):
                raise ValueError(f"{name} must be finite, got {value!r}")
            object.__setattr__(self, name, value)
        object.__setattr__(self, "phi", abs(self.phi))
        if self.gamma <= 0:
            raise ValueError(f"gamma must be > 0, got {self.gamma}")
        if self.big_gamma < self.gamma:
            raise ValueError(
                f"big_gamma must be >= gamma ({self.big_gamma} < {self.gamma})")

    @property
    def excess(self) -> float:
        """Collective part of the decay rate, ``Gamma - gamma``."""
        return self.big_gamma - self.gamma

    def scaled(self, s: float) -> "CollectiveParams":
        """Same physics expressed with every rate multiplied by ``s``."""
        if s <= 0:
            raise ValueError("scale factor must be positive")
        return CollectiveParams(self.big_gamma * s, self.lamb_shift * s,
                                self.phi * s, self.gamma * s)

    def in_units_of_gamma(self) -> "CollectiveParams":
        return self.scaled(1.0 / self.gamma)


@dataclass(frozen=True)
class EigenSystem:
    """
    Eigenvalues, pole amplitudes and pole positions for one parameter set.

    ``a_plus``/``a_minus`` are ``None`` when the system is degenerate and
    ``x_param`` is ``None`` when ``phi == 0``.
    """

    params: CollectiveParams
    lambda_plus: complex
    lambda_minus: complex
    a_plus: Optional[complex]
    a_minus: Optional[complex]
    x_param: Optional[float]
    y_param: float
    degenerate: bool = False
    delta_plus: complex = field(init=False)
    delta_minus: complex = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "delta_plus", 1j * self.lambda_plus)
        object.__setattr__(self, "delta_minus", 1j * self.lambda_minus)

    @property
    def pole_splitting(self) -> float:
        """Separation of the two resonance centres, ``|Re(delta_+ - delta_-)|``."""
        return abs((self.delta_plus - self.delta_minus).real)

    @property
    def pole_midpoint(self) -> float:
        return 0.5 * (self.delta_plus + self.delta_minus).real

    def swapped(self) -> "EigenSystem":
        """The same system with the -/+ branch labels exchanged."""
        return EigenSystem(self.params, self.lambda_minus, self.lambda_plus,
                           self.a_minus, self.a_plus, self.x_param,
                           self.y_param, self.degenerate)


def eigenvalues(gamma, big_gamma, lamb_shift, phi):
    """
    Vectorised closed-form eigenvalues.

    Accepts scalars or broadcastable arrays. The larger-magnitude root is
    taken directly from the quadratic formula and the smaller one from the
    product ``gamma*Gamma + phi^2/4 + i*L*gamma``, which avoids cancellation
    when one root is much smaller than the other. Labels follow the formula:
    ``lambda_plus`` carries the ``-i*sqrt`` term.

    Returns
    -------
    lambda_plus, lambda_minus : complex ndarray
    """
    gamma, big_gamma, lamb_shift, phi = np.broadcast_arrays(
        *(np.asarray(v, dtype=float) for v in (gamma, big_gamma, lamb_shift, phi)))
    trace = big_gamma + gamma + 1j * lamb_shift
    det = gamma * big_gamma + 0.25 * phi ** 2 + 1j * lamb_shift * gamma
    disc = phi ** 2 + (lamb_shift - 1j * (big_gamma - gamma)) ** 2
    root = np.sqrt(disc.astype(complex))
    plus = 0.5 * (trace - 1j * root)
    minus = 0.5 * (trace + 1j * root)
    plus_big = np.abs(plus) >= np.abs(minus)
    with np.errstate(divide="ignore", invalid="ignore"):
        plus = np.where(plus_big, plus, det / minus)
        minus = np.where(plus_big, det / plus, minus)
    return plus, minus


def regime_parameters(params: CollectiveParams) -> tuple[Optional[float], float]:
    """
    Regime parameters ``x = (Gamma - gamma)/phi`` and
    ``y = sqrt(phi^2 + 4 gamma Gamma)/(Gamma + gamma)``.

    ``x`` is ``None`` when ``phi == 0``.
    """
    p = params
    x = p.excess / p.phi if p.phi > 0 else None
    y = math.sqrt(p.phi ** 2 + 4 * p.gamma * p.big_gamma) / (p.big_gamma + p.gamma)
    return x, y


def collective_eigenvalues(params: CollectiveParams) -> EigenSystem:
    """
    Evaluate eigenvalues, amplitudes ``A_pm = +-(lambda_pm - gamma)/(lambda_+ - lambda_-)``
    and poles ``delta_pm = i*lambda_pm``.

    When ``|lambda_+ - lambda_-| < DEGENERACY_TOL * gamma`` the amplitudes are
    undefined; the returned system has ``degenerate=True`` and ``a_plus``,
    ``a_minus`` set to ``None``.
    """
    p = params
    lp, lm = eigenvalues(p.gamma, p.big_gamma, p.lamb_shift, p.phi)
    lp, lm = complex(lp), complex(lm)
    x, y = regime_parameters(p)
    gap = lp - lm
    if abs(gap) < DEGENERACY_TOL * p.gamma:
        mean = 0.5 * (lp + lm)
        return EigenSystem(p, mean, mean, None, None, x, y, degenerate=True)
    a_plus = (lp - p.gamma) / gap
    a_minus = -(lm - p.gamma) / gap
    return EigenSystem(p, lp, lm, a_plus, a_minus, x, y)

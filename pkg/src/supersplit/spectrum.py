"""
Two-pole radiation spectra, peak measurement and regime classification.

The emitted single-photon amplitude in a mode detuned by
``delta = omega_0 - nu_k`` is

    sigma(delta) = A_+/(delta - i lambda_+) + A_-/(delta - i lambda_-)
                 = (delta - i gamma) / ((delta - i lambda_+)(delta - i lambda_-))

and the radiation spectrum is ``|sigma|^2``.
"""
from __future__ import annotations

import enum
import math
import warnings
from dataclasses import dataclass, field, asdict
from typing import Callable, NamedTuple, Optional

import numpy as np

from .eigen import CollectiveParams, EigenSystem, collective_eigenvalues

GOLDEN = (math.sqrt(5.0) - 1.0) / 2.0

#: Extremum positions are refined to this absolute width (units of gamma).
REFINE_TOL = 1e-7

DEFAULT_POINTS = 4001


class DegenerateSystemError(ValueError):
    """Raised when a two-pole form is requested for a second-order pole."""


class AsymptoticRangeWarning(UserWarning):
    pass


class Extremum(NamedTuple):
    position: float
    value: float
    kind: str  # "maximum" | "minimum"


@dataclass
class SpectrumGrid:
    """
    Sampled spectrum plus refined extrema.

    ``intensity`` holds ``|sigma|^2`` for radiation spectra and ``R`` for
    cavity reflectivity curves; ``scale`` is the factor that was divided out
    when ``normalized`` is set, so raw values are ``intensity * scale``.
    """

    delta_values: np.ndarray
    intensity: np.ndarray
    extrema: list = field(default_factory=list)
    normalized: bool = False
    scale: float = 1.0
    quantity: str = "intensity"

    @property
    def maxima(self) -> list:
        return [e for e in self.extrema if e.kind == "maximum"]

    @property
    def minima(self) -> list:
        return [e for e in self.extrema if e.kind == "minimum"]

    @property
    def span(self) -> float:
        return float(self.delta_values[-1])


class Splitting(NamedTuple):
    splitting: float
    midpoint: float
    height_ratio: float


# -- amplitudes ------------------------------------------------------------

def spectral_amplitude(eig: EigenSystem, delta):
    """Two-pole (partial-fraction) amplitude. Raises for degenerate systems."""
    if eig.degenerate:
        raise DegenerateSystemError(
            "second-order pole: use degenerate_amplitude for this system")
    delta = np.asarray(delta, dtype=float)
    out = (eig.a_plus / (delta - 1j * eig.lambda_plus)
           + eig.a_minus / (delta - 1j * eig.lambda_minus))
    return out if out.ndim else complex(out)


def rational_amplitude(eig: EigenSystem, delta):
    """Single-fraction form; also valid at the degenerate point."""
    delta = np.asarray(delta, dtype=float)
    g = eig.params.gamma
    out = (delta - 1j * g) / ((delta - 1j * eig.lambda_plus)
                              * (delta - 1j * eig.lambda_minus))
    return out if out.ndim else complex(out)


def degenerate_amplitude(params: CollectiveParams, delta):
    """
    Second-order-pole amplitude ``(delta - i gamma)/(delta - i(Gamma+gamma)/2)^2``.

    Only defined at the bifurcation point ``L = 0``, ``Gamma - gamma = phi``.
    """
    if not collective_eigenvalues(params).degenerate:
        raise ValueError(f"parameters are not degenerate: {params}")
    p = params
    delta = np.asarray(delta, dtype=float)
    out = (delta - 1j * p.gamma) / (delta - 0.5j * (p.big_gamma + p.gamma)) ** 2
    return out if out.ndim else complex(out)


def amplitude(eig: EigenSystem, delta):
    """Two-pole form, or the second-order-pole form when degenerate."""
    if eig.degenerate:
        return degenerate_amplitude(eig.params, delta)
    return spectral_amplitude(eig, delta)


# -- extrema ---------------------------------------------------------------

def golden_section(func: Callable[[float], float], a: float, b: float,
                   tol: float = REFINE_TOL) -> tuple[float, float]:
    """Minimise a unimodal ``func`` on ``[a, b]`` until the bracket is < ``tol``."""
    c = b - GOLDEN * (b - a)
    d = a + GOLDEN * (b - a)
    fc, fd = func(c), func(d)
    while b - a > tol:
        if fc < fd:
            b, d, fd = d, c, fc
            c = b - GOLDEN * (b - a)
            fc = func(c)
        else:
            a, c, fc = c, d, fd
            d = a + GOLDEN * (b - a)
            fd = func(d)
    x = 0.5 * (a + b)
    return x, func(x)


def find_extrema(func: Callable[[float], float], delta_values: np.ndarray,
                 values: np.ndarray, tol: float = REFINE_TOL) -> list:
    """
    Locate interior extrema of sampled ``values`` and refine each with a
    golden-section search inside its three-point bracket.
    """
    f = values
    left, mid, right = f[:-2], f[1:-1], f[2:]
    is_max = (mid > left) & (mid >= right)
    is_min = (mid < left) & (mid <= right)
    out = []
    for i in np.flatnonzero(is_max | is_min) + 1:
        a, b = float(delta_values[i - 1]), float(delta_values[i + 1])
        if is_max[i - 1]:
            x, v = golden_section(lambda t: -func(t), a, b, tol)
            out.append(Extremum(x, -v, "maximum"))
        else:
            x, v = golden_section(func, a, b, tol)
            out.append(Extremum(x, v, "minimum"))
    return out


def _sampled_grid(func, span, n_points, normalize, quantity):
    if not span > 0:
        raise ValueError(f"span must be positive, got {span}")
    if n_points < 16:
        raise ValueError(f"n_points must be >= 16, got {n_points}")
    deltas = np.linspace(-span, span, int(n_points))
    values = func(deltas)
    extrema = find_extrema(lambda t: float(func(t)), deltas, values)
    scale = 1.0
    if normalize:
        scale = float(values.max())
        values = values / scale
        extrema = [Extremum(e.position, e.value / scale, e.kind) for e in extrema]
    return SpectrumGrid(deltas, values, extrema, normalize, scale, quantity)


def default_span(params: CollectiveParams) -> float:
    """``max(4 phi, 8 (Gamma + gamma), 4|L|, 20 gamma)``."""
    p = params
    return max(4 * p.phi, 8 * (p.big_gamma + p.gamma), 4 * abs(p.lamb_shift),
               20 * p.gamma)


def radiation_spectrum(params: CollectiveParams, span: Optional[float] = None,
                       n_points: int = DEFAULT_POINTS,
                       normalize: bool = False) -> SpectrumGrid:
    """
    Sample ``|sigma(delta)|^2`` on a uniform grid over ``[-span, span]``.

    Extrema are bracketed on the grid and refined to ``REFINE_TOL``.
    """
    eig = collective_eigenvalues(params)
    if span is None:
        span = default_span(params)

    def intensity(d):
        return np.abs(amplitude(eig, d)) ** 2

    return _sampled_grid(intensity, span, n_points, normalize, "intensity")


def measure_splitting(grid: SpectrumGrid) -> Splitting:
    """
    Distance, midpoint and height ratio of the two tallest maxima.

    With fewer than two maxima the line is unsplit and ``splitting`` is 0.
    """
    peaks = sorted(grid.maxima, key=lambda e: e.value, reverse=True)
    if not peaks:
        return Splitting(0.0, math.nan, math.nan)
    if len(peaks) == 1:
        return Splitting(0.0, peaks[0].position, 1.0)
    hi, lo = peaks[0], peaks[1]
    return Splitting(abs(hi.position - lo.position),
                     0.5 * (hi.position + lo.position),
                     lo.value / hi.value)


# -- asymptotics -----------------------------------------------------------

class AsymptoticRegime(str, enum.Enum):
    BROAD_NARROW = "BROAD_NARROW"
    ZEEMAN_LIKE = "ZEEMAN_LIKE"
    LARGE_L = "LARGE_L"


class AsymptoticPoles(NamedTuple):
    delta_plus: complex
    delta_minus: complex
    a_plus: complex
    a_minus: complex


def asymptotic_poles(params: CollectiveParams, regime) -> AsymptoticPoles:
    """
    Closed-form pole approximations for the three limiting regimes.

    BROAD_NARROW (L = 0, x >> 1)
        delta_+ = i(Gamma - phi^2/(4(Gamma-gamma))),
        delta_- = i(gamma + phi^2/(4(Gamma-gamma))),
        A_pm = 1/2 +- i x/(2 sqrt(1 - x^2)).
    ZEEMAN_LIKE (L = 0, x << 1)
        delta_pm = +-(phi/2 - (Gamma-gamma)^2/(4 phi)) + i(Gamma+gamma)/2,
        A_pm = 1/2 +- i(Gamma-gamma)/(2 phi).
    LARGE_L (|L|, phi >> Gamma - gamma), with R = sqrt(phi^2 + L^2)
        delta_pm = (-L + i(Gamma + gamma -/+ L(Gamma-gamma)/R) +- R)/2,
        A_pm = (R -/+ L)/(2R).

    Out-of-range parameters emit :class:`AsymptoticRangeWarning` and the
    formulas are evaluated anyway.
    """
    regime = AsymptoticRegime(regime)
    p = params
    g, G, L, phi = p.gamma, p.big_gamma, p.lamb_shift, p.phi
    D = G - g
    x = D / phi if phi > 0 else math.inf

    def warn(msg):
        warnings.warn(f"{regime.value}: {msg}", AsymptoticRangeWarning, stacklevel=3)

    if regime is AsymptoticRegime.BROAD_NARROW:
        if D == 0:
            raise ValueError("BROAD_NARROW asymptotics need Gamma > gamma")
        if not x >= 3:
            warn(f"x = {x:.3g} is not >> 1")
        if abs(L) > 0.1 * D:
            warn("formula assumes L = 0")
        shift = phi ** 2 / (4 * D)
        root = np.sqrt(complex(1 - x * x)) if math.isfinite(x) else 1j * math.inf
        corr = 1j * x / (2 * root) if math.isfinite(x) else 0.5
        return AsymptoticPoles(1j * (G - shift), 1j * (g + shift), 0.5 + corr, 0.5 - corr)

    if regime is AsymptoticRegime.ZEEMAN_LIKE:
        if phi == 0:
            raise ValueError("ZEEMAN_LIKE asymptotics need phi > 0")
        if not x <= 0.3:
            warn(f"x = {x:.3g} is not << 1")
        if abs(L) > 0.1 * phi:
            warn("formula assumes L = 0")
        re = phi / 2 - D ** 2 / (4 * phi)
        im = 0.5 * (G + g)
        corr = 0.5j * D / phi
        return AsymptoticPoles(re + 1j * im, -re + 1j * im, 0.5 + corr, 0.5 - corr)

    R = math.hypot(phi, L)
    if R == 0:
        raise ValueError("LARGE_L asymptotics need phi or L nonzero")
    if not (abs(L) >= 3 * D and phi >= 3 * D):
        warn("needs |L| and phi >> Gamma - gamma")
    width_shift = L * D / R
    dp = 0.5 * (-L + 1j * (G + g - width_shift) + R)
    dm = 0.5 * (-L + 1j * (G + g + width_shift) - R)
    return AsymptoticPoles(dp, dm, (R - L) / (2 * R), (R + L) / (2 * R))


# -- classification ----------------------------------------------------------

class Regime(str, enum.Enum):
    EIT_LIKE = "EIT_LIKE"
    ZEEMAN_LIKE = "ZEEMAN_LIKE"
    ANOMALOUS_COLLECTIVE = "ANOMALOUS_COLLECTIVE"
    DEGENERATE = "DEGENERATE"
    UNCLASSIFIED = "UNCLASSIFIED"


@dataclass(frozen=True)
class RegimeThresholds:
    """Numerical stand-ins for the qualitative >> / << conditions."""

    eit_lamb_fraction: float = 0.1   # |L| <= this * (Gamma - gamma)
    zeeman_x_max: float = 0.3        # x <= this
    zeeman_lamb_fraction: float = 0.1  # |L| <= this * phi
    anomalous_ratio: float = 3.0     # |L|, phi >= this * (Gamma - gamma)


@dataclass
class RegimeReport:
    label: Regime
    x: Optional[float]
    y: float
    lamb_over_excess: Optional[float]
    phi_over_excess: Optional[float]
    eit_lower_bound: bool  # Gamma*gamma <= phi^2/4
    eit_upper_bound: bool  # phi^2/4 < (Gamma - gamma)^2
    measured_splitting: float
    predicted_splitting: float
    thresholds: RegimeThresholds = field(default_factory=RegimeThresholds)

    def to_dict(self) -> dict:
        d = asdict(self)
        d["label"] = self.label.value
        return d


def classify_regime(params: CollectiveParams,
                    thresholds: RegimeThresholds = RegimeThresholds(),
                    grid: Optional[SpectrumGrid] = None) -> RegimeReport:
    """
    Label the spectral regime and collect the evidence behind the label.

    Rules are checked in order: DEGENERATE, EIT_LIKE, ZEEMAN_LIKE,
    ANOMALOUS_COLLECTIVE, else UNCLASSIFIED. ``predicted_splitting`` is the
    exact pole separation; ``measured_splitting`` comes from the maxima of
    ``grid`` (the default radiation spectrum if not given).
    """
    p, t = params, thresholds
    eig = collective_eigenvalues(p)
    D, L, phi = p.excess, p.lamb_shift, p.phi
    quarter = phi ** 2 / 4
    eit_lo = p.gamma * p.big_gamma <= quarter
    eit_hi = quarter < D ** 2
    if grid is None:
        grid = radiation_spectrum(p)
    measured = measure_splitting(grid).splitting

    if eig.degenerate:
        label = Regime.DEGENERATE
    elif abs(L) <= t.eit_lamb_fraction * D and eit_lo and eit_hi:
        label = Regime.EIT_LIKE
    elif (eig.x_param is not None and eig.x_param <= t.zeeman_x_max
          and abs(L) <= t.zeeman_lamb_fraction * phi):
        label = Regime.ZEEMAN_LIKE
    elif abs(L) >= t.anomalous_ratio * D and phi >= t.anomalous_ratio * D:
        label = Regime.ANOMALOUS_COLLECTIVE
    else:
        label = Regime.UNCLASSIFIED

    return RegimeReport(
        label=label, x=eig.x_param, y=eig.y_param,
        lamb_over_excess=L / D if D > 0 else None,
        phi_over_excess=phi / D if D > 0 else None,
        eit_lower_bound=eit_lo, eit_upper_bound=eit_hi,
        measured_splitting=measured,
        predicted_splitting=0.0 if eig.degenerate else eig.pole_splitting,
        thresholds=t,
    )

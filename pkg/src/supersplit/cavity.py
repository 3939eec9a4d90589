"""
Thin-film x-ray cavity: map (angle offset, hyperfine field) to collective
parameters and compute two-channel reflectivity spectra.

The nuclear layer couples to one cavity mode of decay rate ``kappa``. For a
grazing-angle offset ``dphi`` the mode is detuned by
``Delta_C = -omega * phi0 * dphi`` and the collective response of the layer is

    Gamma - gamma + i L = C / (kappa + i Delta_C)

so ``L = -C Delta_C / (kappa^2 + Delta_C^2)`` and
``Gamma = gamma + C kappa / (kappa^2 + Delta_C^2)``. ``C`` is fixed by
calibrating ``L`` at one angle.

Reflectivity is ``R(delta) = |r_el + q sigma(delta)|^2``. Two channel models:

``"input-output"`` (default)
    Critically coupled single-mode cavity:
    ``r_el = -i Delta_C / (kappa + i Delta_C)`` and
    ``q = i kappa (Gamma - gamma + i L) / (kappa + i Delta_C)``.
``"constant"``
    Fixed ``r_el`` off resonance (zero at ``dphi = 0``) and fixed ``q``.
"""
from __future__ import annotations

import configparser
import math
from dataclasses import dataclass, replace, fields
from pathlib import Path
from typing import Optional, Sequence

import numpy as np

from .eigen import CollectiveParams, collective_eigenvalues
from .spectrum import (SpectrumGrid, amplitude, default_span,
                       DEFAULT_POINTS, _sampled_grid)

#: (B in tesla, single-nucleus splitting phi in gamma) quoted for 57Fe.
MEASURED_FIELD_PAIRS = ((8.0, 15.0), (5.3, 10.0), (33.0, 62.0))

CHANNEL_MODELS = ("input-output", "constant")


class CalibrationError(ValueError):
    """Target Lamb shift has the wrong sign for the angle and sign convention."""


class ConfigError(ValueError):
    pass


def fit_b_coefficient(pairs: Sequence[tuple[float, float]]) -> float:
    """
    Least-squares slope through the origin of ``phi`` against ``B``.

    >>> round(fit_b_coefficient([(8, 15)]), 6)
    1.875
    """
    pairs = list(pairs)
    if len(pairs) < 1:
        raise ValueError("need at least one (B, phi) pair")
    b = np.array([p[0] for p in pairs], dtype=float)
    phi = np.array([p[1] for p in pairs], dtype=float)
    denom = float(b @ b)
    if denom == 0:
        raise ValueError("all field values are zero")
    return float(b @ phi) / denom


@dataclass(frozen=True)
class CavityConfig:
    """
    Cavity constants. Rates are in units of gamma, angles in radians.

    ``kappa`` and ``phi0`` defaults are placeholders, not measured values.
    ``coupling_C`` stays ``None`` until :func:`calibrate` fixes it.
    """

    phi0: float = 3.5e-3
    omega_over_gamma: float = 3.06e12
    kappa: float = 1.2e5
    coupling_C: Optional[float] = None
    b_to_phi: float = fit_b_coefficient(MEASURED_FIELD_PAIRS)
    lamb_sign: int = 1
    channel: str = "input-output"
    r_el_mag: float = 0.3
    r_el_phase: float = math.pi
    q_mag: Optional[float] = None  # None: unit peak reflectivity at dphi=0, B=0
    q_phase: float = -math.pi / 2

    def __post_init__(self):
        if not self.kappa > 0:
            raise ConfigError(f"kappa must be > 0, got {self.kappa}")
        if not self.phi0 > 0:
            raise ConfigError(f"phi0 must be > 0, got {self.phi0}")
        if not self.omega_over_gamma > 0:
            raise ConfigError("omega_over_gamma must be > 0")
        if self.coupling_C is not None and self.coupling_C < 0:
            raise ConfigError(f"coupling_C must be >= 0, got {self.coupling_C}")
        if self.lamb_sign not in (1, -1):
            raise ConfigError("lamb_sign must be +1 or -1")
        if self.channel not in CHANNEL_MODELS:
            raise ConfigError(f"channel must be one of {CHANNEL_MODELS}")

    @property
    def calibrated(self) -> bool:
        return self.coupling_C is not None


def detuning_from_angle(cfg: CavityConfig, delta_phi: float) -> float:
    """Cavity detuning ``-omega * phi0 * dphi`` in units of gamma."""
    if abs(delta_phi) >= cfg.phi0:
        raise ValueError(f"|delta_phi| = {abs(delta_phi)} must stay below phi0 = {cfg.phi0}")
    return -cfg.omega_over_gamma * cfg.phi0 * delta_phi


def _lorentz(cfg: CavityConfig, detuning: float) -> tuple[float, float]:
    denom = cfg.kappa ** 2 + detuning ** 2
    return cfg.kappa / denom, -detuning / denom


def collective_params_from_cavity(cfg: CavityConfig, delta_phi: float,
                                  b_field: float) -> CollectiveParams:
    """Collective ``(Gamma, L, phi)`` at one angle offset and field (gamma = 1)."""
    if not cfg.calibrated:
        raise ConfigError("cavity coupling is not calibrated")
    absorptive, dispersive = _lorentz(cfg, detuning_from_angle(cfg, delta_phi))
    return CollectiveParams(
        big_gamma=1.0 + cfg.coupling_C * absorptive,
        lamb_shift=cfg.lamb_sign * cfg.coupling_C * dispersive,
        phi=cfg.b_to_phi * b_field,
    )


def calibrate(cfg: CavityConfig, target_L: float, at_delta_phi: float) -> CavityConfig:
    """Solve ``coupling_C`` so that ``L(at_delta_phi) == target_L``."""
    if target_L == 0 or at_delta_phi == 0:
        raise ValueError("calibration needs nonzero target_L and angle")
    _, dispersive = _lorentz(cfg, detuning_from_angle(cfg, at_delta_phi))
    coupling = target_L / (cfg.lamb_sign * dispersive)
    if coupling < 0:
        raise CalibrationError(
            f"L = {target_L} at {at_delta_phi} rad conflicts with lamb_sign={cfg.lamb_sign}")
    return replace(cfg, coupling_C=coupling)


def channel_weights(cfg: CavityConfig, delta_phi: float,
                    params: Optional[CollectiveParams] = None) -> tuple[complex, complex]:
    """Electronic amplitude ``r_el`` and nuclear weight ``q`` at one angle."""
    if params is None:
        params = collective_params_from_cavity(cfg, delta_phi, 0.0)
    if cfg.channel == "constant":
        r_el = 0j if delta_phi == 0 else cfg.r_el_mag * complex(math.cos(cfg.r_el_phase),
                                                                math.sin(cfg.r_el_phase))
        q_mag = cfg.q_mag
        if q_mag is None:
            # |sigma|^2 peaks at 1/Gamma^2 for the unsplit resonant line
            q_mag = collective_params_from_cavity(cfg, 0.0, 0.0).big_gamma
        q = q_mag * complex(math.cos(cfg.q_phase), math.sin(cfg.q_phase))
        return r_el, q
    detuning = detuning_from_angle(cfg, delta_phi)
    mode = cfg.kappa + 1j * detuning
    response = params.excess + 1j * params.lamb_shift
    return -1j * detuning / mode, 1j * cfg.kappa * response / mode


def baseline_reflectivity(cfg: CavityConfig, delta_phi: float) -> float:
    """Off-resonant reflectivity ``|r_el|^2`` (the nuclear term vanishes far out)."""
    r_el, _ = channel_weights(cfg, delta_phi)
    return abs(r_el) ** 2


def reflectivity_spectrum(cfg: CavityConfig, delta_phi: float, b_field: float,
                          span: Optional[float] = None,
                          n_points: int = DEFAULT_POINTS,
                          r_electronic: Optional[complex] = None,
                          q: Optional[complex] = None) -> SpectrumGrid:
    """
    ``R(delta) = |r_el + q sigma(delta)|^2`` on a uniform grid.

    ``r_electronic`` and ``q`` override the channel model when given.
    """
    params = collective_params_from_cavity(cfg, delta_phi, b_field)
    eig = collective_eigenvalues(params)
    r_model, q_model = channel_weights(cfg, delta_phi, params)
    r_el = r_model if r_electronic is None else complex(r_electronic)
    weight = q_model if q is None else complex(q)
    if span is None:
        span = default_span(params)

    def refl(d):
        return np.abs(r_el + weight * amplitude(eig, d)) ** 2

    return _sampled_grid(refl, span, n_points, False, "reflectivity")


def dip_separation(grid: SpectrumGrid) -> float:
    """Distance between the two deepest minima (0 with fewer than two)."""
    dips = sorted(grid.minima, key=lambda e: e.value)
    if len(dips) < 2:
        return 0.0
    return abs(dips[0].position - dips[1].position)


# -- config files ------------------------------------------------------------

_FLOAT_KEYS = {
    "phi0_mrad": ("phi0", 1e-3),
    "kappa_over_gamma": ("kappa", 1.0),
    "omega_over_gamma": ("omega_over_gamma", 1.0),
    "coupling_c": ("coupling_C", 1.0),
    "b_to_phi": ("b_to_phi", 1.0),
    "r_el_mag": ("r_el_mag", 1.0),
    "r_el_phase": ("r_el_phase", 1.0),
    "q_mag": ("q_mag", 1.0),
    "q_phase": ("q_phase", 1.0),
}
_CONSTANT_KEYS = {"r_el_mag", "r_el_phase", "q_mag", "q_phase"}


def parse_config(text: str) -> CavityConfig:
    """
    Read a ``[cavity]`` section of ``key = value`` lines.

    Keys: phi0_mrad, kappa_over_gamma, omega_over_gamma, coupling_C,
    b_to_phi, lamb_sign, channel, r_el_mag, r_el_phase, q_mag, q_phase.
    Phases are in radians. Giving any r_el_*/q_* key without ``channel``
    selects the constant channel model.
    """
    parser = configparser.ConfigParser()
    try:
        parser.read_string(text)
    except configparser.Error as exc:
        raise ConfigError(str(exc)) from exc
    if not parser.has_section("cavity"):
        raise ConfigError("missing [cavity] section")
    section = parser["cavity"]
    kwargs = {}
    for key, raw in section.items():
        if key in _FLOAT_KEYS:
            name, factor = _FLOAT_KEYS[key]
            try:
                kwargs[name] = float(raw) * factor
            except ValueError as exc:
                raise ConfigError(f"{key}: not a number: {raw!r}") from exc
        elif key == "lamb_sign":
            try:
                kwargs["lamb_sign"] = int(raw)
            except ValueError as exc:
                raise ConfigError(f"lamb_sign: not an integer: {raw!r}") from exc
        elif key == "channel":
            kwargs["channel"] = raw.strip()
        else:
            raise ConfigError(f"unknown key {key!r}")
    if "channel" not in kwargs and _CONSTANT_KEYS & set(section):
        kwargs["channel"] = "constant"
    return CavityConfig(**kwargs)


def load_config(path) -> CavityConfig:
    return parse_config(Path(path).read_text())


def format_config(cfg: CavityConfig) -> str:
    """Inverse of :func:`parse_config` (lossless for float fields)."""
    inverse = {v[0]: (k, v[1]) for k, v in _FLOAT_KEYS.items()}
    lines = ["[cavity]"]
    for f in fields(cfg):
        value = getattr(cfg, f.name)
        if value is None:
            continue
        if f.name in inverse:
            key, factor = inverse[f.name]
            key = "coupling_C" if key == "coupling_c" else key
            lines.append(f"{key} = {value / factor!r}")
        else:
            lines.append(f"{f.name} = {value}")
    return "\n".join(lines) + "\n"

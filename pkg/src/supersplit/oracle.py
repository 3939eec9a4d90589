"""
Brute-force N-atom check of the closed-form eigenvalues and spectra.

In the small-sample limit every pair of emitters exchanges photons with the
same complex coupling. For ``n1`` atoms driven on transition 1 and ``n2`` on
transition 2 the single-excitation amplitudes obey ``d beta/dt = -M beta``
with

    M_jj = gamma + i phi_j,     phi_j = +phi/2 (group 1), -phi/2 (group 2)
    M_jm = s = (Gamma - gamma + i L)/N      (j != m)

Matrix construction, diagonalisation and propagation never touch the
closed-form eigenvalues; those enter only in the comparison helpers.
"""
from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from .eigen import CollectiveParams, eigenvalues
from .spectrum import SpectrumGrid, find_extrema, radiation_spectrum

MAX_ATOMS = 2048
COND_LIMIT = 1e8


class IllConditionedWarning(RuntimeWarning):
    pass


@dataclass
class EnsembleMatrix:
    params: CollectiveParams
    n1: int
    n2: int
    entries: np.ndarray
    coupling: complex
    intergroup_sign: int = 1

    @property
    def n_atoms(self) -> int:
        return self.n1 + self.n2

    def group_basis(self) -> np.ndarray:
        """Orthonormal group-uniform vectors as the columns of an N x 2 array."""
        basis = np.zeros((self.n_atoms, 2))
        basis[:self.n1, 0] = 1 / math.sqrt(self.n1)
        basis[self.n1:, 1] = 1 / math.sqrt(self.n2)
        return basis

    def uniform_state(self) -> np.ndarray:
        return np.full(self.n_atoms, 1 / math.sqrt(self.n_atoms), dtype=complex)


def build_matrix(params: CollectiveParams, n1: int, n2: int,
                 intergroup_sign: int = 1) -> EnsembleMatrix:
    """
    Dense all-to-all effective matrix for ``n1 + n2`` emitters.

    ``intergroup_sign = -1`` flips the sign of every coupling between the two
    groups (a gauge change of group 2) and leaves the eigenvalues unchanged.
    """
    if n1 != n2:
        raise ValueError(f"only equal populations are supported (n1={n1}, n2={n2})")
    if n1 < 1:
        raise ValueError("need at least one atom per group")
    if n1 + n2 > MAX_ATOMS:
        raise ValueError(f"N = {n1 + n2} exceeds the dense limit {MAX_ATOMS}")
    if intergroup_sign not in (1, -1):
        raise ValueError("intergroup_sign must be +1 or -1")
    p = params
    n = n1 + n2
    s = (p.big_gamma - p.gamma + 1j * p.lamb_shift) / n
    m = np.full((n, n), s, dtype=complex)
    m[:n1, n1:] *= intergroup_sign
    m[n1:, :n1] *= intergroup_sign
    detuning = np.where(np.arange(n) < n1, 0.5 * p.phi, -0.5 * p.phi)
    np.fill_diagonal(m, p.gamma + 1j * detuning)
    return EnsembleMatrix(p, n1, n2, m, s, intergroup_sign)


def projected_matrix(mat: EnsembleMatrix) -> np.ndarray:
    """2x2 restriction of ``M`` to the group-uniform subspace."""
    b = mat.group_basis()
    return b.T @ mat.entries @ b


def symmetric_subspace_eigenvalues(mat: EnsembleMatrix) -> tuple[complex, complex]:
    """Eigenvalues of the group-uniform projection, sorted by decay rate."""
    lam = np.linalg.eigvals(projected_matrix(mat))
    lam = sorted(lam, key=lambda z: (z.real, z.imag))
    return complex(lam[0]), complex(lam[1])


@dataclass
class ModeDecomposition:
    eigenvalues: np.ndarray
    weights: np.ndarray  # c_m = (w^T V)_m (V^-1 beta0)_m
    condition: float
    vectors: np.ndarray = field(repr=False)
    coefficients: np.ndarray = field(repr=False)  # V^-1 beta0

    @property
    def ill_conditioned(self) -> bool:
        return self.condition > COND_LIMIT

    def bright(self, count: int = 2) -> np.ndarray:
        """Indices of the ``count`` modes carrying the largest emission weight."""
        return np.argsort(-np.abs(self.weights), kind="stable")[:count]


def decompose(mat: EnsembleMatrix) -> ModeDecomposition:
    """Full dense eigendecomposition with emission weights for uniform excitation."""
    lam, vec = np.linalg.eig(mat.entries)
    beta0 = mat.uniform_state()
    coef = np.linalg.solve(vec, beta0)
    weights = (beta0.conj() @ vec) * coef
    cond = float(np.linalg.cond(vec))
    if cond > COND_LIMIT:
        warnings.warn(f"eigenbasis condition number {cond:.3g} > {COND_LIMIT:g}",
                      IllConditionedWarning, stacklevel=2)
    return ModeDecomposition(lam, weights, cond, vec, coef)


def evolve(mat: EnsembleMatrix, times, modes: Optional[ModeDecomposition] = None):
    """
    Propagate the uniformly excited state.

    Returns
    -------
    population : ndarray
        Total excited-state population ``||beta(t)||^2``.
    emitted : ndarray
        Emitting amplitude ``w . beta(t)`` with ``w`` the uniform state.
    """
    modes = modes or decompose(mat)
    times = np.atleast_1d(np.asarray(times, dtype=float))
    phases = np.exp(-np.outer(times, modes.eigenvalues))
    beta = (phases * modes.coefficients) @ modes.vectors.T
    population = np.sum(np.abs(beta) ** 2, axis=1)
    emitted = beta @ mat.uniform_state().conj()
    return population, emitted


@dataclass
class OracleSpectrum:
    grid: SpectrumGrid
    mode_eigenvalues: np.ndarray
    mode_weights: np.ndarray
    condition: float
    flagged: bool
    t_max: float


def evolve_and_spectrum(mat: EnsembleMatrix, t_max: Optional[float], delta_values,
                        n_modes: int = 2) -> OracleSpectrum:
    """
    Emission spectrum from the eigendecomposition of ``M``.

    The emitted amplitude is Fourier transformed over ``[0, t_max]`` mode by
    mode, keeping the ``n_modes`` brightest modes:

        sigma(delta) = i sum_m c_m (1 - exp(-(lambda_m + i delta) t_max)) / (lambda_m + i delta)

    ``t_max`` must be at least ten lifetimes of the slowest bright mode;
    ``None`` picks forty.
    """
    modes = decompose(mat)
    keep = modes.bright(n_modes)
    lam, c = modes.eigenvalues[keep], modes.weights[keep]
    slowest = float(np.min(lam.real))
    if slowest <= 0:
        raise ValueError("bright mode does not decay; check parameters")
    if t_max is None:
        t_max = 40.0 / slowest
    if t_max < 10 / slowest:
        raise ValueError(f"t_max={t_max} is shorter than 10/{slowest:.4g}")
    deltas = np.asarray(delta_values, dtype=float)

    def amp(d):
        z = np.add.outer(np.atleast_1d(d), lam / 1j) * 1j  # lambda_m + i d
        terms = c * (1 - np.exp(-z * t_max)) / z
        return 1j * terms.sum(axis=-1)

    def intensity(d):
        out = np.abs(amp(d)) ** 2
        return out if np.ndim(d) else float(out[0])

    values = intensity(deltas)
    extrema = find_extrema(intensity, deltas, values)
    grid = SpectrumGrid(deltas, values, extrema)
    return OracleSpectrum(grid, lam, c, modes.condition, modes.ill_conditioned, t_max)


# -- self-check suite ------------------------------------------------------

REFERENCE_PARAMS = (
    CollectiveParams(19, 0, 15),
    CollectiveParams(19, 0, 62),
    CollectiveParams(3, 20, 30),
    CollectiveParams(1, 6.6, 10),
    CollectiveParams(19, 5, 0),
)


def pair_distance(first, second) -> float:
    """Distance between two eigenvalue pairs under the better of the two matchings."""
    (a, b), (c, d) = first, second
    return min(max(abs(a - c), abs(b - d)), max(abs(a - d), abs(b - c)))


def eigen_error(params: CollectiveParams, n_atoms: int) -> float:
    """Largest distance between projected-oracle and closed-form eigenvalues."""
    oracle = symmetric_subspace_eigenvalues(build_matrix(params, n_atoms // 2, n_atoms // 2))
    closed = [complex(v) for v in eigenvalues(params.gamma, params.big_gamma,
                                              params.lamb_shift, params.phi)]
    return pair_distance(oracle, closed)


def convergence_slope(params: CollectiveParams, sizes: Sequence[int]) -> float:
    """Log-log slope of the eigenvalue error against N (expected near -1)."""
    errs = [eigen_error(params, n) for n in sizes]
    return float(np.polyfit(np.log(sizes), np.log(errs), 1)[0])


def spectrum_discrepancy(params: CollectiveParams, n_atoms: int,
                         n_points: int = 4001) -> float:
    """
    ``max |I_oracle - I_closed| / max I_closed`` over the default grid.
    """
    closed = radiation_spectrum(params, n_points=n_points)
    mat = build_matrix(params, n_atoms // 2, n_atoms // 2)
    oracle = evolve_and_spectrum(mat, None, closed.delta_values)
    return float(np.max(np.abs(oracle.grid.intensity - closed.intensity))
                 / np.max(closed.intensity))


@dataclass
class CheckResult:
    name: str
    passed: bool
    value: float
    limit: float

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"{status} {self.name}: {self.value:.6e} (limit {self.limit:.3e})"


@dataclass
class OracleReport:
    checks: list
    notes: list

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def text(self) -> str:
        lines = [c.line() for c in self.checks] + [f"NOTE {n}" for n in self.notes]
        lines.append("OK" if self.passed else "FAILED")
        return "\n".join(lines) + "\n"


def _random_params(rng, count):
    big = 10 ** rng.uniform(0, 4, count)
    lamb = rng.uniform(-1e3, 1e3, count)
    phi = rng.uniform(0, 1e3, count)
    return np.ones(count), big, lamb, phi


def run_oracle_suite(n_max: int = 512, seed: int = 0,
                     n_random: int = 200) -> OracleReport:
    """
    Identity, convergence and spectrum checks against the dense oracle.

    The convergence fit needs at least three sizes ``64 <= N <= n_max``
    (powers of two) and is skipped otherwise; identity checks always run.
    """
    if n_max > MAX_ATOMS:
        raise ValueError(f"n_max must be <= {MAX_ATOMS}")
    if n_max < 2:
        raise ValueError("n_max must be >= 2")
    rng = np.random.default_rng(seed)
    checks, notes = [], []
    n_id = max(2, n_max - n_max % 2)

    # projected eigenvalues are eigenvalues of the full matrix
    worst_full = 0.0
    worst_trace = 0.0
    for p in REFERENCE_PARAMS:
        mat = build_matrix(p, n_id // 2, n_id // 2)
        full = np.linalg.eigvals(mat.entries)
        scale = np.max(np.abs(full))
        for lam in symmetric_subspace_eigenvalues(mat):
            worst_full = max(worst_full, np.min(np.abs(full - lam)) / scale)
        worst_trace = max(worst_trace, abs(full.sum() - n_id * p.gamma) / (n_id * scale))
    checks.append(CheckResult(f"projection-in-full-spectrum N={n_id}",
                              worst_full <= 1e-8, worst_full, 1e-8))
    checks.append(CheckResult(f"matrix-trace N={n_id}",
                              worst_trace <= 1e-12, worst_trace, 1e-12))

    # sign flip of the inter-group coupling
    worst_sign = 0.0
    for p in REFERENCE_PARAMS:
        a = symmetric_subspace_eigenvalues(build_matrix(p, n_id // 2, n_id // 2))
        b = symmetric_subspace_eigenvalues(build_matrix(p, n_id // 2, n_id // 2, -1))
        worst_sign = max(worst_sign, pair_distance(a, b) / max(abs(a[0]), abs(a[1])))
    checks.append(CheckResult("intergroup-sign-invariance", worst_sign <= 1e-12,
                              worst_sign, 1e-12))

    # closed-form algebra on random parameters
    g, big, lamb, phi = _random_params(rng, n_random)
    lp, lm = eigenvalues(g, big, lamb, phi)
    tr = big + g + 1j * lamb
    det = g * big + phi ** 2 / 4 + 1j * lamb * g
    tr_err = float(np.max(np.abs(lp + lm - tr) / np.abs(tr)))
    det_err = float(np.max(np.abs(lp * lm - det) / np.abs(det)))
    checks.append(CheckResult("trace-identity", tr_err <= 1e-10, tr_err, 1e-10))
    checks.append(CheckResult("determinant-identity", det_err <= 1e-10, det_err, 1e-10))

    # finite-N oracle approaches the closed form within O(1/N)
    worst_bound = 0.0
    for p in REFERENCE_PARAMS:
        c = abs(p.excess + 1j * p.lamb_shift)
        err = eigen_error(p, n_id)
        worst_bound = max(worst_bound, err / max(c, 1e-300) * n_id)
    checks.append(CheckResult(f"eigen-error*N/|Gamma-gamma+iL| N={n_id}",
                              worst_bound <= 1.0 + 1e-8, worst_bound, 1.0 + 1e-8))

    sizes = [2 ** k for k in range(6, 12) if 2 ** k <= n_max]
    if len(sizes) >= 3:
        slopes = [convergence_slope(p, sizes) for p in REFERENCE_PARAMS]
        for p, s in zip(REFERENCE_PARAMS, slopes):
            ok = 0.8 <= -s <= 1.2
            checks.append(CheckResult(
                f"convergence-order Gamma={p.big_gamma:g} L={p.lamb_shift:g} phi={p.phi:g}",
                ok, -s, 1.2))
        notes.append(f"convergence sizes {sizes}")
        n_spec = sizes[-1]
        limit = 0.01 + 4.0 / n_spec
        worst = max(spectrum_discrepancy(p, n_spec) for p in REFERENCE_PARAMS)
        checks.append(CheckResult(f"spectrum-discrepancy N={n_spec}", worst <= limit,
                                  worst, limit))
    else:
        notes.append(f"convergence fit skipped: {len(sizes)} sizes between 64 and {n_max}")
    return OracleReport(checks, notes)

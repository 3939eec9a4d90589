"""
Collective magnetic splitting in single-photon superradiance.

Closed-form collective eigenvalues for two magnetically split transitions,
two-pole radiation spectra, a dense N-atom cross-check, and a simplified
thin-film x-ray cavity reflectivity model.
"""
__version__ = "0.1.0"

from .eigen import (CollectiveParams, EigenSystem, collective_eigenvalues,
                    eigenvalues, regime_parameters)
from .spectrum import (AsymptoticRegime, Regime, RegimeReport, RegimeThresholds,
                       SpectrumGrid, asymptotic_poles, classify_regime,
                       degenerate_amplitude, measure_splitting, radiation_spectrum,
                       spectral_amplitude)
from .cavity import (CavityConfig, calibrate, collective_params_from_cavity,
                     detuning_from_angle, fit_b_coefficient, reflectivity_spectrum)
from .oracle import (build_matrix, evolve_and_spectrum, run_oracle_suite,
                     symmetric_subspace_eigenvalues)

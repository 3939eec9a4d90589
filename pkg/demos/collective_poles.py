"""
Collective poles of two split transitions
=========================================

Two groups of nuclei share one delocalised excitation. Each group on its
own would decay at ``gamma``; together they decay at ``Gamma`` and pick
up a collective Lamb shift ``L``. A magnetic field splits the two groups
by ``phi``. This walk-through shows how the two collective poles move as
``phi`` grows, and where the spectrum changes character.

Run with ``python demos/collective_poles.py``.
"""
import numpy as np

from supersplit import (CollectiveParams, classify_regime, collective_eigenvalues,
                        regime_parameters)

# %%
# Without a field the system has one superradiant pole at Gamma + iL and
# one subradiant pole at gamma.
p = CollectiveParams(big_gamma=19, lamb_shift=5, phi=0)
eig = collective_eigenvalues(p)
print("phi = 0:", eig.lambda_plus, eig.lambda_minus)

# %%
# Sweep phi with L = 0. The poles stay on the imaginary delta axis (pure
# decay rates) until phi reaches Gamma - gamma, where they merge. Past that
# point they separate along the real axis, and the splitting approaches phi.
print(f"\n{'phi':>6} {'Re lam+':>9} {'Re lam-':>9} {'pole split':>11}  regime")
for phi in [0, 5, 10, 15, 18, 20, 30, 62, 120]:
    p = CollectiveParams(19, 0, phi)
    eig = collective_eigenvalues(p)
    report = classify_regime(p)
    print(f"{phi:6.0f} {eig.lambda_plus.real:9.3f} {eig.lambda_minus.real:9.3f} "
          f"{eig.pole_splitting:11.3f}  {report.label.value}")

# %%
# The crossover parameter y = phi / (Gamma - gamma) sits at 1 exactly at
# the merge point, where the two-pole form turns into a double pole.
x, y = regime_parameters(CollectiveParams(3, 0, 2))
print("\nat the merge point: y =", y, " degenerate =",
      collective_eigenvalues(CollectiveParams(3, 0, 2)).degenerate)

# %%
# With no collective enhancement (Gamma = gamma) the pole splitting is
# simply the hypotenuse of phi and L.
for phi, lamb in [(10, 6.6), (30, 40), (5, 100)]:
    eig = collective_eigenvalues(CollectiveParams(1, lamb, phi))
    print(f"Gamma = gamma, phi={phi}, L={lamb}: split {eig.pole_splitting:.5f}"
          f"  vs hypot {np.hypot(phi, lamb):.5f}")

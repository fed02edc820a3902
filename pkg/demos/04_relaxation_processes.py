"""Spin-lattice relaxation: residual, direct-phonon and Orbach regimes.

The rate law has three terms. The direct single-phonon term grows as
gamma^2 B^4 T and wins at high field and low temperature; the two-phonon
Orbach term is exponentially activated across the crystal-field gap and
wins above ~2 K. Because the gap itself grows quadratically with B, the
Orbach term first rises with field (through its coupling) and then falls
(through the gap), which is why the 4 K field sweep is non-monotonic.
"""

import math

import numpy as np

from tmyag import relaxation
from tmyag.constants import load_constants

params = relaxation.REFERENCE_RELAX_PARAMS
gamma = 4.0e8  # effective gyromagnetic ratio along [111] for sites 1/3/5

print("Rate breakdown (Hz) on the temperature sweep at 3 T:")
print("  T_K    residual    direct      orbach      total")
for t in (1.6, 2.0, 2.5, 3.0, 3.5, 4.0, 4.5):
    res, direct, orb = relaxation.rate_terms(3.0, t, gamma, params)
    print(f"  {t:3.1f}   {res:.2e}   {direct:.2e}   {orb:.2e}   "
          f"{res + direct + orb:.2e}")

print("\nField sweep at 1.6 K (direct term takes over, ~B^4):")
print("  B_T    direct      orbach      total")
for b in (0.0, 2.0, 3.0, 4.0, 5.0, 6.0):
    res, direct, orb = relaxation.rate_terms(b, 1.6, gamma, params)
    print(f"  {b:3.0f}   {direct:.2e}   {orb:.2e}   {res + direct + orb:.2e}")

print("\nField sweep at 4 K (Orbach rises then falls):")
print("  B_T    orbach_Hz")
for b in np.linspace(0.0, 6.0, 13):
    orb = relaxation.rate_terms(b, 4.0, gamma, params)[2]
    print(f"  {b:4.1f}   {orb:.3f}")

print("\nDominant term over the (B, T) box:")
b_grid = np.linspace(0.0, 6.0, 7)
t_grid = np.linspace(1.6, 4.5, 7)
grid = relaxation.dominance_map(b_grid, t_grid, gamma, params)
header = "  B\\T " + "".join(f"{t:>9.2f}" for t in t_grid)
print(header)
for i, b in enumerate(b_grid):
    print(f"  {b:3.0f} " + "".join(f"{grid[i, j]:>9s}" for j in range(t_grid.size)))

consts = load_constants()
estimate = relaxation.bleaney_alpha_d(gamma, consts.rho, consts.v_l, consts.v_t)
print(f"\nOrder-of-magnitude direct-phonon coefficient from the phonon bath:")
print(f"  {estimate:.3e} (Hz K T^2)^-1, vs the fitted {params.alpha_D:.1e}")
print("  (the estimate approximates coupling matrix elements, so an order of")
print("  magnitude of headroom is expected)")

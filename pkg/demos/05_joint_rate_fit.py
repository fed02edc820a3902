"""Joint 2-D fit of the rate law to pooled (B, T) datasets.

The three standard experiments (temperature sweep at 3 T, field sweeps at
1.6 K and 4 K) are fitted together with field and temperature as
variables. Residuals are taken in log space because the rates span five
decades. This demo generates synthetic data from the reference parameter
set, perturbs it with 10% multiplicative noise, and recovers the six
parameters.
"""

import numpy as np

from tmyag import fitting, relaxation

truth = relaxation.REFERENCE_RELAX_PARAMS
gamma = 4.0e8
rng = np.random.default_rng(1)

datasets = []
for bs, ts, label in [(np.full(12, 3.0), np.linspace(1.6, 4.5, 12), "T-sweep@3T"),
                      (np.linspace(0, 6, 10), np.full(10, 1.6), "B-sweep@1.6K"),
                      (np.linspace(0, 6, 10), np.full(10, 4.0), "B-sweep@4K")]:
    rates = np.array([relaxation.rate(b, t, gamma, truth, check_regime=False)
                      for b, t in zip(bs, ts)])
    rates *= 1.0 + 0.10 * rng.standard_normal(rates.size)
    datasets.append(relaxation.RateDataset(B=bs, T=ts, rate=rates,
                                           sigma=0.10 * rates, label=label))

init = relaxation.RelaxParams(1e-4, 1e-24, 1e4, 1e4, 1e12, 5e9)
result = fitting.joint_relax_fit(datasets, gamma, init)

truth_vec = [truth.R0, truth.alpha_D, truth.alpha, truth.beta,
             truth.delta_CF0, truth.gamma_CF]
print(f"converged in {result.iterations} iterations, "
      f"residual norm {result.residual_norm:.3f}")
print(f"{'parameter':>10s} {'truth':>12s} {'fitted':>12s} {'stderr':>12s} {'err%':>6s}")
for name, tv, fv, se in zip(fitting.RELAX_PARAM_NAMES, truth_vec,
                            result.params, result.std_errors):
    print(f"{name:>10s} {tv:12.3e} {fv:12.3e} {se:12.3e} "
          f"{abs(fv / tv - 1) * 100:5.1f}%")

print("\nIdentifiability note: without low-temperature data the direct term is")
print("unconstrained; pooled data must span at least two fields and two")
print("temperatures or the fit raises InsufficientCoverage.")

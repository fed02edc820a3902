"""Weighted nonlinear least squares by damped Gauss-Newton.

The solver minimizes |r(p)|^2 for a sigma-normalized residual vector,
using a Levenberg-style damping schedule (multiply/divide the damping
factor by 10 on reject/accept), central-difference numerical Jacobians,
and an internal reparameterization by per-parameter scale hints so that
conditioning is insensitive to dynamic range between parameters (the
joint relaxation fit spans ~16 decades). Bounds are handled by projecting
candidate steps; covariance is (J^T J)^-1 at the solution, so rescaling
all sigmas by k leaves the estimate unchanged and scales the covariance
by k^2.

Evaluation order is deterministic: residuals are accumulated in input
order, and the pooled relaxation fit sorts records by content so the
result is bit-identical under permutation of the data.
"""

from dataclasses import dataclass, field

import numpy as np

from .errors import (NoConvergence, SingularNormalEquations, BoundsViolation,
                     InsufficientCoverage)


@dataclass
class FitProblem:
    """A weighted least-squares problem.

    residual maps a parameter vector to (model - data)/sigma; scales are
    positive magnitude hints used for internal normalization and Jacobian
    steps; bounds are (lower, upper) arrays (None for unbounded).
    """

    residual: callable
    scales: np.ndarray
    lower: np.ndarray = None
    upper: np.ndarray = None
    description: str = ""

    def __post_init__(self):
        self.scales = np.asarray(self.scales, dtype=float)
        if np.any(self.scales <= 0):
            raise ValueError("scale hints must be strictly positive")
        n = self.scales.size
        self.lower = (np.full(n, -np.inf) if self.lower is None
                      else np.asarray(self.lower, dtype=float))
        self.upper = (np.full(n, np.inf) if self.upper is None
                      else np.asarray(self.upper, dtype=float))
        if np.any(self.lower >= self.upper):
            raise ValueError("bounds must satisfy lower < upper")


@dataclass
class FitOptions:
    step_tol: float = 1e-10      # relative step size
    resid_tol: float = 1e-12     # relative residual decrease
    max_iter: int = 200
    damping0: float = 1e-3
    damping_max: float = 1e16


@dataclass
class FitResult:
    params: np.ndarray
    covariance: np.ndarray
    residual_norm: float
    iterations: int
    converged: bool
    std_errors: np.ndarray
    history: list = field(default_factory=list)


def jacobian_step(scales):
    """Per-parameter central-difference step, 1e-7 of the parameter scale.

    The step rule lives in the scale-normalized parameterization (step
    max(1e-7, 1e-12) per unit scale); an absolute floor would destroy
    derivatives for parameters whose natural magnitude is far below it,
    such as the direct-phonon coefficient (~1e-24).
    """
    return max(1e-7, 1e-12) * np.asarray(scales, dtype=float)


def numerical_jacobian(residual, p, scales=None):
    """Central-difference Jacobian of residual at p."""
    p = np.asarray(p, dtype=float)
    if scales is None:
        scales = np.maximum(np.abs(p), 1.0)
    steps = jacobian_step(scales)
    r0 = np.asarray(residual(p), dtype=float)
    jac = np.empty((r0.size, p.size))
    for k in range(p.size):
        dp = np.zeros_like(p)
        dp[k] = steps[k]
        r_plus = np.asarray(residual(p + dp), dtype=float)
        r_minus = np.asarray(residual(p - dp), dtype=float)
        jac[:, k] = (r_plus - r_minus) / (2.0 * steps[k])
    return jac


def least_squares(problem, init, opts=None):
    """Minimize |problem.residual(p)|^2 starting from init.

    Convergence requires both the relative step and the relative residual
    decrease to fall below the tolerances. Raises NoConvergence when the
    iteration budget runs out and SingularNormalEquations when damping is
    exhausted without an acceptable step.
    """
    opts = opts or FitOptions()
    scales = problem.scales
    p = np.asarray(init, dtype=float).copy()
    if p.size != scales.size:
        raise ValueError("init length does not match scales")
    if np.any(p < problem.lower) or np.any(p > problem.upper):
        raise BoundsViolation(f"initial parameters violate bounds: {p}")

    def ssq(params):
        r = np.asarray(problem.residual(params), dtype=float)
        return r, float(r @ r)

    r, s = ssq(p)
    if r.size < p.size:
        raise ValueError("need at least as many residuals as parameters")
    damping = opts.damping0
    history = [s]
    converged = False
    iterations = 0

    for iterations in range(1, opts.max_iter + 1):
        jac = numerical_jacobian(problem.residual, p, scales)
        jac_q = jac * scales[np.newaxis, :]   # d r / d (p/scale)
        a = jac_q.T @ jac_q
        g = jac_q.T @ r
        diag = np.diag(a).copy()
        diag[diag <= 0] = 1.0

        while True:
            try:
                dq = np.linalg.solve(a + damping * np.diag(diag), -g)
            except np.linalg.LinAlgError:
                dq = None
            if dq is not None:
                p_new = np.clip(p + dq * scales, problem.lower, problem.upper)
                r_new, s_new = ssq(p_new)
                if np.isfinite(s_new) and s_new <= s:
                    break
            damping *= 10.0
            if damping > opts.damping_max:
                raise SingularNormalEquations(
                    f"damping exhausted at iteration {iterations} "
                    f"(residual norm {np.sqrt(s):.3e})")

        step_rel = float(np.max(np.abs(p_new - p) / np.maximum(np.abs(p), scales)))
        decrease_rel = (s - s_new) / s if s > 0 else 0.0
        p, r, s = p_new, r_new, s_new
        history.append(s)
        damping = max(damping / 10.0, 1e-14)
        if (step_rel < opts.step_tol and decrease_rel < opts.resid_tol) or s == 0.0:
            converged = True
            break

    if not converged:
        raise NoConvergence(
            f"no convergence in {opts.max_iter} iterations "
            f"(residual norm {np.sqrt(s):.3e})",
            iterations=iterations, residual=float(np.sqrt(s)),
            best_params=p, residual_history=history)

    jac = numerical_jacobian(problem.residual, p, scales)
    jac_q = jac * scales[np.newaxis, :]
    a = jac_q.T @ jac_q
    try:
        cov_q = np.linalg.inv(a)
    except np.linalg.LinAlgError:
        cov_q = np.linalg.pinv(a)
    cov = cov_q * np.outer(scales, scales)
    std = np.sqrt(np.maximum(np.diag(cov), 0.0))
    return FitResult(params=p, covariance=cov, residual_norm=float(np.sqrt(s)),
                     iterations=iterations, converged=True, std_errors=std,
                     history=history)


RELAX_PARAM_NAMES = ("R0", "alpha_D", "alpha", "beta", "delta_CF0", "gamma_CF")


def _pooled_records(datasets):
    records = []
    for ds in datasets:
        for b, t, rate, sigma in zip(ds.B, ds.T, ds.rate, ds.sigma):
            records.append((ds.label, float(b), float(t), float(rate), float(sigma)))
    records.sort()
    return records


def joint_relax_fit(datasets, gamma, init, opts=None):
    """Joint 2-D fit of the relaxation law to pooled (B, T) rate datasets.

    gamma is the effective gyromagnetic ratio along the field (Hz/T); init
    supplies starting values for (R0, alpha_D, alpha, beta, delta_CF0,
    gamma_CF). Residuals are taken in log space, ln(R_model/R_data)
    weighted by relative sigma, because rates span several decades.
    """
    from . import relaxation

    records = _pooled_records(datasets)
    b_all = np.array([rec[1] for rec in records])
    t_all = np.array([rec[2] for rec in records])
    rates = np.array([rec[3] for rec in records])
    sigma_rel = np.array([rec[4] for rec in records]) / rates
    if np.unique(b_all).size < 2 or np.unique(t_all).size < 2:
        raise InsufficientCoverage(
            "pooled data must span at least two field values and two "
            "temperatures to constrain the rate law")

    log_rates = np.log(rates)

    def resid(p):
        params = relaxation.RelaxParams(*p)
        out = np.empty(rates.size)
        for idx in range(rates.size):
            model = relaxation.rate(b_all[idx], t_all[idx], gamma, params,
                                    check_regime=False)
            out[idx] = (np.log(max(model, 1e-300)) - log_rates[idx]) / sigma_rel[idx]
        return out

    p0 = np.array([init.R0, init.alpha_D, init.alpha, init.beta,
                   init.delta_CF0, init.gamma_CF], dtype=float)
    scales = np.maximum(np.abs(p0), 1e-300)
    lower = np.array([0.0, 0.0, 0.0, 0.0, 2.5e11, 0.0])
    upper = np.array([np.inf, np.inf, np.inf, np.inf, 2.0e12, np.inf])
    problem = FitProblem(residual=resid, scales=scales, lower=lower, upper=upper,
                         description="joint relaxation-rate fit")
    return least_squares(problem, p0, opts)


def relax_params_from_fit(result):
    """RelaxParams view of a joint_relax_fit result."""
    from . import relaxation
    return relaxation.RelaxParams(*result.params)

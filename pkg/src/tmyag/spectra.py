"""Inhomogeneous absorption line synthesis and Lorentzian fitting.

Spectra are sums of Lorentzian lines, one per magnetically equivalent site
class: each line sits at the class's quadratic Zeeman shift, its width is
the zero-field width plus the quadratic broadening contribution, and its
area carries the squared dipole projection of the class (times the
field-dependent integrated linestrength). The internal representation is
the absorption coefficient alpha(nu) in 1/cm; transmission exp(-alpha L)
is an I/O transform.
"""

import math
from dataclasses import dataclass

import numpy as np

from . import geometry, zeeman
from .errors import InvalidGrid, DegenerateInit

# Default quadratic broadening of the optical line, Hz/T^2, from the
# measured crystal-field parameters (gamma_CF = 8.0 GHz/T^2, splitting
# inhomogeneity Gamma_CF = 27 GHz, splitting 0.83 THz).
DEFAULT_GAMMA_CF = 8.0e9
DEFAULT_GAMMA_CF_INHOMOGENEITY = 2.7e10
# Default quadratic decrease of the integrated linestrength, Hz/cm/T^2
# (-1.3 GHz cm^-1 T^-2).
DEFAULT_LINESTRENGTH_SLOPE = -1.3e9

# Zero-field line of the 0.1%-doped crystal: 17 GHz FWHM, 2.3 1/cm peak.
DEFAULT_FWHM0 = 1.7e10
DEFAULT_PEAK0 = 2.3


@dataclass(frozen=True)
class LineShape:
    """A Lorentzian absorption line.

    center is the detuning from the zero-field transition frequency (Hz),
    fwhm the full width at half maximum (Hz), peak_alpha the peak
    absorption coefficient (1/cm) and area the integrated absorption
    (Hz/cm), tied to the others by area = pi/2 * peak_alpha * fwhm.
    """

    center: float
    fwhm: float
    peak_alpha: float
    area: float = None

    def __post_init__(self):
        if not self.fwhm > 0:
            raise ValueError(f"fwhm must be > 0, got {self.fwhm!r}")
        if self.peak_alpha < 0:
            raise ValueError(f"peak_alpha must be >= 0, got {self.peak_alpha!r}")
        exact = math.pi / 2.0 * self.peak_alpha * self.fwhm
        if self.area is None:
            object.__setattr__(self, "area", exact)
        elif abs(self.area - exact) > 1e-9 * max(abs(exact), 1e-300):
            raise ValueError(f"area {self.area!r} inconsistent with "
                             f"pi/2*peak*fwhm = {exact!r}")


@dataclass(frozen=True, eq=False)
class Spectrum:
    """Absorption coefficient sampled on a uniform detuning grid."""

    detuning: np.ndarray   # Hz, strictly increasing, uniform
    alpha: np.ndarray      # 1/cm
    sigma: np.ndarray = None

    def __post_init__(self):
        object.__setattr__(self, "detuning", np.asarray(self.detuning, float))
        object.__setattr__(self, "alpha", np.asarray(self.alpha, float))
        _check_grid(self.detuning)
        if not np.all(np.isfinite(self.alpha)):
            raise InvalidGrid("absorption values must be finite")
        if self.sigma is not None:
            object.__setattr__(self, "sigma", np.asarray(self.sigma, float))

    @property
    def step(self):
        return float(self.detuning[1] - self.detuning[0])


def _check_grid(grid):
    if grid.ndim != 1 or grid.size < 4:
        raise InvalidGrid("grid must be a 1-D array with at least 4 points")
    steps = np.diff(grid)
    if np.any(steps <= 0):
        raise InvalidGrid("grid must be strictly increasing")
    span = abs(grid[-1] - grid[0])
    if np.max(steps) - np.min(steps) > 1e-9 * span:
        raise InvalidGrid("grid must be uniform to 1e-9 relative")


def lorentzian(nu, center, fwhm, peak):
    """Lorentzian with the given peak value and FWHM."""
    x = 2.0 * (np.asarray(nu, float) - center) / fwhm
    return peak / (1.0 + x * x)


def window_area(line, lo, hi):
    """Analytic integral of a LineShape over [lo, hi] (Hz/cm).

    The full-line integral equals line.area; the difference is the
    Lorentzian tail outside the window, which is substantial even several
    widths out (9% beyond +-3.5 FWHM).
    """
    half = line.fwhm / 2.0
    return line.peak_alpha * half * (math.atan((hi - line.center) / half)
                                     - math.atan((lo - line.center) / half))


def synthesize_lines(field_cfg, polarization, consts, line0, *,
                     broadening_coeff=None, linestrength_slope=DEFAULT_LINESTRENGTH_SLOPE):
    """Per-class Lorentzian decomposition of the absorption line.

    Returns a list of (site_class, LineShape) pairs. Class weights are the
    summed squared dipole projections, normalized over all six sites; the
    summed line area follows the integrated-linestrength model
    line0.area * (1 + slope*B^2/line0.area), and each width is line0.fwhm
    plus the quadratic broadening. Classes with zero dipole projection are
    dropped (their amplitude is exactly zero).
    """
    if broadening_coeff is None:
        broadening_coeff = zeeman.broadening(
            1.0, DEFAULT_GAMMA_CF, DEFAULT_GAMMA_CF_INHOMOGENEITY, consts.delta_CF0)
    b = field_cfg.magnitude
    b_vec = geometry.field_vector(field_cfg)
    if b == 0.0:
        classes = [tuple(range(1, 7))]
    else:
        classes = geometry.equivalence_classes(b_vec)

    projections = {i: geometry.dipole_projection(geometry.site_frame(i), polarization)
                   for i in range(1, 7)}
    total_weight = sum(p * p for p in projections.values())

    fwhm = line0.fwhm + broadening_coeff * b * b
    strength_ratio = zeeman.linestrength(b, line0.area, linestrength_slope) / line0.area

    lines = []
    for cls in classes:
        weight = sum(projections[i] ** 2 for i in cls) / total_weight
        if weight == 0.0:
            continue
        if b == 0.0:
            center = 0.0
        else:
            center = zeeman.shift_coefficient(cls[0], b_vec, consts) * b * b
        peak = line0.peak_alpha * (line0.fwhm / fwhm) * weight * strength_ratio
        lines.append((cls, LineShape(center=center, fwhm=fwhm, peak_alpha=peak)))
    lines.sort(key=lambda item: item[1].center)
    return lines


def synthesize_spectrum(field_cfg, polarization, grid, consts, line0, *,
                        broadening_coeff=None,
                        linestrength_slope=DEFAULT_LINESTRENGTH_SLOPE):
    """Absorption spectrum on a detuning grid: sum over site-class lines."""
    grid = np.asarray(grid, dtype=float)
    _check_grid(grid)
    lines = synthesize_lines(field_cfg, polarization, consts, line0,
                             broadening_coeff=broadening_coeff,
                             linestrength_slope=linestrength_slope)
    alpha = np.zeros_like(grid)
    for _, line in lines:
        alpha += lorentzian(grid, line.center, line.fwhm, line.peak_alpha)
    return Spectrum(detuning=grid, alpha=alpha)


@dataclass(frozen=True)
class SpectrumFit:
    """Result of a Lorentzian-sum fit.

    lines are sorted by center; std_errors holds one (center, fwhm, peak)
    uncertainty triple per line. ambiguous marks overlapping-component
    fits: components closer than half their mean width, a center
    uncertainty exceeding the line width, or a component fitted to zero
    amplitude.
    """

    lines: tuple
    std_errors: tuple
    residual_norm: float
    ambiguous: bool
    iterations: int


def _initial_lines(spectrum, n_lines):
    """Peak-pick initial (center, fwhm, peak) triples from the data."""
    step = spectrum.step
    vals = spectrum.alpha.copy()
    floor = np.max(vals)
    inits = []
    for _ in range(n_lines):
        idx = int(np.argmax(vals))
        peak = float(vals[idx])
        center = float(spectrum.detuning[idx])
        above = vals >= peak / 2.0
        lo = idx
        while lo > 0 and above[lo - 1]:
            lo -= 1
        hi = idx
        while hi < vals.size - 1 and above[hi + 1]:
            hi += 1
        fwhm = max((hi - lo + 1) * step, 3.0 * step)
        inits.append((center, fwhm, max(peak, 1e-6 * floor)))
        mask_lo = np.searchsorted(spectrum.detuning, center - 1.5 * fwhm)
        mask_hi = np.searchsorted(spectrum.detuning, center + 1.5 * fwhm)
        vals[mask_lo:mask_hi] = -np.inf
    return inits


def fit_lorentzian(spectrum, n_lines=1, init=None, opts=None):
    """Weighted least-squares fit of a sum of n_lines Lorentzians.

    init may give starting LineShapes; otherwise peaks are picked from the
    data. Raises DegenerateInit when two starting centers fall within one
    grid step, and NoConvergence from the underlying solver.
    """
    from . import fitting

    if n_lines < 1:
        raise ValueError("n_lines must be >= 1")
    span = spectrum.detuning[-1] - spectrum.detuning[0]
    if init is not None:
        triples = [(ln.center, ln.fwhm, ln.peak_alpha) for ln in init]
        if len(triples) != n_lines:
            raise ValueError("init length must equal n_lines")
    else:
        triples = _initial_lines(spectrum, n_lines)

    step = spectrum.step
    centers = sorted(t[0] for t in triples)
    for c1, c2 in zip(centers, centers[1:]):
        if abs(c2 - c1) < step:
            raise DegenerateInit(
                f"initial centers {c1:.6g} and {c2:.6g} closer than the "
                f"grid step {step:.6g}")

    sigma = spectrum.sigma if spectrum.sigma is not None else np.ones_like(spectrum.alpha)

    def resid(p):
        model = np.zeros_like(spectrum.alpha)
        for k in range(n_lines):
            c, w, a = p[3 * k:3 * k + 3]
            model += lorentzian(spectrum.detuning, c, w, a)
        return (model - spectrum.alpha) / sigma

    p0, scales, lower, upper = [], [], [], []
    for c, w, a in triples:
        p0 += [c, w, a]
        scales += [max(abs(c), span / 10.0), w, max(a, 1e-12)]
        lower += [-np.inf, step / 10.0, 0.0]
        upper += [np.inf, np.inf, np.inf]
    problem = fitting.FitProblem(residual=resid, scales=np.array(scales),
                                 lower=np.array(lower), upper=np.array(upper),
                                 description=f"{n_lines}-Lorentzian fit")
    result = fitting.least_squares(problem, np.array(p0), opts)

    order = np.argsort(result.params[0::3])
    lines, errors = [], []
    for k in order:
        c, w, a = result.params[3 * k:3 * k + 3]
        lines.append(LineShape(center=float(c), fwhm=float(w), peak_alpha=float(a)))
        errors.append(tuple(result.std_errors[3 * k:3 * k + 3]))

    ambiguous = False
    max_peak = max(ln.peak_alpha for ln in lines)
    for k, (ln, err) in enumerate(zip(lines, errors)):
        if err[0] > ln.fwhm or ln.peak_alpha <= 1e-9 * max_peak:
            ambiguous = True
        if k > 0:
            gap = ln.center - lines[k - 1].center
            if gap < 0.5 * 0.5 * (ln.fwhm + lines[k - 1].fwhm):
                ambiguous = True

    return SpectrumFit(lines=tuple(lines), std_errors=tuple(errors),
                       residual_norm=result.residual_norm, ambiguous=ambiguous,
                       iterations=result.iterations)

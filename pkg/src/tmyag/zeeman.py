"""Enhanced nuclear Zeeman splittings and quadratic Zeeman shifts.

The nuclear spin 1/2 of 169Tm has no zero-field structure; an applied field
splits each electronic singlet into two nuclear sublevels through the
enhanced nuclear Zeeman interaction, with the splitting given by the
Euclidean norm of the componentwise product of the local gyromagnetic
tensor and the local field. The same second-order mixing displaces every
crystal-field level quadratically in B (Van Vleck paramagnetism); the
optical line moves by the difference of the ground- and excited-state
displacements. The model is strictly quadratic, valid while the shifts
stay far below the crystal-field splitting.
"""

import math
import warnings
from dataclasses import dataclass

import numpy as np

from . import geometry
from .errors import ZeroDirection, NonpositiveSplitting

# Measured quadratic shift coefficient for the magnetically equivalent
# y||<110>+ sites with B || [111] (0.1% doping). The tensor model built from
# the default constants gives 4.25 GHz/T^2 for the same configuration; both
# values are reported, the difference is not arbitrated here.
MEASURED_GAMMA2_111 = 4.69e9  # Hz/T^2


@dataclass(frozen=True)
class ZeemanResult:
    """Splittings (Hz, linear in B) and displacements (Hz, quadratic in B)."""

    site_index: int
    splitting_ground: float
    splitting_excited: float
    D_ground: float
    D_excited: float
    optical_shift: float  # D_ground - D_excited


def _frame(site):
    if isinstance(site, geometry.SiteFrame):
        return site
    return geometry.site_frame(site)


def _state_params(state, consts):
    if state == "ground":
        return np.asarray(consts.gamma_J_ground), consts.g_J_ground, consts.A_J_ground
    if state == "excited":
        return np.asarray(consts.gamma_J_excited), consts.g_J_excited, consts.A_J_excited
    raise ValueError(f"state must be 'ground' or 'excited', got {state!r}")


def hyperfine_splitting(site, b_lab, state, consts):
    """Nuclear sublevel splitting in Hz for one state, |(gx Bx, gy By, gz Bz)|."""
    gamma, _, _ = _state_params(state, consts)
    b = geometry.local_field(_frame(site), b_lab)
    return float(np.linalg.norm(gamma * b))


def quadratic_displacement(site, b_lab, state, consts):
    """Quadratic Zeeman displacement of the lowest crystal-field level, in Hz.

    D/h = g_J mu_B / (2 h A_J) * sum_a (gamma_a - gamma_n) B_a^2 with local
    field components; quadratic in |B|.
    """
    gamma, g_J, A_J = _state_params(state, consts)
    b = geometry.local_field(_frame(site), b_lab)
    scale = g_J * (consts.mu_B / consts.h) / (2.0 * A_J)
    return float(scale * np.sum((gamma - consts.gamma_n) * b * b))


def optical_shift(site, b_lab, consts):
    """Shift of the optical transition, D_ground - D_excited, in Hz."""
    d_g = quadratic_displacement(site, b_lab, "ground", consts)
    d_e = quadratic_displacement(site, b_lab, "excited", consts)
    shift = d_g - d_e
    if abs(shift) > 0.1 * consts.delta_CF0:
        warnings.warn(
            "optical shift exceeds 10% of the crystal-field splitting; the "
            "purely quadratic model is leaving its validity range",
            stacklevel=2,
        )
    return shift


def zeeman_result(site, b_lab, consts):
    """Full set of splittings and displacements for one site and field."""
    frame = _frame(site)
    d_g = quadratic_displacement(frame, b_lab, "ground", consts)
    d_e = quadratic_displacement(frame, b_lab, "excited", consts)
    return ZeemanResult(
        site_index=frame.site_index,
        splitting_ground=hyperfine_splitting(frame, b_lab, "ground", consts),
        splitting_excited=hyperfine_splitting(frame, b_lab, "excited", consts),
        D_ground=d_g,
        D_excited=d_e,
        optical_shift=d_g - d_e,
    )


def shift_coefficient(site, direction, consts):
    """Quadratic shift coefficient gamma_2 in Hz/T^2 for a field direction.

    The model has no higher-order terms, so optical_shift(B) equals
    coefficient * B^2 for all B.
    """
    d = np.asarray(direction, dtype=float)
    norm = np.linalg.norm(d)
    if norm == 0.0:
        raise ZeroDirection("field direction must be nonzero")
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        return optical_shift(site, d / norm, consts)


def shift_curve(sites, thetas, magnitude, consts):
    """Optical shift vs field angle, grouped by magnetic equivalence.

    Returns a list of (theta, site_class, shift_Hz) rows where site_class is
    the tuple of requested sites sharing one equivalence class at that
    angle. No symmetry is assumed beyond what the site frames imply.
    """
    if magnitude < 0:
        raise ValueError("field magnitude must be >= 0")
    rows = []
    for theta in thetas:
        direction = geometry.field_vector(geometry.FieldConfig(1.0, theta))
        classes = geometry.equivalence_classes(direction)
        for cls in classes:
            members = tuple(i for i in cls if i in sites)
            if not members:
                continue
            shift = shift_coefficient(cls[0], direction, consts) * magnitude ** 2
            rows.append((theta, members, shift))
    return rows


def broadening(b, gamma_CF, Gamma_CF, delta_CF):
    """Quadratic-Zeeman contribution to the optical inhomogeneous width, Hz.

    gamma_CF is the quadratic coefficient of the crystal-field splitting
    (Hz/T^2), Gamma_CF its inhomogeneous broadening (Hz), delta_CF the
    splitting itself (Hz).
    """
    if not delta_CF > 0:
        raise NonpositiveSplitting(f"delta_CF must be > 0, got {delta_CF!r}")
    return gamma_CF * Gamma_CF / delta_CF * b * b


def crystal_field_splitting(b, params):
    """Field-dependent splitting of the two lowest 3H6 levels, Hz."""
    return params.delta_CF0 + params.gamma_CF * b * b


def linestrength(b, k0, c):
    """Integrated transition linestrength k0 + c*B^2 (Hz/cm with SI inputs)."""
    value = k0 + c * b * b
    if value < 0:
        warnings.warn(
            f"linestrength model is negative at B={b} T; quadratic decrease "
            "extrapolated beyond its validity",
            stacklevel=2,
        )
    return value

"""Material constants for Tm3+:YAG.

All values are SI with frequencies in Hz; GHz/THz appear only at I/O
boundaries. Constants load from a versioned JSON config (each entry is
{"value": ..., "provenance": "..."}) or from the compiled-in default set,
and are validated against the self-consistency checks in :func:`validate`.
"""

import hashlib
import json
from dataclasses import dataclass, field, asdict

import numpy as np

from .errors import MissingField, ParseError, InvariantViolation

CONFIG_VERSION = 1

# Fields that hold (x, y, z) tensors in the local site frame.
_TENSOR_FIELDS = ("gamma_J_ground", "gamma_J_excited")

_SCALAR_FIELDS = (
    "g_J_ground", "g_J_excited", "A_J_ground", "A_J_excited", "gamma_n",
    "delta_CF0", "nu0", "rho", "v_l", "v_t", "k_B", "h", "mu_B",
)


@dataclass(frozen=True)
class MaterialConstants:
    """Physical constants and material parameters of the Tm3+:YAG system.

    gamma_J tensors are the enhanced nuclear gyromagnetic tensors
    (Hz/T, diagonal in the local D2 frame); A_J are signed effective
    hyperfine constants in Hz; the displacement scale of the quadratic
    Zeeman shift is g_J*mu_B/(2*h*A_J).
    """

    g_J_ground: float          # Lande factor of 3H6
    g_J_excited: float         # Lande factor of 3H4
    A_J_ground: float          # Hz
    A_J_excited: float         # Hz
    gamma_n: float             # bare 169Tm nuclear gyromagnetic ratio, Hz/T
    gamma_J_ground: tuple      # (gx, gy, gz), Hz/T
    gamma_J_excited: tuple     # (gx, gy, gz), Hz/T
    delta_CF0: float           # zero-field splitting of the two lowest 3H6 levels, Hz
    nu0: float                 # zero-field optical transition frequency, Hz
    rho: float                 # crystal density, kg/m^3
    v_l: float                 # longitudinal acoustic velocity, m/s
    v_t: float                 # transverse acoustic velocity, m/s
    k_B: float                 # J/K
    h: float                   # J s
    mu_B: float                # J/T
    provenance: dict = field(default_factory=dict, compare=False)


def lande_g(L, S, J):
    """Lande factor g_J = 1 + [J(J+1) + S(S+1) - L(L+1)] / [2 J(J+1)]."""
    return 1.0 + (J * (J + 1) + S * (S + 1) - L * (L + 1)) / (2 * J * (J + 1))


# Compiled-in default constants. The same content ships as
# data/constants_default.json for editing outside the package.
DEFAULT_CONSTANTS = {
    "version": CONFIG_VERSION,
    "g_J_ground": {
        "value": 7.0 / 6.0,
        "provenance": "Lande formula for 3H6 (L=5, S=1, J=6).",
    },
    "g_J_excited": {
        "value": 4.0 / 5.0,
        "provenance": "Lande formula for 3H4 (L=5, S=1, J=4).",
    },
    "A_J_ground": {
        "value": -5.63e8,
        "provenance": "Effective 3H6 hyperfine constant. Together with the ground "
                      "gamma_J tensor it sets the displacement scale g_J*mu_B/(2*h*A_J); "
                      "calibrated so the [111] quadratic shift coefficient of the "
                      "y||<110>+ sites is 4.25 GHz/T^2, inside the 4.2-4.7 GHz/T^2 "
                      "band bracketed by second-order theory and high-field spectroscopy.",
    },
    "A_J_excited": {
        "value": -3.25e8,
        "provenance": "Effective 3H4 hyperfine constant; same calibration as "
                      "A_J_ground. The excited-state displacement is a ~10% "
                      "correction to the optical shift.",
    },
    "gamma_n": {
        "value": -3.531e6,
        "provenance": "Bare 169Tm nuclear gyromagnetic ratio (mu = -0.2316 mu_N, "
                      "I = 1/2), Hz/T.",
    },
    "gamma_J_ground": {
        "value": [-3.0e7, -4.9e8, -2.0e7],
        "provenance": "Enhanced nuclear Zeeman tensor of the lowest 3H6 level, "
                      "local frame, Hz/T. Strongly anisotropic, dominated by the "
                      "local-y component as established by hole-burning "
                      "spectroscopy; normalized so the effective ratio along "
                      "[111] for the y||<110>+ sites is 400 MHz/T.",
    },
    "gamma_J_excited": {
        "value": [-1.885e7, -4.473e7, -1.391e7],
        "provenance": "Enhanced nuclear Zeeman tensor of the lowest 3H4 level, "
                      "local frame, Hz/T; [111] projection ~10x smaller than the "
                      "ground state. With this tensor the y||<110>- sites keep a "
                      "near-zero [111] shift coefficient (0.10 GHz/T^2, i.e. the "
                      "null is reproduced approximately, not exactly).",
    },
    "delta_CF0": {
        "value": 8.3e11,
        "provenance": "Zero-field splitting of the two lowest 3H6 crystal-field "
                      "levels; high-field relaxation fits give 0.83 THz, direct "
                      "spectroscopy 0.81 THz.",
    },
    "nu0": {
        "value": 3.77868e14,
        "provenance": "Zero-field 3H6(1)->3H4(1) transition frequency "
                      "(793.38 nm).",
    },
    "rho": {
        "value": 4564.0,
        "provenance": "YAG mass density, kg/m^3.",
    },
    "v_l": {
        "value": 8600.0,
        "provenance": "Longitudinal acoustic velocity in YAG, m/s.",
    },
    "v_t": {
        "value": 5000.0,
        "provenance": "Transverse acoustic velocity in YAG, m/s.",
    },
    "k_B": {"value": 1.380649e-23, "provenance": "SI exact."},
    "h": {"value": 6.62607015e-34, "provenance": "SI exact."},
    "mu_B": {"value": 9.2740100783e-24, "provenance": "CODATA 2018."},
}


def _from_config(doc):
    values = {}
    provenance = {}
    for name in _SCALAR_FIELDS:
        if name not in doc:
            raise MissingField(f"constants file is missing '{name}'")
        entry = doc[name]
        values[name] = float(entry["value"])
        provenance[name] = str(entry.get("provenance", ""))
    for name in _TENSOR_FIELDS:
        if name not in doc:
            raise MissingField(f"constants file is missing '{name}'")
        entry = doc[name]
        vec = entry["value"]
        if len(vec) != 3:
            raise InvariantViolation(name, vec, "3-component tensor diagonal")
        values[name] = tuple(float(x) for x in vec)
        provenance[name] = str(entry.get("provenance", ""))
    return MaterialConstants(provenance=provenance, **values)


def load_constants(source="default"):
    """Load and validate material constants.

    source is either the string "default" (compiled-in set) or a path to a
    JSON config following the shipped schema. Any invariant violation is a
    hard error naming the failed check.
    """
    if source == "default":
        doc = DEFAULT_CONSTANTS
    else:
        with open(source, "r", encoding="utf-8") as fh:
            try:
                doc = json.load(fh)
            except json.JSONDecodeError as exc:
                raise ParseError(str(exc), line=exc.lineno) from exc
    consts = _from_config(doc)
    validate(consts)
    return consts


def write_constants(consts, path):
    """Write constants back out in the config schema; round-trips load_constants."""
    doc = {"version": CONFIG_VERSION}
    for name in _SCALAR_FIELDS + _TENSOR_FIELDS:
        value = getattr(consts, name)
        if isinstance(value, tuple):
            value = list(value)
        doc[name] = {"value": value,
                     "provenance": consts.provenance.get(name, "")}
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(doc, fh, indent=2, sort_keys=False)
        fh.write("\n")


def validate(consts):
    """Check every MaterialConstants invariant; raise InvariantViolation on failure."""
    g6 = lande_g(5, 1, 6)
    if abs(consts.g_J_ground - g6) > 1e-12:
        raise InvariantViolation("g_J_ground", consts.g_J_ground, f"{g6} (Lande 3H6)")
    g4 = lande_g(5, 1, 4)
    if abs(consts.g_J_excited - g4) > 1e-12:
        raise InvariantViolation("g_J_excited", consts.g_J_excited, f"{g4} (Lande 3H4)")

    for name in ("rho", "v_l", "v_t", "delta_CF0", "nu0"):
        value = getattr(consts, name)
        if not value > 0:
            raise InvariantViolation(name, value, ">0")

    for axis, gg, ge in zip("xyz", consts.gamma_J_ground, consts.gamma_J_excited):
        if not abs(gg) > abs(ge):
            raise InvariantViolation(f"gamma_J_ground.{axis}", gg,
                                     f"|ground| > |excited|={abs(ge)}")

    # Effective ground-state gyromagnetic ratio along [111] for the sites
    # whose optical dipole has a positive [111] projection (1, 3, 5).
    from . import geometry
    frame = geometry.site_frame(1)
    b = geometry.local_field(frame, np.array([1.0, 1.0, 1.0]) / np.sqrt(3.0))
    eff = float(np.linalg.norm(np.asarray(consts.gamma_J_ground) * b))
    if abs(eff / 4.00e8 - 1.0) > 0.05:
        raise InvariantViolation("gamma_J_ground [111] projection", eff,
                                 "4.00e8 Hz/T within 5%")


def constants_hash(consts):
    """sha256 over the canonical value set (provenance excluded)."""
    doc = {name: getattr(consts, name) for name in _SCALAR_FIELDS}
    for name in _TENSOR_FIELDS:
        doc[name] = list(getattr(consts, name))
    payload = json.dumps(doc, sort_keys=True).encode("utf-8")
    return hashlib.sha256(payload).hexdigest()


def as_dict(consts):
    """Plain-dict view of the constants (provenance included)."""
    return asdict(consts)

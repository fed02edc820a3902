"""Site geometry of the six orientation classes of Tm3+ in YAG.

Each substitutional site has D2 point symmetry; the six classes share that
symmetry but differ in the orientation of the local (x, y, z) frame with
respect to the cubic crystal axes. The optical transition dipole lies along
the local y axis, which points along a <110> direction; the local z axis
points along a cube axis.

Site numbering is fixed by two requirements taken together: the dipole
projections on a [-1-12] polarization must be 0 for site 2, sqrt(3)/2 for
sites 4 and 6, 1/sqrt(3) for site 1 and 1/(2 sqrt(3)) for sites 3 and 5;
and sites {1,3,5} / {2,4,6} must each be magnetically equivalent for a
field along [111], with {3,5} and {4,6} staying equivalent everywhere in
the ([111], [-1-12]) scan plane. Other numbering conventions exist in the
literature; this one is normative for the package.
"""

import math
from dataclasses import dataclass

import numpy as np

from .errors import IndexOutOfRange, ZeroField, ZeroDirection

_S = 1.0 / math.sqrt(2.0)

# Local axes (x, y, z) of each site expressed in the cubic lab frame.
_SITE_AXES = {
    1: ((_S, -_S, 0.0), (_S, _S, 0.0), (0.0, 0.0, 1.0)),
    2: ((_S, _S, 0.0), (-_S, _S, 0.0), (0.0, 0.0, 1.0)),
    3: ((0.0, _S, -_S), (0.0, _S, _S), (1.0, 0.0, 0.0)),
    4: ((0.0, _S, _S), (0.0, -_S, _S), (1.0, 0.0, 0.0)),
    5: ((-_S, 0.0, _S), (_S, 0.0, _S), (0.0, 1.0, 0.0)),
    6: ((-_S, 0.0, -_S), (-_S, 0.0, _S), (0.0, 1.0, 0.0)),
}

# Unit vectors spanning the field scan plane; the plane also contains [001],
# reached at theta = arccos(1/sqrt(3)) ~ 54.7356 deg from [111].
U_111 = np.array([1.0, 1.0, 1.0]) / math.sqrt(3.0)
U_112BAR = np.array([-1.0, -1.0, 2.0]) / math.sqrt(6.0)
THETA_001 = math.acos(1.0 / math.sqrt(3.0))


@dataclass(frozen=True, eq=False)
class SiteFrame:
    """Rotation from one site's local D2 frame to the cubic lab frame.

    rotation columns are the local x, y, z axes in lab coordinates;
    dipole_lab is the optical dipole direction (local y) in the lab frame.
    """

    site_index: int
    rotation: np.ndarray
    dipole_lab: np.ndarray


@dataclass(frozen=True)
class FieldConfig:
    """Magnetic field of given magnitude (T) at angle theta (rad) from [111].

    theta rotates from [111] toward [-1-12] within the scan plane.
    """

    magnitude: float
    theta: float = 0.0

    def __post_init__(self):
        if self.magnitude < 0:
            raise ValueError("field magnitude must be >= 0")


def site_frame(i):
    """Return the SiteFrame for site i in 1..6."""
    if i not in _SITE_AXES:
        raise IndexOutOfRange(f"site index must be 1..6, got {i!r}")
    rotation = np.array(_SITE_AXES[i]).T
    return SiteFrame(site_index=i, rotation=rotation, dipole_lab=rotation[:, 1].copy())


def site_frames():
    """All six frames, in site order."""
    return [site_frame(i) for i in range(1, 7)]


def field_vector(cfg):
    """Lab-frame field vector (Tesla) for a FieldConfig."""
    direction = math.cos(cfg.theta) * U_111 + math.sin(cfg.theta) * U_112BAR
    return cfg.magnitude * direction


def local_field(frame, b_lab):
    """Field components in the site's local (x, y, z) frame."""
    return frame.rotation.T @ np.asarray(b_lab, dtype=float)


def dipole_projection(frame, e_lab):
    """|mu_hat . E_hat|, the relative optical coupling for a polarization."""
    e = np.asarray(e_lab, dtype=float)
    norm = np.linalg.norm(e)
    if norm == 0.0:
        raise ZeroDirection("polarization vector must be nonzero")
    d = frame.dipole_lab
    # scalar sum, not BLAS dot: fused multiply-add breaks the exact
    # cancellation that makes symmetry-forbidden projections come out 0.0
    dot = float(d[0]) * float(e[0]) + float(d[1]) * float(e[1]) \
        + float(d[2]) * float(e[2])
    return abs(dot / norm)


def equivalence_classes(b_lab, rtol=1e-9):
    """Partition of sites 1..6 into magnetically equivalent groups.

    Sites are equivalent iff the absolute values of their local field
    components agree componentwise within rtol * |B|. The partition is
    invariant under rescaling of the field magnitude.
    """
    b = np.asarray(b_lab, dtype=float)
    magnitude = np.linalg.norm(b)
    if magnitude == 0.0:
        raise ZeroField("equivalence classes are undefined at zero field")
    tol = rtol * magnitude
    triples = {i: np.abs(local_field(site_frame(i), b)) for i in range(1, 7)}
    classes = []
    for i in range(1, 7):
        for cls in classes:
            if np.all(np.abs(triples[cls[0]] - triples[i]) <= tol):
                cls.append(i)
                break
        else:
            classes.append([i])
    return tuple(tuple(cls) for cls in classes)

"""Scan geometry: spherical samples, hemispherical grids, and pose chains.

Conventions. ISO physics spherical coordinates with the DUT boresight along
+z: ``phi`` is azimuth in degrees in [0, 360) measured from +x toward +y,
``theta`` is the polar angle from boresight in degrees in [0, 90], ``r`` is
the scan radius in meters. Degrees at every public boundary, radians only
inside computations.

Probe orientation. A probe pose aims its local +z (boresight) at the DUT
origin, i.e. along -r_hat. The local +x axis lies in the meridian plane
spanned by r_hat and global +z (polarization-consistent roll); at the pole,
where that plane is undefined, local +x is fixed to global +x.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DegenerateGeometry, InvalidGrid, PoseError

_ORTHO_TOL = 1e-9
_DIV_TOL = 1e-9


@dataclass(frozen=True)
class SphericalSample:
    """One observation direction (phi, theta, r) on the scan hemisphere.

    ``phi_deg`` is normalized to [0, 360). At ``theta_deg == 0`` the azimuth
    is degenerate and the sample is stored with the canonical ``phi_deg = 0``.
    """

    phi_deg: float
    theta_deg: float
    r_m: float

    def __post_init__(self):
        phi = float(self.phi_deg) % 360.0
        theta = float(self.theta_deg)
        r = float(self.r_m)
        if not 0.0 <= theta <= 90.0:
            raise ValueError(f"theta_deg must be in [0, 90], got {theta}")
        if not r > 0.0:
            raise ValueError(f"r_m must be > 0, got {r}")
        if theta == 0.0:
            phi = 0.0
        object.__setattr__(self, "phi_deg", phi)
        object.__setattr__(self, "theta_deg", theta)
        object.__setattr__(self, "r_m", r)

    def to_cartesian(self) -> np.ndarray:
        """Position in the DUT frame, meters."""
        phi = math.radians(self.phi_deg)
        theta = math.radians(self.theta_deg)
        st, ct = math.sin(theta), math.cos(theta)
        return np.array(
            [self.r_m * st * math.cos(phi), self.r_m * st * math.sin(phi), self.r_m * ct]
        )


def cartesian_to_spherical(point) -> tuple[float, float, float]:
    """Inverse of :meth:`SphericalSample.to_cartesian`, tolerant of theta > 90.

    Returns ``(phi_deg, theta_deg, r_m)`` with theta in [0, 180]; used for
    evaluating jittered probe positions that may leave the hemisphere, so it
    deliberately does not construct a validated :class:`SphericalSample`.
    """
    p = np.asarray(point, dtype=float).reshape(3)
    r = float(np.linalg.norm(p))
    if r == 0.0:
        raise DegenerateGeometry("point coincides with the DUT origin")
    theta = math.degrees(math.acos(max(-1.0, min(1.0, p[2] / r))))
    phi = math.degrees(math.atan2(p[1], p[0])) % 360.0
    return phi, theta, r


@dataclass(frozen=True, eq=False)
class Pose:
    """Rigid transform: 3x3 proper rotation plus translation in meters.

    Orthonormality (|R'R - I| and |det R - 1| within 1e-9) is validated on
    construction; the stored arrays are read-only.
    """

    rotation: np.ndarray
    translation: np.ndarray

    def __post_init__(self):
        r = np.array(self.rotation, dtype=float).reshape(3, 3)
        t = np.array(self.translation, dtype=float).reshape(3)
        err = float(np.abs(r.T @ r - np.eye(3)).max())
        if err > _ORTHO_TOL:
            raise PoseError(f"rotation not orthonormal (max |R'R - I| = {err:.3e})")
        det = float(np.linalg.det(r))
        if abs(det - 1.0) > _ORTHO_TOL:
            raise PoseError(f"rotation determinant {det:.12f} != +1")
        r.flags.writeable = False
        t.flags.writeable = False
        object.__setattr__(self, "rotation", r)
        object.__setattr__(self, "translation", t)

    @classmethod
    def identity(cls) -> "Pose":
        return cls(np.eye(3), np.zeros(3))

    @classmethod
    def from_matrix(cls, matrix) -> "Pose":
        m = np.asarray(matrix, dtype=float).reshape(4, 4)
        return cls(m[:3, :3], m[:3, 3])

    def as_matrix(self) -> np.ndarray:
        """4x4 homogeneous matrix."""
        m = np.eye(4)
        m[:3, :3] = self.rotation
        m[:3, 3] = self.translation
        return m

    def compose(self, other: "Pose") -> "Pose":
        """Rigid composition: the result maps p to self(other(p))."""
        return Pose(
            self.rotation @ other.rotation,
            self.rotation @ other.translation + self.translation,
        )

    def inverse(self) -> "Pose":
        rt = self.rotation.T
        return Pose(rt, -(rt @ self.translation))

    def apply(self, point) -> np.ndarray:
        return self.rotation @ np.asarray(point, dtype=float).reshape(3) + self.translation

    @property
    def boresight(self) -> np.ndarray:
        """Local +z axis expressed in the parent frame."""
        return self.rotation[:, 2]

    def allclose(self, other: "Pose", atol: float = 1e-12) -> bool:
        return np.allclose(self.rotation, other.rotation, atol=atol) and np.allclose(
            self.translation, other.translation, atol=atol
        )


def rot_x(angle_rad: float) -> np.ndarray:
    c, s = math.cos(angle_rad), math.sin(angle_rad)
    return np.array([[1.0, 0.0, 0.0], [0.0, c, -s], [0.0, s, c]])


def rot_y(angle_rad: float) -> np.ndarray:
    c, s = math.cos(angle_rad), math.sin(angle_rad)
    return np.array([[c, 0.0, s], [0.0, 1.0, 0.0], [-s, 0.0, c]])


def rot_z(angle_rad: float) -> np.ndarray:
    c, s = math.cos(angle_rad), math.sin(angle_rad)
    return np.array([[c, -s, 0.0], [s, c, 0.0], [0.0, 0.0, 1.0]])


def axis_angle_rotation(axis, angle_rad: float) -> np.ndarray:
    """Rodrigues rotation about ``axis`` (need not be normalized)."""
    a = np.asarray(axis, dtype=float).reshape(3)
    n = float(np.linalg.norm(a))
    if n == 0.0:
        if angle_rad == 0.0:
            return np.eye(3)
        raise ValueError("rotation axis must be nonzero for a nonzero angle")
    a = a / n
    k = np.array([[0.0, -a[2], a[1]], [a[2], 0.0, -a[0]], [-a[1], a[0], 0.0]])
    return np.eye(3) + math.sin(angle_rad) * k + (1.0 - math.cos(angle_rad)) * (k @ k)


@dataclass(frozen=True)
class GridSpec:
    """Hemispherical lattice: theta rings and the phi step within each ring.

    Steps must evenly divide their ranges: ``theta_step_deg`` divides
    ``theta_max_deg - theta_min_deg`` and ``phi_step_deg`` divides 360.
    A degenerate spec with ``theta_min_deg == theta_max_deg`` is a single
    ring (the lone pole sample when that angle is 0).
    """

    theta_min_deg: float
    theta_max_deg: float
    phi_step_deg: float
    theta_step_deg: float
    radius_m: float

    def __post_init__(self):
        tmin, tmax = float(self.theta_min_deg), float(self.theta_max_deg)
        pstep, tstep = float(self.phi_step_deg), float(self.theta_step_deg)
        r = float(self.radius_m)
        if not (0.0 <= tmin <= tmax <= 90.0):
            raise InvalidGrid(f"need 0 <= theta_min <= theta_max <= 90, got [{tmin}, {tmax}]")
        if pstep <= 0.0 or tstep <= 0.0:
            raise InvalidGrid("angular steps must be > 0")
        if not _divides(tstep, tmax - tmin):
            raise InvalidGrid(f"theta_step {tstep} does not divide range {tmax - tmin}")
        if not _divides(pstep, 360.0):
            raise InvalidGrid(f"phi_step {pstep} does not divide 360")
        if not r > 0.0:
            raise InvalidGrid(f"radius_m must be > 0, got {r}")
        object.__setattr__(self, "theta_min_deg", tmin)
        object.__setattr__(self, "theta_max_deg", tmax)
        object.__setattr__(self, "phi_step_deg", pstep)
        object.__setattr__(self, "theta_step_deg", tstep)
        object.__setattr__(self, "radius_m", r)

    def theta_rings(self) -> list[float]:
        n = int(round((self.theta_max_deg - self.theta_min_deg) / self.theta_step_deg))
        return [self.theta_min_deg + i * self.theta_step_deg for i in range(n + 1)]

    def phi_values(self) -> list[float]:
        n = int(round(360.0 / self.phi_step_deg))
        return [j * self.phi_step_deg for j in range(n)]


def _divides(step: float, span: float) -> bool:
    ratio = span / step
    return abs(ratio - round(ratio)) <= _DIV_TOL


def grid_size(spec: GridSpec) -> int:
    """Closed-form sample count of :func:`generate_grid` for ``spec``."""
    n_rings = int(round((spec.theta_max_deg - spec.theta_min_deg) / spec.theta_step_deg)) + 1
    n_phi = int(round(360.0 / spec.phi_step_deg))
    if spec.theta_min_deg == 0.0:
        return 1 + (n_rings - 1) * n_phi
    return n_rings * n_phi


def generate_grid(spec: GridSpec) -> list[SphericalSample]:
    """All lattice points of ``spec`` in meander order.

    Rings are visited with theta ascending. The theta = 0 ring degenerates to
    the single pole sample. Within the full rings, phi runs ascending on the
    first ring and alternates direction on each following ring so consecutive
    samples stay adjacent (minimal joint travel between rings).
    """
    samples: list[SphericalSample] = []
    ascending = True
    for theta in spec.theta_rings():
        if theta == 0.0:
            samples.append(SphericalSample(0.0, 0.0, spec.radius_m))
            continue
        phis = spec.phi_values()
        if not ascending:
            phis = phis[::-1]
        samples.extend(SphericalSample(phi, theta, spec.radius_m) for phi in phis)
        ascending = not ascending
    return samples


def spherical_to_pose(sample: SphericalSample) -> Pose:
    """Probe pose in the DUT frame for one grid sample.

    Translation is the sample's cartesian position. The rotation columns are
    the probe axes in the DUT frame: local +z = -r_hat (boresight at the
    origin), local +x = theta_hat (in the meridian plane; equals global +x at
    the pole), local +y completes the right-handed frame (= -phi_hat).
    """
    phi = math.radians(sample.phi_deg)
    theta = math.radians(sample.theta_deg)
    st, ct = math.sin(theta), math.cos(theta)
    sp, cp = math.sin(phi), math.cos(phi)
    r_hat = np.array([st * cp, st * sp, ct])
    x_axis = np.array([ct * cp, ct * sp, -st])
    y_axis = np.array([sp, -cp, 0.0])
    rotation = np.column_stack([x_axis, y_axis, -r_hat])
    return Pose(rotation, sample.r_m * r_hat)


def compose_chain(t_base: Pose, t_sample: Pose, t_offset: Pose) -> Pose:
    """Full pose chain: base frame, then sample pose, then mounting offset."""
    return t_base.compose(t_sample).compose(t_offset)


def pose_boresight_error(pose: Pose, dut_origin=(0.0, 0.0, 0.0)) -> float:
    """Angle in radians between the probe boresight and the DUT direction.

    0 means the probe aims exactly at ``dut_origin``. Raises
    :class:`DegenerateGeometry` when the pose sits on the origin.
    """
    target = np.asarray(dut_origin, dtype=float).reshape(3) - pose.translation
    dist = float(np.linalg.norm(target))
    if dist < 1e-15:
        raise DegenerateGeometry("probe position coincides with the DUT origin")
    cosang = float(np.dot(pose.boresight, target / dist))
    return math.acos(max(-1.0, min(1.0, cosang)))

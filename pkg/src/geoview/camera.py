"""Pinhole cameras, surround-view rigs, and rig perturbation operators.

Coordinate conventions (asserted in tests, tagged in serialized files):
  * ego frame   "flu": x forward, y left, z up; origin at the vehicle,
    ground plane at z = 0.
  * camera frame "rdf": x right, y down, z along the optical axis.
  * depth is the camera-frame z coordinate of a point, so unprojection is
    p_ego = R @ (K^-1 [u, v, 1]^T * depth) + d.

Positive pitch perturbation tilts the optical axis upward; the depth
perturbation translates each camera along its own optical axis by default
(set depth_mode="ego_forward" to shift along ego x instead).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import (
    BehindCameraError,
    ConfigError,
    ContractError,
    InvalidDepthError,
    PixelBoundsError,
)

# camera axes (right, down, forward) expressed in the ego frame for a
# yaw-0 forward-looking camera
_R_FRONT = np.array([
    [0.0, 0.0, 1.0],
    [-1.0, 0.0, 0.0],
    [0.0, -1.0, 0.0],
])

CAMERA_NAMES_6 = ("front", "front_left", "front_right", "back", "back_left", "back_right")
CAMERA_YAWS_6 = (0.0, 60.0, -60.0, 180.0, 120.0, -120.0)
CAMERA_NAMES_4 = ("front", "left", "back", "right")
CAMERA_YAWS_4 = (0.0, 90.0, 180.0, 270.0)

FRONT_REAR_CAMERAS = ("front", "back")
SIDE_CAMERAS = ("front_left", "front_right", "back_left", "back_right")


def rot_x(angle_rad: float) -> np.ndarray:
    c, s = math.cos(angle_rad), math.sin(angle_rad)
    return np.array([[1.0, 0.0, 0.0], [0.0, c, -s], [0.0, s, c]])


def rot_y(angle_rad: float) -> np.ndarray:
    c, s = math.cos(angle_rad), math.sin(angle_rad)
    return np.array([[c, 0.0, s], [0.0, 1.0, 0.0], [-s, 0.0, c]])


def rot_z(angle_rad: float) -> np.ndarray:
    c, s = math.cos(angle_rad), math.sin(angle_rad)
    return np.array([[c, -s, 0.0], [s, c, 0.0], [0.0, 0.0, 1.0]])


def _frozen(arr: np.ndarray) -> np.ndarray:
    out = np.array(arr, dtype=np.float64)
    out.setflags(write=False)
    return out


@dataclass(frozen=True, eq=False)
class Intrinsics:
    fx: float
    fy: float
    cx: float
    cy: float
    width: int
    height: int

    def __post_init__(self):
        if self.fx <= 0 or self.fy <= 0:
            raise ConfigError(f"focal lengths must be positive, got fx={self.fx}, fy={self.fy}")
        if not (0 <= self.cx < self.width and 0 <= self.cy < self.height):
            raise ConfigError(
                f"principal point ({self.cx}, {self.cy}) outside {self.width}x{self.height} image")

    def to_dict(self) -> dict:
        return {"fx": self.fx, "fy": self.fy, "cx": self.cx, "cy": self.cy,
                "width": self.width, "height": self.height}

    @classmethod
    def from_dict(cls, d: dict) -> "Intrinsics":
        return cls(fx=d["fx"], fy=d["fy"], cx=d["cx"], cy=d["cy"],
                   width=d["width"], height=d["height"])


@dataclass(frozen=True, eq=False)
class Extrinsics:
    """Camera-to-ego rotation and camera origin in the ego frame (meters)."""

    rotation: np.ndarray
    translation: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "rotation", _frozen(self.rotation))
        object.__setattr__(self, "translation", _frozen(self.translation))
        if self.rotation.shape != (3, 3) or self.translation.shape != (3,):
            raise ContractError(
                f"extrinsics need 3x3 rotation and 3-vector, got {self.rotation.shape} "
                f"and {self.translation.shape}")
        err = np.abs(self.rotation.T @ self.rotation - np.eye(3)).max()
        if err > 1e-9:
            raise ContractError(f"rotation not orthonormal (max deviation {err:.3e})")
        det = float(np.linalg.det(self.rotation))
        if abs(det - 1.0) > 1e-9:
            raise ContractError(f"rotation determinant {det} != +1")

    @property
    def optical_axis(self) -> np.ndarray:
        """Camera z axis in ego coordinates."""
        return self.rotation[:, 2]

    def to_dict(self) -> dict:
        return {"rotation": self.rotation.tolist(), "translation": self.translation.tolist()}

    @classmethod
    def from_dict(cls, d: dict) -> "Extrinsics":
        return cls(rotation=np.asarray(d["rotation"]), translation=np.asarray(d["translation"]))


@dataclass(frozen=True, eq=False)
class Camera:
    name: str
    intrinsics: Intrinsics
    extrinsics: Extrinsics


@dataclass(frozen=True, eq=False)
class CameraRig:
    cameras: tuple[Camera, ...]

    def __post_init__(self):
        object.__setattr__(self, "cameras", tuple(self.cameras))
        names = [c.name for c in self.cameras]
        if len(set(names)) != len(names):
            raise ConfigError(f"duplicate camera names: {names}")

    @property
    def names(self) -> tuple[str, ...]:
        return tuple(c.name for c in self.cameras)

    def camera(self, name: str) -> Camera:
        for c in self.cameras:
            if c.name == name:
                return c
        raise ConfigError(f"no camera named {name!r}; rig has {list(self.names)}")

    def replace_extrinsics(self, donor: "CameraRig", names) -> "CameraRig":
        """New rig with the named cameras' extrinsics taken from `donor`."""
        names = tuple(names)
        for n in names:
            self.camera(n)
            donor.camera(n)
        cams = tuple(
            Camera(c.name, c.intrinsics, donor.camera(c.name).extrinsics)
            if c.name in names else c
            for c in self.cameras
        )
        return CameraRig(cams)

    def to_dict(self) -> dict:
        return {
            "version": 1,
            "ego_xyz": "flu",
            "cam_xyz": "rdf",
            "cameras": [
                {"name": c.name, "intrinsics": c.intrinsics.to_dict(),
                 "extrinsics": c.extrinsics.to_dict()}
                for c in self.cameras
            ],
        }

    @classmethod
    def from_dict(cls, d: dict) -> "CameraRig":
        if d.get("ego_xyz") != "flu" or d.get("cam_xyz") != "rdf":
            raise ConfigError(
                f"unsupported frame conventions: ego={d.get('ego_xyz')!r}, cam={d.get('cam_xyz')!r}")
        return cls(tuple(
            Camera(e["name"], Intrinsics.from_dict(e["intrinsics"]),
                   Extrinsics.from_dict(e["extrinsics"]))
            for e in d["cameras"]
        ))


def rigs_equal(a: CameraRig, b: CameraRig, *, exact: bool = True, atol: float = 0.0) -> bool:
    if a.names != b.names:
        return False
    for ca, cb in zip(a.cameras, b.cameras):
        if ca.intrinsics.to_dict() != cb.intrinsics.to_dict():
            return False
        if exact:
            if not (np.array_equal(ca.extrinsics.rotation, cb.extrinsics.rotation)
                    and np.array_equal(ca.extrinsics.translation, cb.extrinsics.translation)):
                return False
        else:
            if (np.abs(ca.extrinsics.rotation - cb.extrinsics.rotation).max() > atol
                    or np.abs(ca.extrinsics.translation - cb.extrinsics.translation).max() > atol):
                return False
    return True


# ---------------------------------------------------------------------------
# projection
# ---------------------------------------------------------------------------


def unproject(intr: Intrinsics, extr: Extrinsics, u: float, v: float, depth: float) -> np.ndarray:
    """Pixel (u, v) at camera-frame z-depth `depth` -> ego-frame 3-vector."""
    if depth <= 0:
        raise InvalidDepthError(f"depth must be positive, got {depth}")
    if not (0 <= u < intr.width and 0 <= v < intr.height):
        raise PixelBoundsError(
            f"pixel ({u}, {v}) outside {intr.width}x{intr.height} image")
    ray = np.array([(u - intr.cx) / intr.fx, (v - intr.cy) / intr.fy, 1.0])
    return extr.rotation @ (ray * depth) + extr.translation


def project(intr: Intrinsics, extr: Extrinsics, p) -> tuple[float, float, float]:
    """Ego-frame point -> (u, v, depth); raises if the point is behind the camera."""
    p = np.asarray(p, dtype=np.float64)
    cam = extr.rotation.T @ (p - extr.translation)
    if cam[2] <= 0:
        raise BehindCameraError(f"point {p.tolist()} has camera-frame depth {cam[2]}")
    u = intr.fx * cam[0] / cam[2] + intr.cx
    v = intr.fy * cam[1] / cam[2] + intr.cy
    return float(u), float(v), float(cam[2])


def unproject_grid(intr: Intrinsics, extr: Extrinsics, us: np.ndarray, vs: np.ndarray,
                   depths: np.ndarray) -> np.ndarray:
    """Vectorized unproject: arrays of pixel coords and depths -> (..., 3) points.

    No per-pixel validity checks; callers own depth/bounds handling.
    """
    xn = (np.asarray(us, dtype=np.float64) - intr.cx) / intr.fx
    yn = (np.asarray(vs, dtype=np.float64) - intr.cy) / intr.fy
    rays = np.stack([xn, yn, np.ones_like(xn)], axis=-1)
    pts = rays * np.asarray(depths, dtype=np.float64)[..., None]
    return pts @ extr.rotation.T + extr.translation


# ---------------------------------------------------------------------------
# perturbations
# ---------------------------------------------------------------------------

PERTURBATION_KINDS = ("pitch", "height", "depth", "identity")


@dataclass(frozen=True)
class Perturbation:
    """Rig modification: pitch in degrees, height/depth in meters."""

    kind: str
    magnitude: float = 0.0

    def __post_init__(self):
        if self.kind not in PERTURBATION_KINDS:
            raise ConfigError(f"unknown perturbation kind {self.kind!r}; "
                              f"expected one of {PERTURBATION_KINDS}")


def apply_perturbation(rig: CameraRig, pert: Perturbation, *,
                       depth_mode: str = "optical") -> CameraRig:
    """Return a new rig with the perturbation applied to every camera.

    pitch  -- compose each rotation with a rotation about the camera's own
              lateral (x) axis; positive tips the optical axis upward.
    height -- add `magnitude` meters to every translation z.
    depth  -- translate each camera `magnitude` meters along its optical
              axis ("optical") or along ego x ("ego_forward").
    """
    if pert.kind == "identity":
        return rig
    if depth_mode not in ("optical", "ego_forward"):
        raise ConfigError(f"unknown depth_mode {depth_mode!r}")
    cams = []
    for c in rig.cameras:
        r, d = c.extrinsics.rotation, c.extrinsics.translation
        if pert.kind == "pitch":
            new = Extrinsics(r @ rot_x(math.radians(pert.magnitude)), d)
        elif pert.kind == "height":
            new = Extrinsics(r, d + np.array([0.0, 0.0, pert.magnitude]))
        elif pert.kind == "depth":
            axis = c.extrinsics.optical_axis if depth_mode == "optical" else np.array([1.0, 0.0, 0.0])
            new = Extrinsics(r, d + pert.magnitude * axis)
        else:  # unreachable; Perturbation validates kind
            raise ConfigError(f"unknown perturbation kind {pert.kind!r}")
        cams.append(Camera(c.name, c.intrinsics, new))
    return CameraRig(tuple(cams))


# ---------------------------------------------------------------------------
# canonical rig
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class RigConfig:
    image_width: int = 56
    image_height: int = 32
    camera_height: float = 1.5

    def to_dict(self) -> dict:
        return {"image_width": self.image_width, "image_height": self.image_height,
                "camera_height": self.camera_height}

    @classmethod
    def from_dict(cls, d: dict) -> "RigConfig":
        return cls(**d)


def canonical_rig(n_cameras: int = 6, config: RigConfig | None = None) -> CameraRig:
    """Deterministic surround rig: evenly yaw-spaced level cameras at a fixed
    height, fx = fy = width/2, principal point at the image center."""
    cfg = config or RigConfig()
    if n_cameras == 6:
        names, yaws = CAMERA_NAMES_6, CAMERA_YAWS_6
    elif n_cameras == 4:
        names, yaws = CAMERA_NAMES_4, CAMERA_YAWS_4
    else:
        raise ConfigError(f"canonical rig supports 4 or 6 cameras, got {n_cameras}")
    intr = Intrinsics(fx=cfg.image_width / 2.0, fy=cfg.image_width / 2.0,
                      cx=cfg.image_width / 2.0, cy=cfg.image_height / 2.0,
                      width=cfg.image_width, height=cfg.image_height)
    cams = tuple(
        Camera(name, intr,
               Extrinsics(rot_z(math.radians(yaw)) @ _R_FRONT,
                          np.array([0.0, 0.0, cfg.camera_height])))
        for name, yaw in zip(names, yaws)
    )
    return CameraRig(cams)

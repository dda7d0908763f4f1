"""Procedural driving scenes: a ground plane, axis-aligned box obstacles,
and a closed-form ego motion program that supplies ground-truth waypoints.

All randomness is drawn from a generator seeded by the scene seed, in a
fixed order, so scenes are a pure function of (seed, config).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ..errors import ConfigError

EGO_PROGRAMS = ("straight", "arc_left", "arc_right", "lane_change")


@dataclass(frozen=True)
class Box:
    """Axis-aligned box: center and half-extents in world meters."""

    center: tuple[float, float, float]
    half_extents: tuple[float, float, float]

    def to_dict(self) -> dict:
        return {"center": list(self.center), "half_extents": list(self.half_extents)}

    @classmethod
    def from_dict(cls, d: dict) -> "Box":
        return cls(tuple(d["center"]), tuple(d["half_extents"]))


@dataclass(frozen=True)
class EgoProgram:
    kind: str
    speed: float           # m/s
    curvature: float = 0.0  # 1/m, used by arc programs
    lane_shift: float = 0.0  # m, used by lane_change
    duration: float = 0.0    # s, used by lane_change for the shift profile

    def to_dict(self) -> dict:
        return {"kind": self.kind, "speed": self.speed, "curvature": self.curvature,
                "lane_shift": self.lane_shift, "duration": self.duration}

    @classmethod
    def from_dict(cls, d: dict) -> "EgoProgram":
        return cls(**d)


@dataclass(frozen=True)
class EgoPose:
    """Planar vehicle pose in the world frame."""

    x: float
    y: float
    heading: float  # radians, 0 along world +x

    def to_world(self, pts_ego: np.ndarray) -> np.ndarray:
        """Ego-frame planar points (..., 2) -> world frame."""
        c, s = math.cos(self.heading), math.sin(self.heading)
        pts = np.asarray(pts_ego, dtype=np.float64)
        x = pts[..., 0] * c - pts[..., 1] * s + self.x
        y = pts[..., 0] * s + pts[..., 1] * c + self.y
        return np.stack([x, y], axis=-1)

    def to_ego(self, pts_world: np.ndarray) -> np.ndarray:
        """World-frame planar points (..., 2) -> this pose's ego frame."""
        c, s = math.cos(self.heading), math.sin(self.heading)
        pts = np.asarray(pts_world, dtype=np.float64)
        dx = pts[..., 0] - self.x
        dy = pts[..., 1] - self.y
        return np.stack([dx * c + dy * s, -dx * s + dy * c], axis=-1)

    def rotation3(self) -> np.ndarray:
        c, s = math.cos(self.heading), math.sin(self.heading)
        return np.array([[c, -s, 0.0], [s, c, 0.0], [0.0, 0.0, 1.0]])


@dataclass(frozen=True)
class Scene:
    seed: int
    program: EgoProgram
    obstacles: tuple[Box, ...]
    n_steps: int
    dt: float

    def __post_init__(self):
        if self.n_steps < 1:
            raise ConfigError(f"scene needs n_steps >= 1, got {self.n_steps}")
        if self.dt <= 0:
            raise ConfigError(f"scene needs dt > 0, got {self.dt}")

    def to_dict(self) -> dict:
        return {"seed": int(self.seed), "program": self.program.to_dict(),
                "obstacles": [b.to_dict() for b in self.obstacles],
                "n_steps": self.n_steps, "dt": self.dt}

    @classmethod
    def from_dict(cls, d: dict) -> "Scene":
        return cls(seed=d["seed"], program=EgoProgram.from_dict(d["program"]),
                   obstacles=tuple(Box.from_dict(b) for b in d["obstacles"]),
                   n_steps=d["n_steps"], dt=d["dt"])

    def boxes_array(self) -> np.ndarray:
        """(M, 6) array of cx, cy, cz, ex, ey, ez for the raycast kernels."""
        if not self.obstacles:
            return np.zeros((0, 6))
        return np.array([[*b.center, *b.half_extents] for b in self.obstacles])


def ego_pose(program: EgoProgram, t_seconds: float) -> EgoPose:
    """Closed-form pose along the program at time t."""
    v, t = program.speed, t_seconds
    if program.kind == "straight":
        return EgoPose(v * t, 0.0, 0.0)
    if program.kind in ("arc_left", "arc_right"):
        k = program.curvature
        if k <= 0:
            raise ConfigError(f"arc program needs curvature > 0, got {k}")
        sign = 1.0 if program.kind == "arc_left" else -1.0
        theta = k * v * t
        return EgoPose(math.sin(theta) / k, sign * (1.0 - math.cos(theta)) / k, sign * theta)
    if program.kind == "lane_change":
        dur = program.duration if program.duration > 0 else 1.0
        tau = min(max(t / dur, 0.0), 1.0)
        blend = 3.0 * tau**2 - 2.0 * tau**3
        y = program.lane_shift * blend
        dy_dt = program.lane_shift * (6.0 * tau - 6.0 * tau**2) / dur if 0.0 < tau < 1.0 else 0.0
        return EgoPose(v * t, y, math.atan2(dy_dt, v))
    raise ConfigError(f"unknown ego program {program.kind!r}")


def scene_poses(scene: Scene) -> list[EgoPose]:
    return [ego_pose(scene.program, i * scene.dt) for i in range(scene.n_steps)]


def future_waypoints(scene: Scene, t_index: int, horizon: int) -> np.ndarray:
    """Ground-truth waypoints (horizon, 2) for steps t+1..t+horizon,
    expressed in the ego frame of the pose at step t."""
    if t_index + horizon > scene.n_steps - 1:
        raise ConfigError(
            f"waypoint horizon {horizon} from step {t_index} exceeds scene "
            f"length {scene.n_steps}")
    ref = ego_pose(scene.program, t_index * scene.dt)
    world = np.array([
        [ego_pose(scene.program, (t_index + j) * scene.dt).x,
         ego_pose(scene.program, (t_index + j) * scene.dt).y]
        for j in range(1, horizon + 1)
    ])
    return ref.to_ego(world)


# ---------------------------------------------------------------------------
# generation
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class WorldConfig:
    n_steps: int = 8
    dt: float = 0.5
    programs: tuple[str, ...] = EGO_PROGRAMS
    speed_range: tuple[float, float] = (2.0, 6.0)
    curvature_range: tuple[float, float] = (0.06, 0.14)
    lane_shift: float = 3.0
    obstacle_count: tuple[int, int] = (3, 7)
    obstacle_x_range: tuple[float, float] = (3.0, 26.0)
    obstacle_y_range: tuple[float, float] = (-12.0, 12.0)
    obstacle_half_xy: tuple[float, float] = (0.4, 1.2)
    obstacle_half_z: tuple[float, float] = (0.5, 1.5)
    path_clearance: float = 1.6

    def to_dict(self) -> dict:
        return {
            "n_steps": self.n_steps, "dt": self.dt, "programs": list(self.programs),
            "speed_range": list(self.speed_range),
            "curvature_range": list(self.curvature_range),
            "lane_shift": self.lane_shift,
            "obstacle_count": list(self.obstacle_count),
            "obstacle_x_range": list(self.obstacle_x_range),
            "obstacle_y_range": list(self.obstacle_y_range),
            "obstacle_half_xy": list(self.obstacle_half_xy),
            "obstacle_half_z": list(self.obstacle_half_z),
            "path_clearance": self.path_clearance,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "WorldConfig":
        d = dict(d)
        for key in ("programs", "speed_range", "curvature_range", "obstacle_count",
                    "obstacle_x_range", "obstacle_y_range", "obstacle_half_xy",
                    "obstacle_half_z"):
            if key in d:
                d[key] = tuple(d[key])
        return cls(**d)


def _path_points(program: EgoProgram, n_steps: int, dt: float) -> np.ndarray:
    """Densely sampled planar path for obstacle clearance checks."""
    ts = np.linspace(0.0, (n_steps - 1) * dt, 4 * n_steps)
    return np.array([[ego_pose(program, t).x, ego_pose(program, t).y] for t in ts])


def generate_scene(seed: int, cfg: WorldConfig | None = None) -> Scene:
    """Deterministic scene from a seed: ego program and obstacle layout are
    drawn in a fixed order; obstacles keep a lateral clearance from the
    ground-truth path and never touch the ego start pose."""
    cfg = cfg or WorldConfig()
    rng = np.random.default_rng(seed)
    kind = cfg.programs[int(rng.integers(0, len(cfg.programs)))]
    speed = float(rng.uniform(*cfg.speed_range))
    curvature = float(rng.uniform(*cfg.curvature_range))
    shift = float(cfg.lane_shift * (1.0 if rng.integers(0, 2) else -1.0))
    program = EgoProgram(kind=kind, speed=speed, curvature=curvature,
                         lane_shift=shift, duration=(cfg.n_steps - 1) * cfg.dt)
    path = _path_points(program, cfg.n_steps, cfg.dt)

    count = int(rng.integers(cfg.obstacle_count[0], cfg.obstacle_count[1] + 1))
    boxes: list[Box] = []
    for _ in range(count):
        for _attempt in range(40):
            cx = float(rng.uniform(*cfg.obstacle_x_range))
            cy = float(rng.uniform(*cfg.obstacle_y_range))
            ex = float(rng.uniform(*cfg.obstacle_half_xy))
            ey = float(rng.uniform(*cfg.obstacle_half_xy))
            ez = float(rng.uniform(*cfg.obstacle_half_z))
            # clearance: footprint inflated by path_clearance must miss the path
            dx = np.abs(path[:, 0] - cx) - ex
            dy = np.abs(path[:, 1] - cy) - ey
            if np.all(np.maximum(dx, dy) > cfg.path_clearance):
                boxes.append(Box((cx, cy, ez), (ex, ey, ez)))
                break
    return Scene(seed=int(seed), program=program, obstacles=tuple(boxes),
                 n_steps=cfg.n_steps, dt=cfg.dt)


def box_surface_distance(p: np.ndarray, box: Box) -> float:
    """Unsigned distance from a point to the box surface."""
    d = np.abs(np.asarray(p) - np.asarray(box.center)) - np.asarray(box.half_extents)
    outside = np.linalg.norm(np.maximum(d, 0.0))
    inside = min(float(d.max()), 0.0)
    return abs(outside + inside)


def scene_surface_distance(scene: Scene, p: np.ndarray) -> float:
    """Distance from a point to the nearest scene surface (ground or box)."""
    best = abs(float(p[2]))
    for box in scene.obstacles:
        best = min(best, box_surface_distance(p, box))
    return best

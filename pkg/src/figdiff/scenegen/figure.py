"""Articulated 2D figure geometry and hard-edged rasterization.

The figure lives in a unit coordinate frame (height 1.0, y grows downward,
origin at the figure center). Shapes are capsules/circles/ellipses whose
membership test is an exact inequality on pixel centers, so renders are
bit-deterministic and segment maps are exact (no anti-aliasing).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

# Unit-frame proportions. The nominal figure occupies y in [-0.52, 0.52].
HEAD_R = 0.100
HEAD_C = (0.0, -0.390)
HAIR_R = 0.135
HAIR_C = (0.0, -0.400)
HAT_Y = -0.475
HAT_HALFW = 0.105
HAT_R = 0.038
NECK = (0.0, -0.280)
PELVIS = (0.0, 0.020)
TORSO_R = 0.100
SHOULDER_X = 0.105
SHOULDER_Y = -0.245
UPPER_ARM_LEN = 0.160
FOREARM_LEN = 0.140
ARM_R = 0.034
HIP_X = 0.055
HIP_Y = 0.035
THIGH_LEN = 0.210
SHIN_LEN = 0.210
LEG_R = 0.042
SHOE_RX = 0.056
SHOE_RY = 0.028
OUTER_R = 0.046
OUTER_X = 0.098
BAG_R = 0.042
BAG_X = 0.165
BAG_Y = 0.025

ARTICULATION_LIMITS = {
    "shoulder": (0.0, 2.7),
    "elbow": (0.0, 1.4),
    "hip": (0.02, 0.50),
    "knee": (0.0, 0.45),
    "center_x": (20.0, 44.0),
    "center_y": (24.0, 40.0),
}


@dataclass(frozen=True)
class FigurePose:
    """Joint angles in radians plus torso center in pixels.

    Shoulder/hip angles are measured outward from straight-down; elbow and
    knee are bend magnitudes. `center_x`/`center_y` place the figure's
    unit-frame origin on the canvas.
    """

    shoulder_l: float = 0.15
    shoulder_r: float = 0.15
    elbow_l: float = 0.0
    elbow_r: float = 0.0
    hip_l: float = 0.12
    hip_r: float = 0.12
    knee_l: float = 0.0
    knee_r: float = 0.0
    center_x: float = 32.0
    center_y: float = 32.0

    def validate(self) -> None:
        checks = [
            ("shoulder", self.shoulder_l), ("shoulder", self.shoulder_r),
            ("elbow", self.elbow_l), ("elbow", self.elbow_r),
            ("hip", self.hip_l), ("hip", self.hip_r),
            ("knee", self.knee_l), ("knee", self.knee_r),
            ("center_x", self.center_x), ("center_y", self.center_y),
        ]
        for name, value in checks:
            lo, hi = ARTICULATION_LIMITS[name]
            if not (lo <= value <= hi):
                raise ValueError(
                    f"figure_pose.{name}={value:.4f} outside articulation limits [{lo}, {hi}]"
                )


def _rot(direction: tuple[float, float], angle: float) -> tuple[float, float]:
    c, s = math.cos(angle), math.sin(angle)
    dx, dy = direction
    return (c * dx - s * dy, s * dx + c * dy)


def skeleton_points(pose: FigurePose) -> dict[str, tuple[float, float]]:
    """Joint positions in the unit frame for the given pose."""
    pts = {
        "head": HEAD_C,
        "neck": NECK,
        "pelvis": PELVIS,
        "shoulder_l": (-SHOULDER_X, SHOULDER_Y),
        "shoulder_r": (SHOULDER_X, SHOULDER_Y),
        "hip_l": (-HIP_X, HIP_Y),
        "hip_r": (HIP_X, HIP_Y),
    }
    for side, s in (("l", -1.0), ("r", 1.0)):
        sh = pts[f"shoulder_{side}"]
        th = getattr(pose, f"shoulder_{side}")
        d1 = (s * math.sin(th), math.cos(th))
        elbow = (sh[0] + UPPER_ARM_LEN * d1[0], sh[1] + UPPER_ARM_LEN * d1[1])
        # Elbow bends the forearm toward the body midline.
        d2 = _rot(d1, -s * getattr(pose, f"elbow_{side}"))
        wrist = (elbow[0] + FOREARM_LEN * d2[0], elbow[1] + FOREARM_LEN * d2[1])
        pts[f"elbow_{side}"] = elbow
        pts[f"wrist_{side}"] = wrist

        hip = pts[f"hip_{side}"]
        ph = getattr(pose, f"hip_{side}")
        l1 = (s * math.sin(ph), math.cos(ph))
        knee = (hip[0] + THIGH_LEN * l1[0], hip[1] + THIGH_LEN * l1[1])
        ang2 = ph - getattr(pose, f"knee_{side}")
        l2 = (s * math.sin(ang2), math.cos(ang2))
        foot = (knee[0] + SHIN_LEN * l2[0], knee[1] + SHIN_LEN * l2[1])
        pts[f"knee_{side}"] = knee
        pts[f"foot_{side}"] = foot
    return pts


class UnitTransform:
    """Maps unit-frame coordinates onto pixel-center grids."""

    def __init__(self, size: int, scale: float, center_x: float, center_y: float):
        self.s = scale * size
        self.cx = center_x
        self.cy = center_y
        ys, xs = np.mgrid[0:size, 0:size]
        self.px = xs.astype(np.float64) + 0.5
        self.py = ys.astype(np.float64) + 0.5

    def to_px(self, p: tuple[float, float]) -> tuple[float, float]:
        return (self.cx + p[0] * self.s, self.cy + p[1] * self.s)


def capsule_mask(tr: UnitTransform, a, b, radius: float) -> np.ndarray:
    ax, ay = tr.to_px(a)
    bx, by = tr.to_px(b)
    r = radius * tr.s
    dx, dy = bx - ax, by - ay
    L2 = dx * dx + dy * dy
    if L2 == 0.0:
        d2 = (tr.px - ax) ** 2 + (tr.py - ay) ** 2
        return d2 <= r * r
    t = np.clip(((tr.px - ax) * dx + (tr.py - ay) * dy) / L2, 0.0, 1.0)
    qx = ax + t * dx
    qy = ay + t * dy
    d2 = (tr.px - qx) ** 2 + (tr.py - qy) ** 2
    return d2 <= r * r


def circle_mask(tr: UnitTransform, c, radius: float) -> np.ndarray:
    cx, cy = tr.to_px(c)
    r = radius * tr.s
    return (tr.px - cx) ** 2 + (tr.py - cy) ** 2 <= r * r


def ellipse_mask(tr: UnitTransform, c, rx: float, ry: float) -> np.ndarray:
    cx, cy = tr.to_px(c)
    ex = rx * tr.s
    ey = ry * tr.s
    return ((tr.px - cx) / ex) ** 2 + ((tr.py - cy) / ey) ** 2 <= 1.0


def body_parts(pose: FigurePose, present: dict[str, bool]) -> list[tuple[str, str, tuple]]:
    """Painter-ordered (category, shape_kind, shape_args) list.

    Later entries overwrite earlier ones, which is what makes hair a rim
    around the face and shoes sit on top of legs.
    """
    p = skeleton_points(pose)
    parts: list[tuple[str, str, tuple]] = [
        ("hair", "circle", (HAIR_C, HAIR_R)),
        ("face", "circle", (HEAD_C, HEAD_R)),
    ]
    if present.get("headwear", False):
        parts.append(("headwear", "capsule", ((-HAT_HALFW, HAT_Y), (HAT_HALFW, HAT_Y), HAT_R)))
    parts.append(("top", "capsule", (p["neck"], p["pelvis"], TORSO_R)))
    if present.get("outerwear", False):
        parts.append(("outerwear", "capsule", ((-OUTER_X, SHOULDER_Y - 0.01), (-OUTER_X + 0.015, 0.0), OUTER_R)))
        parts.append(("outerwear", "capsule", ((OUTER_X, SHOULDER_Y - 0.01), (OUTER_X - 0.015, 0.0), OUTER_R)))
    for side in ("l", "r"):
        parts.append(("top", "capsule", (p[f"shoulder_{side}"], p[f"elbow_{side}"], ARM_R)))
        parts.append(("top", "capsule", (p[f"elbow_{side}"], p[f"wrist_{side}"], ARM_R)))
    for side in ("l", "r"):
        parts.append(("bottom", "capsule", (p[f"hip_{side}"], p[f"knee_{side}"], LEG_R)))
        parts.append(("bottom", "capsule", (p[f"knee_{side}"], p[f"foot_{side}"], LEG_R)))
    for side in ("l", "r"):
        foot = p[f"foot_{side}"]
        parts.append(("shoes", "ellipse", ((foot[0], foot[1] + 0.012), SHOE_RX, SHOE_RY)))
    if present.get("accessories", False):
        parts.append(("accessories", "circle", ((-BAG_X, BAG_Y), BAG_R)))
    return parts


def rasterize_part(tr: UnitTransform, kind: str, args: tuple) -> np.ndarray:
    if kind == "capsule":
        return capsule_mask(tr, args[0], args[1], args[2])
    if kind == "circle":
        return circle_mask(tr, args[0], args[1])
    if kind == "ellipse":
        return ellipse_mask(tr, args[0], args[1], args[2])
    raise ValueError(f"unknown shape kind {kind!r}")


# Fixed stroke colors, one per bone, loosely following skeleton-render
# conventions (distinct hues around the color wheel).
POSE_BONE_COLORS: dict[str, tuple[int, int, int]] = {
    "head": (255, 0, 0),
    "spine": (255, 85, 0),
    "shoulder_bar_l": (255, 170, 0),
    "shoulder_bar_r": (170, 255, 0),
    "upper_arm_l": (85, 255, 0),
    "forearm_l": (0, 255, 85),
    "upper_arm_r": (0, 255, 170),
    "forearm_r": (0, 170, 255),
    "hip_bar_l": (0, 85, 255),
    "hip_bar_r": (85, 0, 255),
    "thigh_l": (170, 0, 255),
    "shin_l": (255, 0, 255),
    "thigh_r": (255, 0, 170),
    "shin_r": (255, 0, 85),
}

POSE_STROKE_PX = 1.1  # half-width in pixels, independent of figure scale


def render_pose_map(pose: FigurePose, size: int, scale: float) -> np.ndarray:
    """Colored skeleton strokes on black, float32 in [0, 1]."""
    tr = UnitTransform(size, scale, pose.center_x, pose.center_y)
    p = skeleton_points(pose)
    bones = [
        ("head", p["neck"], p["head"]),
        ("spine", p["neck"], p["pelvis"]),
        ("shoulder_bar_l", p["neck"], p["shoulder_l"]),
        ("shoulder_bar_r", p["neck"], p["shoulder_r"]),
        ("upper_arm_l", p["shoulder_l"], p["elbow_l"]),
        ("forearm_l", p["elbow_l"], p["wrist_l"]),
        ("upper_arm_r", p["shoulder_r"], p["elbow_r"]),
        ("forearm_r", p["elbow_r"], p["wrist_r"]),
        ("hip_bar_l", p["pelvis"], p["hip_l"]),
        ("hip_bar_r", p["pelvis"], p["hip_r"]),
        ("thigh_l", p["hip_l"], p["knee_l"]),
        ("shin_l", p["knee_l"], p["foot_l"]),
        ("thigh_r", p["hip_r"], p["knee_r"]),
        ("shin_r", p["knee_r"], p["foot_r"]),
    ]
    out = np.zeros((size, size, 3), dtype=np.float32)
    r_unit = POSE_STROKE_PX / tr.s  # capsule_mask scales radii by tr.s
    for name, a, b in bones:
        m = capsule_mask(tr, a, b, r_unit)
        color = np.asarray(POSE_BONE_COLORS[name], dtype=np.float32) / 255.0
        out[m] = color
    return out

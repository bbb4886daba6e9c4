"""Closed color vocabulary shared by the scene generator, text labels and
the evaluation classifiers.

Garments, backgrounds and the leak classifier all draw from NAMED_COLORS,
so nearest-color assignment is exact on clean renders. Face and hair use
their own pools (skin tones are deliberately outside the garment palette).
"""

from __future__ import annotations

import numpy as np

# Keep entries well separated in RGB space; background classification and
# the leak metric rely on unambiguous nearest-color matches.
NAMED_COLORS: dict[str, tuple[int, int, int]] = {
    "red": (220, 40, 40),
    "green": (40, 170, 70),
    "blue": (50, 90, 220),
    "yellow": (235, 215, 50),
    "purple": (145, 60, 200),
    "orange": (240, 145, 40),
    "cyan": (60, 200, 220),
    "magenta": (220, 70, 180),
    "pink": (245, 170, 195),
    "brown": (125, 82, 45),
    "white": (240, 240, 240),
    "black": (25, 25, 25),
    "gray": (128, 128, 128),
}

# Chosen per-sample for the face category; never used for garments.
SKIN_TONES: dict[str, tuple[int, int, int]] = {
    "skin_light": (231, 193, 161),
    "skin_tan": (195, 149, 108),
    "skin_brown": (141, 96, 62),
    "skin_dark": (87, 58, 41),
}

HAIR_COLORS: tuple[str, ...] = ("black", "brown", "yellow", "orange", "gray")

# Garment categories avoid white/black/gray, which are reserved-feeling
# backgrounds; keeps fg/bg contrasts crisp at 64px.
GARMENT_COLORS: tuple[str, ...] = (
    "red", "green", "blue", "yellow", "purple", "orange",
    "cyan", "magenta", "pink", "brown",
)

BACKGROUND_COLORS: tuple[str, ...] = tuple(NAMED_COLORS.keys())


def rgb(name: str) -> tuple[int, int, int]:
    try:
        return NAMED_COLORS[name] if name in NAMED_COLORS else SKIN_TONES[name]
    except KeyError:
        raise KeyError(f"unknown color name {name!r}") from None


def as_float(color: tuple[int, int, int]) -> np.ndarray:
    """8-bit RGB triplet -> float32 in [0, 1]."""
    return np.asarray(color, dtype=np.float32) / 255.0


def nearest_named(pixel: np.ndarray, candidates: list[tuple[int, int, int]]) -> int:
    """Index of the candidate color closest to `pixel` (float RGB in [0,1])."""
    cands = np.asarray(candidates, dtype=np.float32) / 255.0
    d = np.sum((cands - pixel[None, :]) ** 2, axis=1)
    return int(np.argmin(d))

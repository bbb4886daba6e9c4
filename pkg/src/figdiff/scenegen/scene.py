"""Scene assembly: specs, backgrounds, samples and style-crop extraction."""

from __future__ import annotations

from dataclasses import dataclass, field, asdict

import numpy as np

from ..colors import NAMED_COLORS, SKIN_TONES, as_float
from . import figure
from .figure import FigurePose, UnitTransform, body_parts, rasterize_part, render_pose_map

IMAGE_SIZE = 64
STYLE_SIZE = 32

# Fixed category order; segment label = index + 1, 0 is background.
CATEGORIES = ("hair", "face", "top", "bottom", "outerwear", "headwear", "shoes", "accessories")
REQUIRED_CATEGORIES = ("hair", "face", "top", "bottom", "shoes")
OPTIONAL_CATEGORIES = ("outerwear", "headwear", "accessories")

BACKGROUND_KINDS = ("plain", "stripes", "gradient")


class SceneSpecError(ValueError):
    """Invalid scene specification; message names the offending field."""


def _check_rgb(name: str, value) -> tuple[int, int, int]:
    try:
        r, g, b = value
    except (TypeError, ValueError):
        raise SceneSpecError(f"{name}: expected an RGB triplet, got {value!r}") from None
    for ch in (r, g, b):
        if not (isinstance(ch, (int, np.integer)) and 0 <= ch <= 255):
            raise SceneSpecError(f"{name}: channel {ch!r} outside [0, 255]")
    return (int(r), int(g), int(b))


@dataclass(frozen=True)
class BackgroundStyle:
    """Background recipe; colors are names from the closed palette so the
    text label can mention them."""

    kind: str
    color1: str
    color2: str | None = None
    period_px: int | None = None

    def validate(self) -> None:
        if self.kind not in BACKGROUND_KINDS:
            raise SceneSpecError(f"background_style.kind: {self.kind!r} not in {BACKGROUND_KINDS}")
        for label, name in (("color1", self.color1), ("color2", self.color2)):
            if name is None:
                continue
            if name not in NAMED_COLORS:
                raise SceneSpecError(f"background_style.{label}: unknown color {name!r}")
        if self.kind in ("stripes", "gradient") and self.color2 is None:
            raise SceneSpecError(f"background_style.color2 required for kind {self.kind!r}")
        if self.kind == "stripes":
            if self.period_px is None or self.period_px < 2:
                raise SceneSpecError("background_style.period_px must be >= 2 for stripes")


@dataclass(frozen=True)
class SceneSpec:
    """Complete recipe for one deterministic scene."""

    figure_pose: FigurePose
    segment_palette: dict[str, tuple[int, int, int]]
    background: BackgroundStyle
    figure_scale: float
    rng_seed: int
    # Optional striped garments: category -> (second RGB color, band period px).
    garment_stripes: dict[str, tuple[tuple[int, int, int], int]] = field(default_factory=dict)

    def validate(self) -> None:
        self.figure_pose.validate()
        if not (0.4 <= self.figure_scale <= 0.9):
            raise SceneSpecError(f"figure_scale: {self.figure_scale} outside [0.4, 0.9]")
        for cat in REQUIRED_CATEGORIES:
            if cat not in self.segment_palette:
                raise SceneSpecError(f"segment_palette: required category {cat!r} missing")
        for cat, color in self.segment_palette.items():
            if cat not in CATEGORIES:
                raise SceneSpecError(f"segment_palette: unknown category {cat!r}")
            _check_rgb(f"segment_palette[{cat!r}]", color)
        self.background.validate()
        for cat, (color2, period) in self.garment_stripes.items():
            if cat not in self.segment_palette:
                raise SceneSpecError(f"garment_stripes: category {cat!r} not in segment_palette")
            _check_rgb(f"garment_stripes[{cat!r}]", color2)
            if period < 2:
                raise SceneSpecError(f"garment_stripes[{cat!r}]: period {period} < 2")

    def to_dict(self) -> dict:
        d = asdict(self)
        d["segment_palette"] = {k: list(v) for k, v in self.segment_palette.items()}
        d["garment_stripes"] = {k: [list(v[0]), v[1]] for k, v in self.garment_stripes.items()}
        return d

    @staticmethod
    def from_dict(d: dict) -> "SceneSpec":
        return SceneSpec(
            figure_pose=FigurePose(**d["figure_pose"]),
            segment_palette={k: tuple(v) for k, v in d["segment_palette"].items()},
            background=BackgroundStyle(**d["background"]),
            figure_scale=d["figure_scale"],
            rng_seed=int(d["rng_seed"]),
            garment_stripes={k: (tuple(v[0]), int(v[1])) for k, v in d.get("garment_stripes", {}).items()},
        )


@dataclass
class StyleImageSet:
    """8 fixed-order style crops; absent categories are all-zero blanks."""

    images: np.ndarray  # (8, S, S, 3) float32 in [0, 1]
    present: np.ndarray  # (8,) bool

    @staticmethod
    def blank() -> "StyleImageSet":
        return StyleImageSet(
            images=np.zeros((len(CATEGORIES), STYLE_SIZE, STYLE_SIZE, 3), dtype=np.float32),
            present=np.zeros(len(CATEGORIES), dtype=bool),
        )


@dataclass
class Sample:
    image: np.ndarray          # (64, 64, 3) float32 [0, 1]
    segment_map: np.ndarray    # (64, 64) uint8, 0=background, 1..8 categories
    pose_map: np.ndarray       # (64, 64, 3) float32 [0, 1]
    human_mask: np.ndarray     # (64, 64) uint8 {0, 1}
    style_set: StyleImageSet
    text_label: str
    palette_meta: dict


def render_background(bg: BackgroundStyle, size: int = IMAGE_SIZE) -> np.ndarray:
    c1 = as_float(NAMED_COLORS[bg.color1])
    if bg.kind == "plain":
        return np.broadcast_to(c1, (size, size, 3)).astype(np.float32).copy()
    c2 = as_float(NAMED_COLORS[bg.color2])
    xs = np.arange(size)
    if bg.kind == "stripes":
        odd = (xs // bg.period_px) % 2 == 1
        cols = np.where(odd[:, None], c2[None, :], c1[None, :])
        return np.broadcast_to(cols[None, :, :], (size, size, 3)).astype(np.float32).copy()
    # gradient: linear left-to-right interpolation
    t = (xs / (size - 1)).astype(np.float32)
    cols = c1[None, :] * (1.0 - t[:, None]) + c2[None, :] * t[:, None]
    return np.broadcast_to(cols[None, :, :], (size, size, 3)).astype(np.float32).copy()


def _category_fill(spec: SceneSpec, cat: str, size: int) -> np.ndarray:
    """Per-pixel color plane for a category (handles striped garments)."""
    c1 = as_float(spec.segment_palette[cat])
    plane = np.broadcast_to(c1, (size, size, 3)).astype(np.float32).copy()
    if cat in spec.garment_stripes:
        color2, period = spec.garment_stripes[cat]
        c2 = as_float(color2)
        ys = np.arange(size)
        odd = (ys // period) % 2 == 1
        plane[odd, :, :] = c2
    return plane


def text_label_for(bg: BackgroundStyle) -> str:
    return f"a person, {bg.color1} {bg.kind}"


def generate_scene(spec: SceneSpec) -> Sample:
    """Render a complete sample. Pure function of the spec: the same spec
    always produces bit-identical arrays."""
    spec.validate()
    size = IMAGE_SIZE
    present = {cat: cat in spec.segment_palette for cat in CATEGORIES}
    tr = UnitTransform(size, spec.figure_scale, spec.figure_pose.center_x, spec.figure_pose.center_y)

    seg = np.zeros((size, size), dtype=np.uint8)
    for cat, kind, args in body_parts(spec.figure_pose, present):
        m = rasterize_part(tr, kind, args)
        seg[m] = CATEGORIES.index(cat) + 1

    image = render_background(spec.background, size)
    for idx, cat in enumerate(CATEGORIES):
        if not present[cat]:
            continue
        m = seg == idx + 1
        if not m.any():
            continue
        image[m] = _category_fill(spec, cat, size)[m]

    human_mask = (seg != 0).astype(np.uint8)
    pose_map = render_pose_map(spec.figure_pose, size, spec.figure_scale)
    style_set = extract_style_images(image, seg)

    palette_meta = {
        "segment_palette": {k: list(v) for k, v in spec.segment_palette.items()},
        "garment_stripes": {k: [list(v[0]), v[1]] for k, v in spec.garment_stripes.items()},
        "background": asdict(spec.background),
    }
    return Sample(
        image=image,
        segment_map=seg,
        pose_map=pose_map,
        human_mask=human_mask,
        style_set=style_set,
        text_label=text_label_for(spec.background),
        palette_meta=palette_meta,
    )


def _nearest_resize(src: np.ndarray, out_h: int, out_w: int) -> np.ndarray:
    h, w = src.shape[:2]
    rows = np.floor((np.arange(out_h) + 0.5) * h / out_h).astype(np.int64)
    cols = np.floor((np.arange(out_w) + 0.5) * w / out_w).astype(np.int64)
    return src[rows][:, cols]


def extract_style_images(image: np.ndarray, segment_map: np.ndarray) -> StyleImageSet:
    """Cut each category into a normalized 32x32 crop.

    The tight bounding box is resized aspect-preserving (nearest neighbor,
    longest side to 32), centered, zero-padded; pixels outside the category
    are zeroed so crops never carry background or neighboring categories.
    """
    if image.shape[:2] != segment_map.shape:
        raise ValueError(
            f"segment_map shape {segment_map.shape} does not match image {image.shape[:2]}"
        )
    out = StyleImageSet.blank()
    for idx in range(len(CATEGORIES)):
        m = segment_map == idx + 1
        if not m.any():
            continue
        ys, xs = np.nonzero(m)
        y0, y1 = ys.min(), ys.max() + 1
        x0, x1 = xs.min(), xs.max() + 1
        crop = image[y0:y1, x0:x1] * m[y0:y1, x0:x1, None].astype(np.float32)
        h, w = crop.shape[:2]
        if h >= w:
            out_h = STYLE_SIZE
            out_w = max(1, int(round(w * STYLE_SIZE / h)))
        else:
            out_w = STYLE_SIZE
            out_h = max(1, int(round(h * STYLE_SIZE / w)))
        resized = _nearest_resize(crop, out_h, out_w)
        top = (STYLE_SIZE - out_h) // 2
        left = (STYLE_SIZE - out_w) // 2
        out.images[idx, top:top + out_h, left:left + out_w] = resized
        out.present[idx] = True
    return out

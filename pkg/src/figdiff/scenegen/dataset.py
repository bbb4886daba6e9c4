"""Dataset building: seeded spec sampling, on-disk records, manifest."""

from __future__ import annotations

import json
from dataclasses import dataclass, field, asdict
from pathlib import Path

import numpy as np

from .. import tensorfile
from ..colors import GARMENT_COLORS, HAIR_COLORS, NAMED_COLORS, SKIN_TONES
from .figure import FigurePose
from .scene import (
    BACKGROUND_KINDS,
    CATEGORIES,
    OPTIONAL_CATEGORIES,
    BackgroundStyle,
    Sample,
    SceneSpec,
    StyleImageSet,
    generate_scene,
)

MANIFEST_NAME = "manifest.json"
MANIFEST_VERSION = 1


@dataclass(frozen=True)
class DatasetConfig:
    """Distribution ranges for sampled scene specs.

    Held-out combinations: `exclude_bg` pairs (color, kind) never appear as
    backgrounds, so prompts naming them probe generalization;
    `exclude_garment_bg` pairs (garment color, background kind) never
    co-occur, the conflict construction used by the mode-collapse suite.
    """

    figure_scale: tuple[float, float] = (0.58, 0.82)
    center_x: tuple[float, float] = (28.0, 36.0)
    center_y: tuple[float, float] = (30.0, 34.0)
    shoulder: tuple[float, float] = (0.05, 1.3)
    elbow: tuple[float, float] = (0.0, 0.9)
    hip: tuple[float, float] = (0.05, 0.4)
    knee: tuple[float, float] = (0.0, 0.3)
    p_outerwear: float = 0.45
    p_headwear: float = 0.4
    p_accessories: float = 0.35
    p_stripes: float = 0.4
    stripe_period: tuple[int, int] = (3, 6)
    background_kinds: tuple[str, ...] = BACKGROUND_KINDS
    bg_stripe_period: tuple[int, int] = (4, 10)
    exclude_bg: tuple[tuple[str, str], ...] = (
        ("orange", "plain"), ("cyan", "stripes"), ("magenta", "gradient"),
    )
    exclude_garment_bg: tuple[tuple[str, str], ...] = (("red", "stripes"),)

    def to_dict(self) -> dict:
        return json.loads(json.dumps(asdict(self)))

    @staticmethod
    def from_dict(d: dict) -> "DatasetConfig":
        kwargs = {}
        for key, default in asdict(DatasetConfig()).items():
            if key not in d:
                continue
            value = d[key]
            if isinstance(default, tuple) and value is not None:
                if key in ("exclude_bg", "exclude_garment_bg"):
                    value = tuple(tuple(v) for v in value)
                else:
                    value = tuple(value)
            kwargs[key] = value
        return DatasetConfig(**kwargs)


def _uniform(rng: np.random.Generator, lo_hi) -> float:
    lo, hi = lo_hi
    return float(rng.uniform(lo, hi))


def sample_spec(seed: int, config: DatasetConfig) -> SceneSpec:
    """Deterministically derive a SceneSpec from a sample seed."""
    rng = np.random.default_rng(seed)
    pose = FigurePose(
        shoulder_l=_uniform(rng, config.shoulder),
        shoulder_r=_uniform(rng, config.shoulder),
        elbow_l=_uniform(rng, config.elbow),
        elbow_r=_uniform(rng, config.elbow),
        hip_l=_uniform(rng, config.hip),
        hip_r=_uniform(rng, config.hip),
        knee_l=_uniform(rng, config.knee),
        knee_r=_uniform(rng, config.knee),
        center_x=_uniform(rng, config.center_x),
        center_y=_uniform(rng, config.center_y),
    )
    garments = list(GARMENT_COLORS)
    palette: dict[str, tuple[int, int, int]] = {
        "face": SKIN_TONES[sorted(SKIN_TONES)[rng.integers(len(SKIN_TONES))]],
        "hair": NAMED_COLORS[HAIR_COLORS[rng.integers(len(HAIR_COLORS))]],
    }
    used_garment_names: list[str] = []

    def pick_garment() -> tuple[int, int, int]:
        name = garments[rng.integers(len(garments))]
        used_garment_names.append(name)
        return NAMED_COLORS[name]

    palette["top"] = pick_garment()
    palette["bottom"] = pick_garment()
    palette["shoes"] = pick_garment()
    for cat, prob in (
        ("outerwear", config.p_outerwear),
        ("headwear", config.p_headwear),
        ("accessories", config.p_accessories),
    ):
        if rng.random() < prob:
            palette[cat] = pick_garment()

    stripes: dict[str, tuple[tuple[int, int, int], int]] = {}
    for cat in ("top", "bottom"):
        if rng.random() < config.p_stripes:
            second = NAMED_COLORS[garments[rng.integers(len(garments))]]
            period = int(rng.integers(config.stripe_period[0], config.stripe_period[1] + 1))
            stripes[cat] = (second, period)

    # Background colors avoid this sample's garment colors so figures stay
    # visually separable from their backgrounds.
    garment_rgb = {tuple(v) for k, v in palette.items() if k not in ("face",)}
    garment_rgb |= {tuple(c) for c, _ in stripes.values()}
    excluded_kinds = {kind for g, kind in config.exclude_garment_bg if g in used_garment_names}
    kinds = [k for k in config.background_kinds if k not in excluded_kinds] or ["plain"]
    kind = kinds[rng.integers(len(kinds))]
    bg_names = [
        n for n in NAMED_COLORS
        if tuple(NAMED_COLORS[n]) not in garment_rgb and (n, kind) not in set(config.exclude_bg)
    ]
    color1 = bg_names[rng.integers(len(bg_names))]
    color2 = None
    period = None
    if kind in ("stripes", "gradient"):
        others = [n for n in bg_names if n != color1]
        color2 = others[rng.integers(len(others))]
    if kind == "stripes":
        period = int(rng.integers(config.bg_stripe_period[0], config.bg_stripe_period[1] + 1))

    return SceneSpec(
        figure_pose=pose,
        segment_palette=palette,
        background=BackgroundStyle(kind=kind, color1=color1, color2=color2, period_px=period),
        figure_scale=_uniform(rng, config.figure_scale),
        rng_seed=seed,
        garment_stripes=stripes,
    )


def seeds_for(n: int, master_seed: int) -> list[int]:
    """Per-sample seeds; parity of seed i equals parity of i, which is what
    the train/test split keys on."""
    base = (int(master_seed) << 20) & 0x7FFFFFFFFFFFFFFF
    return [base + 2 * (i // 2) + (i % 2) for i in range(n)]


def _sample_arrays(sample: Sample) -> dict[str, np.ndarray]:
    # Colors are 8-bit-grounded, so uint8 quantization is lossless.
    return {
        "image": np.round(sample.image * 255.0).astype(np.uint8),
        "segment_map": sample.segment_map.astype(np.uint8),
        "pose_map": np.round(sample.pose_map * 255.0).astype(np.uint8),
        "human_mask": sample.human_mask.astype(np.uint8),
        "style_images": np.round(sample.style_set.images * 255.0).astype(np.uint8),
        "style_present": sample.style_set.present.astype(np.uint8),
    }


def record_name(seed: int) -> str:
    return f"sample_{seed}.bin"


def build_dataset(n: int, config: DatasetConfig, seed: int, out_dir) -> Path:
    """Generate n samples and persist them plus a manifest. Rerunning with
    the same arguments reproduces identical bytes."""
    if n < 1:
        raise ValueError(f"dataset size n={n} must be >= 1")
    out = Path(out_dir)
    try:
        out.mkdir(parents=True, exist_ok=True)
    except OSError as exc:
        raise OSError(f"cannot create dataset directory {out}: {exc}") from exc
    seeds = seeds_for(n, seed)
    for s in seeds:
        spec = sample_spec(s, config)
        sample = generate_scene(spec)
        meta = {
            "seed": s,
            "label": sample.text_label,
            "palette_meta": sample.palette_meta,
            "spec": spec.to_dict(),
        }
        tensorfile.write(out / record_name(s), _sample_arrays(sample), meta)
    manifest = {
        "version": MANIFEST_VERSION,
        "master_seed": int(seed),
        "n": int(n),
        "config": config.to_dict(),
        "seeds": seeds,
    }
    manifest_path = out / MANIFEST_NAME
    with open(manifest_path, "w", encoding="utf-8") as fh:
        json.dump(manifest, fh, sort_keys=True, indent=1)
    return manifest_path


class SceneDataset:
    """Read access to a built dataset; records decode to float Samples."""

    def __init__(self, root):
        self.root = Path(root)
        manifest_path = self.root / MANIFEST_NAME
        try:
            with open(manifest_path, encoding="utf-8") as fh:
                self.manifest = json.load(fh)
        except OSError as exc:
            raise OSError(f"cannot read dataset manifest {manifest_path}: {exc}") from exc
        self.seeds: list[int] = list(self.manifest["seeds"])
        self.config = DatasetConfig.from_dict(self.manifest["config"])

    def __len__(self) -> int:
        return len(self.seeds)

    def split_seeds(self, split: str) -> list[int]:
        if split == "train":
            return [s for s in self.seeds if s % 2 == 0]
        if split == "test":
            return [s for s in self.seeds if s % 2 == 1]
        raise ValueError(f"unknown split {split!r} (want 'train' or 'test')")

    def load_seed(self, seed: int) -> Sample:
        path = self.root / record_name(seed)
        arrays, meta = tensorfile.read(path)
        style = StyleImageSet(
            images=arrays["style_images"].astype(np.float32) / 255.0,
            present=arrays["style_present"].astype(bool),
        )
        return Sample(
            image=arrays["image"].astype(np.float32) / 255.0,
            segment_map=arrays["segment_map"],
            pose_map=arrays["pose_map"].astype(np.float32) / 255.0,
            human_mask=arrays["human_mask"],
            style_set=style,
            text_label=meta["label"],
            palette_meta=meta["palette_meta"],
        )

    def load(self, index: int) -> Sample:
        return self.load_seed(self.seeds[index])

    def meta_for(self, seed: int) -> dict:
        _, meta = tensorfile.read(self.root / record_name(seed))
        return meta

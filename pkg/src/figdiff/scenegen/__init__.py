from .scene import (
    CATEGORIES,
    BackgroundStyle,
    FigurePose,
    SceneSpec,
    Sample,
    StyleImageSet,
    SceneSpecError,
    generate_scene,
    extract_style_images,
)
from .dataset import DatasetConfig, SceneDataset, build_dataset

__all__ = [
    "CATEGORIES",
    "BackgroundStyle",
    "FigurePose",
    "SceneSpec",
    "Sample",
    "StyleImageSet",
    "SceneSpecError",
    "generate_scene",
    "extract_style_images",
    "DatasetConfig",
    "SceneDataset",
    "build_dataset",
]

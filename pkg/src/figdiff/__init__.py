"""Pixel-space diffusion with a visually-conditioned control branch.

Subpackages follow the processing pipeline: `scenegen` builds the
procedural figure dataset, `encoders` turns style crops and prompts into
conditioning tokens, `diffusion` holds the frozen denoising backbone,
`control` the trainable branch, `training` the masked-loss loop,
`evaluation` the metric harness, and `service` the HTTP front door.
"""

__version__ = "0.1.0"

"""Per-pixel camera-pose encodings from floor/ceiling ray geometry.

A camera standing between an infinite floor and ceiling sees, along every
pixel ray, exactly one of the two planes in front of it (or neither, on
horizon rays).  The axis-depth of that intersection is a pseudo depth map
that depends only on roll, pitch and height -- never on yaw or horizontal
position -- and is squashed to a finite range by an inverse tangent (or,
alternatively, clipped and rescaled).
"""

import math
from dataclasses import dataclass, replace

import numpy as np

from . import _kernels
from .geometry import PosePrior, pose_from_prior

VARIANTS = ("atan", "clip", "naive")

# Clamp margins used when jittered priors are pushed back inside their
# legal open intervals.
_PITCH_MARGIN = 1e-6
_HEIGHT_MARGIN = 1e-6


@dataclass(frozen=True)
class PoseMapConfig:
    """Encoder settings.

    ceiling: floor-to-ceiling distance in meters.
    variant: "atan" (inverse-tangent squash), "clip" (threshold + affine
        rescale to [-1, 1]) or "naive" (three constant channels).
    clip_threshold: pseudo-depth ceiling for the clip variant, meters.
    fixed_pitch / fixed_height: optional constants overriding the prior's
        value before encoding (single-DoF ablations).
    """

    ceiling: float = 3.0
    variant: str = "atan"
    clip_threshold: float = 20.0
    fixed_pitch: float | None = None
    fixed_height: float | None = None

    def __post_init__(self):
        if not self.ceiling > 0:
            raise ValueError(f"ceiling must be positive, got {self.ceiling}")
        if not self.clip_threshold > 0:
            raise ValueError(f"clip threshold must be positive, got {self.clip_threshold}")
        if self.variant not in VARIANTS:
            raise ValueError(f"variant must be one of {VARIANTS}, got {self.variant!r}")


@dataclass(frozen=True)
class PoseMap:
    values: np.ndarray
    variant: str


def _effective_prior(prior, cfg):
    if cfg.fixed_pitch is not None:
        prior = replace(prior, pitch=cfg.fixed_pitch)
    if cfg.fixed_height is not None:
        prior = replace(prior, height=cfg.fixed_height)
    return prior


def pseudo_depth_map(prior, intr, ceiling, yaw=0.0):
    """Raw per-pixel axis-depth to the nearer in-front plane; +inf on horizon rays."""
    if not 0.0 < prior.height < ceiling:
        raise ValueError(
            f"camera height {prior.height} must lie inside (0, {ceiling})"
        )
    pose = pose_from_prior(prior, yaw)
    r = pose.rotation
    return _kernels.plane_depth(
        r[2, 0], r[2, 1], r[2, 2],
        prior.height, ceiling,
        intr.fx, intr.fy, intr.cx, intr.cy,
        intr.height, intr.width,
    )


def encode_pose_map(prior, intr, cfg=PoseMapConfig(), yaw=0.0):
    """Encode the pose prior as a single-channel map.

    The atan variant lands in [atan(min(h, C-h)), pi/2] for poses whose
    image rays all stay farther from vertical than their own off-axis angle
    (in particular, the usual near-horizontal indoor regime); the clip
    variant lands in [-1, 1] by construction.
    """
    if cfg.variant == "naive":
        raise ValueError("use encode_constant_channels for the naive variant")
    prior = _effective_prior(prior, cfg)
    m = pseudo_depth_map(prior, intr, cfg.ceiling, yaw=yaw)
    if cfg.variant == "atan":
        return PoseMap(values=np.arctan(m), variant="atan")
    clipped = np.minimum(m, cfg.clip_threshold)
    return PoseMap(values=clipped * (2.0 / cfg.clip_threshold) - 1.0, variant="clip")


def encode_constant_channels(prior, shape):
    """The naive encoding: three constant channels (roll, pitch, height)."""
    h, w = shape
    out = np.empty((h, w, 3))
    out[:, :, 0] = prior.roll
    out[:, :, 1] = prior.pitch
    out[:, :, 2] = prior.height
    return out


def clamp_prior(roll, pitch, height, ceiling=None):
    """Push (roll, pitch, height) back inside the legal prior domain."""
    pitch = min(max(pitch, _PITCH_MARGIN), math.pi - _PITCH_MARGIN)
    height = max(height, _HEIGHT_MARGIN)
    if ceiling is not None:
        height = min(height, ceiling - _HEIGHT_MARGIN)
    return PosePrior(roll=roll, pitch=pitch, height=height)


def perturb_prior(prior, pitch_jitter, height_jitter, rng, ceiling=None):
    """Uniform jitter on pitch and height, for pose-noise resilience studies.

    The result is clamped back into the prior's legal domain (and below the
    ceiling when one is given, so the jittered prior stays encodable).
    """
    if pitch_jitter < 0 or height_jitter < 0:
        raise ValueError("jitter half-ranges must be nonnegative")
    pitch = prior.pitch + float(rng.uniform(-pitch_jitter, pitch_jitter))
    height = prior.height + float(rng.uniform(-height_jitter, height_jitter))
    return clamp_prior(prior.roll, pitch, height, ceiling=ceiling)

"""Pose-aware RGB-D augmentation, pose-map encoding, sampling and evaluation."""

__version__ = "0.1.0"

from ._kernels import BACKEND as KERNEL_BACKEND
from .augment import (
    CropAugmentConfig,
    RotationAugmentConfig,
    crop_augment,
    sample_rotation_perturbation,
    warp_rgbd,
)
from .geometry import (
    CameraIntrinsics,
    CameraPose,
    PosePrior,
    RayPlaneIntersection,
    backproject,
    depth_along_axis,
    intersect_ray_plane,
    pose_from_prior,
    project,
    relative_rotation,
    render_empty_room,
)
from .manifest import ManifestError, read_manifest, write_manifest
from .metrics import (
    BinReport,
    EvalConfig,
    MetricsReport,
    PooledMetrics,
    average_depth_map,
    compute_metrics,
    denormalize_depth,
    metrics_by_bin,
    normalize_depth,
)
from .posemap import (
    PoseMap,
    PoseMapConfig,
    clamp_prior,
    encode_constant_channels,
    encode_pose_map,
    perturb_prior,
    pseudo_depth_map,
)
from .sampling import (
    RestrictedRanges,
    SampleRecord,
    SamplingSpec,
    resample_flat,
    run_sampling,
    sample_natural,
    sample_restricted,
    sample_uniform,
    split_scenes,
)

__all__ = [
    "__version__",
    "KERNEL_BACKEND",
    "CameraIntrinsics", "CameraPose", "PosePrior", "RayPlaneIntersection",
    "backproject", "project", "depth_along_axis", "intersect_ray_plane",
    "pose_from_prior", "relative_rotation", "render_empty_room",
    "RotationAugmentConfig", "CropAugmentConfig",
    "sample_rotation_perturbation", "warp_rgbd", "crop_augment",
    "PoseMap", "PoseMapConfig", "pseudo_depth_map", "encode_pose_map",
    "encode_constant_channels", "perturb_prior", "clamp_prior",
    "EvalConfig", "MetricsReport", "BinReport", "PooledMetrics",
    "normalize_depth", "denormalize_depth", "compute_metrics",
    "metrics_by_bin", "average_depth_map",
    "SampleRecord", "SamplingSpec", "RestrictedRanges",
    "split_scenes", "run_sampling", "sample_natural", "sample_uniform",
    "sample_restricted", "resample_flat",
    "ManifestError", "read_manifest", "write_manifest",
]

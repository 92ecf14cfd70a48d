"""Dataset records, scene-stratified splits and pose-distribution samplers."""

import math
from dataclasses import dataclass, field

import numpy as np

from .geometry import CameraIntrinsics, CameraPose, PosePrior

# Default quantization used by the uniform / flattening samplers; explicit
# configuration, not a dataset-derived constant.
DEFAULT_PITCH_EDGES = np.linspace(0.0, math.pi, 19)                       # 18 bins
DEFAULT_ROLL_EDGES = np.linspace(-math.pi / 6.0, math.pi / 6.0, 13)       # 12 bins
DEFAULT_HEIGHT_EDGES = np.linspace(0.0, 3.0, 11)                          # 10 bins


@dataclass(frozen=True)
class SampleRecord:
    """One RGB-D example: raster paths, intrinsics, pose prior and scene id.

    Angles are stored in degrees to mirror the on-disk manifest exactly; the
    ``prior`` property is the single degree-to-radian conversion boundary.
    """

    rgb: str
    depth: str
    intrinsics: CameraIntrinsics
    roll_deg: float
    pitch_deg: float
    height_m: float
    scene: str
    pose_map: str | None = None
    pose: CameraPose | None = None  # optional full pose; never serialized

    def __post_init__(self):
        if not self.rgb or not self.depth:
            raise ValueError("rgb and depth paths must be non-empty")
        if not self.scene:
            raise ValueError("scene id must be non-empty")
        if not 0.0 < self.pitch_deg <= 180.0:
            raise ValueError(f"pitch must lie in (0, 180] degrees, got {self.pitch_deg}")
        if not self.height_m > 0.0:
            raise ValueError(f"height must be positive, got {self.height_m}")

    @property
    def prior(self):
        return PosePrior(
            roll=math.radians(self.roll_deg),
            pitch=math.radians(self.pitch_deg),
            height=self.height_m,
        )


@dataclass(frozen=True)
class RestrictedRanges:
    """Closed (lo, hi) eligibility intervals, radians and meters."""

    pitch: tuple = (math.radians(85.0), math.radians(95.0))
    height: tuple = (1.45, 1.55)
    roll: tuple = (math.radians(-5.0), math.radians(5.0))

    def admits(self, prior):
        return (
            self.pitch[0] <= prior.pitch <= self.pitch[1]
            and self.height[0] <= prior.height <= self.height[1]
            and self.roll[0] <= prior.roll <= self.roll[1]
        )


@dataclass
class SamplingSpec:
    """Everything a sampling run needs; realized by the `sample` subcommand."""

    strategy: str = "natural"  # natural | uniform | restricted | resample
    count: int = 1
    seed: int = 0
    pitch_edges: np.ndarray = field(default_factory=lambda: DEFAULT_PITCH_EDGES.copy())
    roll_edges: np.ndarray = field(default_factory=lambda: DEFAULT_ROLL_EDGES.copy())
    height_edges: np.ndarray = field(default_factory=lambda: DEFAULT_HEIGHT_EDGES.copy())
    restricted: RestrictedRanges = field(default_factory=RestrictedRanges)

    def __post_init__(self):
        if self.strategy not in ("natural", "uniform", "restricted", "resample"):
            raise ValueError(f"unknown sampling strategy {self.strategy!r}")
        if self.count < 1:
            raise ValueError(f"sample count must be >= 1, got {self.count}")
        for edges in (self.pitch_edges, self.roll_edges, self.height_edges):
            if len(edges) < 2 or np.any(np.diff(edges) <= 0):
                raise ValueError("bin edges must be strictly increasing with >= 2 entries")


def run_sampling(records, spec):
    """Dispatch a SamplingSpec to the matching sampler."""
    rng = np.random.default_rng(spec.seed)
    if spec.strategy == "natural":
        return sample_natural(records, spec.count, rng)
    if spec.strategy == "uniform":
        return sample_uniform(records, spec.count, rng,
                              spec.pitch_edges, spec.roll_edges, spec.height_edges)
    if spec.strategy == "restricted":
        return sample_restricted(records, spec.count, rng, spec.restricted)
    return resample_flat(records, spec.count, rng, spec.pitch_edges)


def split_scenes(records, ratio, seed):
    """Disjoint scene-level train/test split.

    Scene ids are shuffled deterministically and cut at round(ratio * n),
    clamped so both sides keep at least one scene; records follow their scene
    in input order.
    """
    if not 0.0 < ratio < 1.0:
        raise ValueError(f"split ratio must lie in (0, 1), got {ratio}")
    scenes = sorted({r.scene for r in records})
    if len(scenes) < 2:
        raise ValueError(f"need at least 2 scenes to split, got {len(scenes)}")
    rng = np.random.default_rng(seed)
    order = [scenes[i] for i in rng.permutation(len(scenes))]
    n_train = min(max(int(round(ratio * len(scenes))), 1), len(scenes) - 1)
    train_scenes = set(order[:n_train])
    train = [r for r in records if r.scene in train_scenes]
    test = [r for r in records if r.scene not in train_scenes]
    return train, test


def sample_natural(records, count, rng):
    """Uniform subset without replacement; mirrors the source distribution."""
    if not 1 <= count <= len(records):
        raise ValueError(f"cannot draw {count} of {len(records)} records")
    chosen = rng.choice(len(records), size=count, replace=False)
    return [records[i] for i in sorted(chosen)]


def _bin_of(values, edges):
    # Clip into the outermost bins so every record belongs somewhere.
    return np.clip(np.digitize(values, edges) - 1, 0, len(edges) - 2)


def _allocate(total, capacities):
    """Round-robin split of ``total`` into quotas bounded by capacities.

    One unit at a time in bin order, skipping saturated bins, so unsaturated
    bins end within one of each other and shortfalls flow to the rest.
    """
    quotas = [0] * len(capacities)
    remaining = total
    while remaining > 0:
        progressed = False
        for i in range(len(capacities)):
            if remaining == 0:
                break
            if quotas[i] < capacities[i]:
                quotas[i] += 1
                remaining -= 1
                progressed = True
        if not progressed:
            raise ValueError(f"population exhausted with {remaining} draws unassigned")
    return quotas


def _grouped(indices, values, edges):
    bins = _bin_of(values[indices], edges)
    groups = []
    for b in range(len(edges) - 1):
        members = indices[bins == b]
        if members.size:
            groups.append(members)
    return groups


def sample_uniform(records, count, rng, pitch_edges=None, roll_edges=None, height_edges=None):
    """Quota sampler flattening the pose distribution, priority pitch > roll > height.

    Equal quotas go to the non-empty pitch bins (round-robin remainder and
    shortfall redistribution); inside each pitch bin the quota is balanced
    across roll bins, then height bins, where records are drawn without
    replacement.
    """
    if len(records) == 0:
        raise ValueError("cannot sample from an empty record list")
    pitch_edges = DEFAULT_PITCH_EDGES if pitch_edges is None else np.asarray(pitch_edges)
    roll_edges = DEFAULT_ROLL_EDGES if roll_edges is None else np.asarray(roll_edges)
    height_edges = DEFAULT_HEIGHT_EDGES if height_edges is None else np.asarray(height_edges)

    pitch = np.array([r.prior.pitch for r in records])
    roll = np.array([r.prior.roll for r in records])
    height = np.array([r.prior.height for r in records])
    all_idx = np.arange(len(records))

    pitch_groups = _grouped(all_idx, pitch, pitch_edges)
    if count < len(pitch_groups):
        raise ValueError(
            f"need at least one draw per non-empty pitch bin ({len(pitch_groups)}), got {count}"
        )
    if count > len(records):
        raise ValueError(f"cannot draw {count} of {len(records)} records without replacement")

    chosen = []
    pitch_quotas = _allocate(count, [g.size for g in pitch_groups])
    for p_members, p_quota in zip(pitch_groups, pitch_quotas):
        if p_quota == 0:
            continue
        roll_groups = _grouped(p_members, roll, roll_edges)
        for r_members, r_quota in zip(roll_groups, _allocate(p_quota, [g.size for g in roll_groups])):
            if r_quota == 0:
                continue
            height_groups = _grouped(r_members, height, height_edges)
            for h_members, h_quota in zip(
                height_groups, _allocate(r_quota, [g.size for g in height_groups])
            ):
                if h_quota:
                    chosen.extend(rng.choice(h_members, size=h_quota, replace=False))
    return [records[i] for i in sorted(chosen)]


def sample_restricted(records, count, rng, ranges=None):
    """Uniform subset of the records inside the closed restricted ranges."""
    ranges = ranges or RestrictedRanges()
    eligible = [i for i, r in enumerate(records) if ranges.admits(r.prior)]
    if count < 1:
        raise ValueError(f"sample count must be >= 1, got {count}")
    if len(eligible) < count:
        raise ValueError(
            f"only {len(eligible)} of the requested {count} records satisfy the restricted ranges"
        )
    chosen = rng.choice(len(eligible), size=count, replace=False)
    return [records[eligible[i]] for i in sorted(chosen)]


def resample_flat(records, count, rng, pitch_edges=None):
    """Draw with replacement so expected counts are equal across pitch bins.

    The output may repeat records; that is the point of the baseline -- it
    flattens the pose histogram without synthesizing new views.
    """
    if len(records) == 0:
        raise ValueError("cannot resample an empty record list")
    pitch_edges = DEFAULT_PITCH_EDGES if pitch_edges is None else np.asarray(pitch_edges)
    pitch = np.array([r.prior.pitch for r in records])
    groups = _grouped(np.arange(len(records)), pitch, pitch_edges)
    bin_draws = rng.integers(0, len(groups), size=count)
    member_draws = rng.random(count)
    out = []
    for b, x in zip(bin_draws, member_draws):
        members = groups[b]
        out.append(records[members[int(x * members.size)]])
    return out

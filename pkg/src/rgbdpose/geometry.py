"""Camera conventions, pose math and the analytic empty-room renderer.

Conventions used throughout the package (fixed here, once):

* World frame: right-handed, up = +Z, ground plane at z = 0.
* Camera frame: x right, y down, z forward (optical axis).
* Pitch is the angle between the optical axis and the world up-axis:
  90 deg = horizontal view, 180 deg = looking straight down.
* Canonical pose (pitch = 90 deg, roll = 0, yaw = 0): camera forward is
  world +X, image-down is world -Z, image-right is world -Y.
* Rotations compose as yaw (about world Z) after pitch (about camera x,
  positive tilts the view downward) after roll (about the optical axis).
* Pixel rays are cast through pixel centers at integer coordinates.
"""

import math
from dataclasses import dataclass

import numpy as np

# Ground-plane normal / world up-axis.
UP = np.array([0.0, 0.0, 1.0])
# Depth direction in the camera frame.
VIEW_AXIS = np.array([0.0, 0.0, 1.0])

# Canonical world-from-camera rotation; columns are the camera axes
# (right, down, forward) expressed in world coordinates.
_CANONICAL = np.array(
    [
        [0.0, 0.0, 1.0],
        [-1.0, 0.0, 0.0],
        [0.0, -1.0, 0.0],
    ]
)

# Rays closer to a plane than this (in unit-z-ray denominator terms) are
# treated as parallel.
PARALLEL_EPS = 1e-12


@dataclass(frozen=True)
class CameraIntrinsics:
    """Pinhole intrinsics plus the raster dimensions they refer to."""

    fx: float
    fy: float
    cx: float
    cy: float
    width: int
    height: int

    def __post_init__(self):
        if not (self.fx > 0 and self.fy > 0):
            raise ValueError(f"focal lengths must be positive, got fx={self.fx}, fy={self.fy}")
        if self.width < 1 or self.height < 1:
            raise ValueError(f"image dimensions must be >= 1, got {self.width}x{self.height}")
        if not (0 <= self.cx < self.width and 0 <= self.cy < self.height):
            raise ValueError(
                f"principal point ({self.cx}, {self.cy}) outside image {self.width}x{self.height}"
            )

    def matrix(self):
        """3x3 intrinsic matrix K."""
        return np.array(
            [[self.fx, 0.0, self.cx], [0.0, self.fy, self.cy], [0.0, 0.0, 1.0]]
        )

    def inverse_matrix(self):
        return np.array(
            [
                [1.0 / self.fx, 0.0, -self.cx / self.fx],
                [0.0, 1.0 / self.fy, -self.cy / self.fy],
                [0.0, 0.0, 1.0],
            ]
        )

    def resized(self, width, height):
        """Intrinsics for the same camera after resampling the raster.

        Focal lengths scale with the resolution ratio; the principal point
        scales in the pixel-center convention.
        """
        sx = width / self.width
        sy = height / self.height
        return CameraIntrinsics(
            fx=self.fx * sx,
            fy=self.fy * sy,
            cx=(self.cx + 0.5) * sx - 0.5,
            cy=(self.cy + 0.5) * sy - 0.5,
            width=width,
            height=height,
        )

    def pixel_grid(self):
        """Normalized ray components (a, b) for every pixel center.

        Returns (A, B) of shape (height, width) with a = (u - cx)/fx and
        b = (v - cy)/fy, so the camera-frame ray of pixel (u, v) is
        (a, b, 1).
        """
        a = (np.arange(self.width, dtype=np.float64) - self.cx) / self.fx
        b = (np.arange(self.height, dtype=np.float64) - self.cy) / self.fy
        return np.meshgrid(a, b)


@dataclass(frozen=True)
class PosePrior:
    """The 3DoF pose prior: roll, pitch (radians) and height above ground (m)."""

    roll: float
    pitch: float
    height: float

    def __post_init__(self):
        # The closed top end admits the exactly-straight-down pose.
        if not 0.0 < self.pitch <= math.pi:
            raise ValueError(f"pitch must lie in (0, pi], got {self.pitch}")
        if not self.height > 0.0:
            raise ValueError(f"height must be positive, got {self.height}")


@dataclass(frozen=True)
class CameraPose:
    """World-from-camera rotation and camera position in world coordinates."""

    rotation: np.ndarray
    position: np.ndarray

    def __post_init__(self):
        r = np.asarray(self.rotation, dtype=np.float64)
        t = np.asarray(self.position, dtype=np.float64)
        if r.shape != (3, 3) or t.shape != (3,):
            raise ValueError("pose expects a 3x3 rotation and a 3-vector position")
        if np.abs(r.T @ r - np.eye(3)).max() > 1e-9 or abs(np.linalg.det(r) - 1.0) > 1e-9:
            raise ValueError("rotation is not orthonormal with determinant 1")
        object.__setattr__(self, "rotation", r)
        object.__setattr__(self, "position", t)

    @property
    def height(self):
        return float(self.position[2])


@dataclass(frozen=True)
class RayPlaneIntersection:
    """Result of casting a pixel ray against a horizontal plane.

    ``lam`` is the scale on the unit-z-component ray; it equals the depth of
    the intersection along the camera axis.  ``lam`` is +inf and ``point``
    is None when the ray is parallel to the plane; a negative ``lam`` means
    the intersection lies behind the camera.
    """

    lam: float
    point: np.ndarray | None

    @property
    def hits(self):
        return math.isfinite(self.lam) and self.lam > 0


def rot_x(angle):
    c, s = math.cos(angle), math.sin(angle)
    return np.array([[1.0, 0.0, 0.0], [0.0, c, -s], [0.0, s, c]])


def rot_y(angle):
    c, s = math.cos(angle), math.sin(angle)
    return np.array([[c, 0.0, s], [0.0, 1.0, 0.0], [-s, 0.0, c]])


def rot_z(angle):
    c, s = math.cos(angle), math.sin(angle)
    return np.array([[c, -s, 0.0], [s, c, 0.0], [0.0, 0.0, 1.0]])


def pose_from_prior(prior, yaw=0.0):
    """Realize a full camera pose from the 3DoF prior plus a free yaw.

    The prior is uniform over yaw, so the angle is an explicit argument
    defaulting to 0; anything that consumes only ground/ceiling geometry is
    yaw-invariant by construction.
    """
    tilt = prior.pitch - math.pi / 2.0  # 0 = horizontal, positive tilts down
    rotation = rot_z(yaw) @ _CANONICAL @ rot_x(-tilt) @ rot_z(prior.roll)
    return CameraPose(rotation=rotation, position=np.array([0.0, 0.0, prior.height]))


def relative_rotation(src, dst):
    """Rotation taking source-camera-frame vectors to destination-camera frame.

    Both poses must share the same camera center (the augmentation path is
    rotation-only).
    """
    if np.abs(src.position - dst.position).max() > 1e-9:
        raise ValueError("poses have different camera centers; warping is rotation-only")
    if np.array_equal(src.rotation, dst.rotation):
        return np.eye(3)
    return dst.rotation.T @ src.rotation


def backproject(intr, pixel, depth):
    """Camera-frame 3D point of ``pixel`` at the given depth (z > 0)."""
    if not depth > 0:
        raise ValueError(f"depth must be positive, got {depth}")
    u, v = pixel
    return np.array(
        [depth * (u - intr.cx) / intr.fx, depth * (v - intr.cy) / intr.fy, depth]
    )


def project(intr, point):
    """Pixel coordinates of a camera-frame point with positive depth."""
    x, y, z = point
    if not z > 0:
        raise ValueError(f"point must be in front of the camera, got z={z}")
    return (intr.fx * x / z + intr.cx, intr.fy * y / z + intr.cy)


def intersect_ray_plane(pose, intr, pixel, plane_offset=0.0):
    """Cast the pixel ray against the horizontal plane z = plane_offset.

    Returns a RayPlaneIntersection; see its docstring for the parallel and
    behind-camera encodings.
    """
    u, v = pixel
    ray_cam = np.array([(u - intr.cx) / intr.fx, (v - intr.cy) / intr.fy, 1.0])
    direction = pose.rotation @ ray_cam
    denom = float(UP @ direction)
    if abs(denom) < PARALLEL_EPS:
        return RayPlaneIntersection(lam=math.inf, point=None)
    lam = (plane_offset - float(UP @ pose.position)) / denom
    return RayPlaneIntersection(lam=lam, point=lam * direction + pose.position)


def depth_along_axis(pose, point):
    """Projection of a world point onto the camera depth direction.

    Negative values mean the point lies behind the camera.
    """
    return float(VIEW_AXIS @ (pose.rotation.T @ (np.asarray(point, dtype=np.float64) - pose.position)))


# Plane color pairs for the procedural textures, values in [-1, 1].
_GROUND_TONES = (np.array([0.9, 0.1, -0.5]), np.array([-0.9, -0.1, 0.5]))
_CEILING_TONES = (np.array([0.1, 0.9, -0.3]), np.array([-0.1, -0.7, 0.9]))


def render_empty_room(pose, intr, ceiling, texture="checker", period=0.5):
    """Analytic RGB-D render of an infinite floor/ceiling scene.

    Serves as the brute-force oracle for the warping and encoding paths:
    every pixel is an independent ray cast against both planes, keeping the
    nearer intersection in front of the camera.

    Args:
        pose: camera pose; its height must lie strictly between the planes.
        intr: pinhole intrinsics defining the raster.
        ceiling: distance between floor and ceiling (meters).
        texture: "checker" for a two-tone checkerboard per plane, or
            "smooth" for a band-limited sinusoidal pattern (useful where a
            resampling-tolerance test needs a differentiable signal).
        period: texture period in meters.

    Returns:
        (rgb, depth, valid): rgb is (H, W, 3) in [-1, 1]; depth is the
        per-pixel distance along the camera axis; valid is False on horizon
        rays that hit neither plane in front of the camera.
    """
    h = pose.height
    if not 0.0 < h < ceiling:
        raise ValueError(f"camera height {h} must lie inside (0, {ceiling})")
    if texture not in ("checker", "smooth"):
        raise ValueError(f"unknown texture {texture!r}")

    a_grid, b_grid = intr.pixel_grid()
    r = pose.rotation
    dir_x = r[0, 0] * a_grid + r[0, 1] * b_grid + r[0, 2]
    dir_y = r[1, 0] * a_grid + r[1, 1] * b_grid + r[1, 2]
    dir_z = r[2, 0] * a_grid + r[2, 1] * b_grid + r[2, 2]

    with np.errstate(divide="ignore", invalid="ignore"):
        lam_ground = (0.0 - h) / dir_z
        lam_ceiling = (ceiling - h) / dir_z
    candidates = np.stack([lam_ground, lam_ceiling])
    candidates = np.where(
        (candidates > 0) & (np.abs(dir_z) >= PARALLEL_EPS), candidates, np.inf
    )
    hit_plane = np.argmin(candidates, axis=0)
    depth = np.take_along_axis(candidates, hit_plane[None], axis=0)[0]
    valid = np.isfinite(depth)

    # World-plane coordinates of each hit, for texturing.
    lam_safe = np.where(valid, depth, 0.0)
    px = lam_safe * dir_x + pose.position[0]
    py = lam_safe * dir_y + pose.position[1]

    rgb = np.zeros(a_grid.shape + (3,))
    if texture == "checker":
        parity = (
            np.floor(px / period).astype(np.int64) + np.floor(py / period).astype(np.int64)
        ) & 1
        for plane, tones in ((0, _GROUND_TONES), (1, _CEILING_TONES)):
            for par in (0, 1):
                sel = valid & (hit_plane == plane) & (parity == par)
                rgb[sel] = tones[par]
    else:
        w = 2.0 * math.pi / period
        base = np.stack(
            [np.sin(w * px), np.sin(w * py), np.sin(w * (px + py) * 0.5)], axis=-1
        )
        rgb = 0.9 * base
        rgb[valid & (hit_plane == 1)] *= -0.8  # distinguish the ceiling
        rgb[~valid] = 0.0

    depth = np.where(valid, depth, 0.0)
    return rgb, depth, valid

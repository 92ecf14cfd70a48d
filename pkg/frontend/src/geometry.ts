/**
 * Camera conventions shared with the primary toolkit: world up = +Z,
 * ground at z = 0; camera x right, y down, z forward; pitch is the angle
 * between the optical axis and the up-axis (pi = straight down), roll
 * spins about the optical axis, yaw about the up-axis.
 */

export interface Intrinsics {
  fx: number;
  fy: number;
  cx: number;
  cy: number;
  width: number;
  height: number;
}

export interface PosePrior {
  roll: number; // radians
  pitch: number; // radians, (0, pi]
  height: number; // meters above ground
}

/** Row-major 3x3 matrix. */
export type Mat3 = number[];

export const IDENTITY3: Mat3 = [1, 0, 0, 0, 1, 0, 0, 0, 1];

// Canonical world-from-camera rotation at pitch = 90deg, roll = yaw = 0:
// camera right = -Y, image-down = -Z, forward = +X.
const CANONICAL: Mat3 = [0, 0, 1, -1, 0, 0, 0, -1, 0];

export function mat3Mul(a: Mat3, b: Mat3): Mat3 {
  const out = new Array<number>(9);
  for (let r = 0; r < 3; r++) {
    for (let c = 0; c < 3; c++) {
      out[3 * r + c] =
        a[3 * r] * b[c] + a[3 * r + 1] * b[3 + c] + a[3 * r + 2] * b[6 + c];
    }
  }
  return out;
}

export function mat3Transpose(m: Mat3): Mat3 {
  return [m[0], m[3], m[6], m[1], m[4], m[7], m[2], m[5], m[8]];
}

export function rotX(angle: number): Mat3 {
  const c = Math.cos(angle);
  const s = Math.sin(angle);
  return [1, 0, 0, 0, c, -s, 0, s, c];
}

export function rotZ(angle: number): Mat3 {
  const c = Math.cos(angle);
  const s = Math.sin(angle);
  return [c, -s, 0, s, c, 0, 0, 0, 1];
}

/** World-from-camera rotation realized from the 3DoF prior plus a free yaw. */
export function rotationFromPrior(prior: PosePrior, yaw = 0): Mat3 {
  const tilt = prior.pitch - Math.PI / 2;
  return mat3Mul(rotZ(yaw), mat3Mul(CANONICAL, mat3Mul(rotX(-tilt), rotZ(prior.roll))));
}

export function checkRotation(m: Mat3): void {
  if (m.length !== 9) throw new Error('relative transform is not a rotation');
  const t = mat3Transpose(m);
  const gram = mat3Mul(t, m);
  let err = 0;
  for (let i = 0; i < 9; i++) {
    err = Math.max(err, Math.abs(gram[i] - IDENTITY3[i]));
  }
  const det =
    m[0] * (m[4] * m[8] - m[5] * m[7]) -
    m[1] * (m[3] * m[8] - m[5] * m[6]) +
    m[2] * (m[3] * m[7] - m[4] * m[6]);
  if (err > 1e-9 || Math.abs(det - 1) > 1e-9) {
    throw new Error('relative transform is not a rotation');
  }
}

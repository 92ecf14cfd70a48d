/**
 * Backward RGB-D warp under a pure camera rotation; numerically mirrors the
 * primary implementation (reflection-padded RGB, bilinear depth with the
 * per-pixel z-component rescale, stencil-conservative validity).
 */

import { checkRotation, IDENTITY3, Intrinsics, Mat3, mat3Transpose } from './geometry.js';

const BEHIND_EPS = 1e-9;

export interface WarpResult {
  rgb: Float64Array; // (H, W, 3) row-major
  depth: Float64Array; // (H, W)
  valid: Uint8Array; // (H, W)
}

function reflect(x: number, n: number): number {
  if (n <= 0) return 0;
  const period = 2 * n;
  let m = Math.abs(x) % period;
  if (m > n) m = period - m;
  return m;
}

function defaultValid(depth: ArrayLike<number>): Uint8Array {
  const out = new Uint8Array(depth.length);
  for (let i = 0; i < depth.length; i++) {
    const d = depth[i];
    out[i] = Number.isFinite(d) && d > 0 ? 1 : 0;
  }
  return out;
}

/**
 * Warp an RGB-D pair to the view after rotating the camera.
 *
 * @param rgb     length H*W*3, values in [-1, 1]
 * @param depth   length H*W, metric depth
 * @param intr    pinhole intrinsics matching the rasters
 * @param rotation row-major 3x3 rotation taking source-camera vectors to the
 *                 new camera frame
 * @param valid   optional validity (0/1) per pixel; defaults to finite
 *                positive depth
 */
export function warpRgbd(
  rgb: ArrayLike<number>,
  depth: ArrayLike<number>,
  intr: Intrinsics,
  rotation: Mat3,
  valid?: Uint8Array,
): WarpResult {
  const { fx, fy, cx, cy, width, height } = intr;
  if (rgb.length !== width * height * 3 || depth.length !== width * height) {
    throw new Error(
      `raster sizes ${rgb.length}/${depth.length} do not match intrinsics ${height}x${width}`,
    );
  }
  checkRotation(rotation);
  const mask = valid ?? defaultValid(depth);

  const rgbOut = new Float64Array(width * height * 3);
  const depthOut = new Float64Array(width * height);
  const validOut = new Uint8Array(width * height);

  if (rotation.every((v, i) => v === IDENTITY3[i])) {
    for (let i = 0; i < rgb.length; i++) rgbOut[i] = rgb[i];
    for (let i = 0; i < depth.length; i++) depthOut[i] = depth[i];
    validOut.set(mask);
    return { rgb: rgbOut, depth: depthOut, valid: validOut };
  }

  const m = mat3Transpose(rotation); // maps target rays into the source frame
  const wMax = width - 1;
  const hMax = height - 1;
  for (let i = 0; i < height; i++) {
    const b = (i - cy) / fy;
    for (let j = 0; j < width; j++) {
      const a = (j - cx) / fx;
      const sx = m[0] * a + m[1] * b + m[2];
      const sy = m[3] * a + m[4] * b + m[5];
      const sz = m[6] * a + m[7] * b + m[8];
      if (sz <= BEHIND_EPS) continue;
      const u = fx * (sx / sz) + cx;
      const v = fy * (sy / sz) + cy;
      const w = 1 / sz;

      const ur = reflect(u, wMax);
      const vr = reflect(v, hMax);
      let j0 = Math.min(Math.max(Math.floor(ur), 0), Math.max(width - 2, 0));
      let i0 = Math.min(Math.max(Math.floor(vr), 0), Math.max(height - 2, 0));
      let j1 = Math.min(j0 + 1, wMax);
      let i1 = Math.min(i0 + 1, hMax);
      let fu = ur - j0;
      let fv = vr - i0;
      let w00 = (1 - fv) * (1 - fu);
      let w01 = (1 - fv) * fu;
      let w10 = fv * (1 - fu);
      let w11 = fv * fu;
      const at = 3 * (width * i + j);
      for (let c = 0; c < 3; c++) {
        rgbOut[at + c] =
          w00 * rgb[3 * (width * i0 + j0) + c] +
          w01 * rgb[3 * (width * i0 + j1) + c] +
          w10 * rgb[3 * (width * i1 + j0) + c] +
          w11 * rgb[3 * (width * i1 + j1) + c];
      }

      if (u < 0 || u > wMax || v < 0 || v > hMax) continue;
      const uc = Math.min(Math.max(u, 0), wMax);
      const vc = Math.min(Math.max(v, 0), hMax);
      j0 = Math.min(Math.max(Math.floor(uc), 0), Math.max(width - 2, 0));
      i0 = Math.min(Math.max(Math.floor(vc), 0), Math.max(height - 2, 0));
      j1 = Math.min(j0 + 1, wMax);
      i1 = Math.min(i0 + 1, hMax);
      if (
        !(mask[width * i0 + j0] && mask[width * i0 + j1] &&
          mask[width * i1 + j0] && mask[width * i1 + j1])
      ) {
        continue;
      }
      fu = uc - j0;
      fv = vc - i0;
      w00 = (1 - fv) * (1 - fu);
      w01 = (1 - fv) * fu;
      w10 = fv * (1 - fu);
      w11 = fv * fu;
      depthOut[width * i + j] =
        (w00 * depth[width * i0 + j0] +
          w01 * depth[width * i0 + j1] +
          w10 * depth[width * i1 + j0] +
          w11 * depth[width * i1 + j1]) * w;
      validOut[width * i + j] = 1;
    }
  }
  return { rgb: rgbOut, depth: depthOut, valid: validOut };
}

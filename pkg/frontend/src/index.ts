export {
  Intrinsics,
  Mat3,
  PosePrior,
  rotationFromPrior,
} from './geometry.js';
export { warpRgbd, WarpResult } from './warp.js';
export { encodePoseMap, pseudoDepthMap, PoseMapConfig } from './posemap.js';
export { computeMetrics, MetricsOptions, MetricsReport } from './metrics.js';
export { parseNpy, readNpy, Raster } from './npy.js';

/** Column-major mat4 helpers for rendering (camera math only; not the portable path). */

import { Mat4 } from "./portable";

export type GlMat4 = Float32Array; // 16, column-major

export function glIdentity(): GlMat4 {
  const m = new Float32Array(16);
  m[0] = m[5] = m[10] = m[15] = 1;
  return m;
}

/** Row-major pose rows -> column-major GL matrix. */
export function glFromPose(pose: Mat4): GlMat4 {
  const m = new Float32Array(16);
  for (let r = 0; r < 4; r++) {
    for (let c = 0; c < 4; c++) {
      m[c * 4 + r] = pose[r][c];
    }
  }
  return m;
}

export function glMultiply(a: GlMat4, b: GlMat4): GlMat4 {
  const out = new Float32Array(16);
  for (let c = 0; c < 4; c++) {
    for (let r = 0; r < 4; r++) {
      out[c * 4 + r] =
        a[r] * b[c * 4] + a[4 + r] * b[c * 4 + 1] + a[8 + r] * b[c * 4 + 2] + a[12 + r] * b[c * 4 + 3];
    }
  }
  return out;
}

export function perspective(fovYDeg: number, aspect: number, near: number, far: number): GlMat4 {
  const f = 1.0 / Math.tan((fovYDeg * Math.PI) / 360.0);
  const m = new Float32Array(16);
  m[0] = f / aspect;
  m[5] = f;
  m[10] = (far + near) / (near - far);
  m[11] = -1;
  m[14] = (2 * far * near) / (near - far);
  return m;
}

type V3 = [number, number, number];

function sub(a: V3, b: V3): V3 {
  return [a[0] - b[0], a[1] - b[1], a[2] - b[2]];
}

function cross(a: V3, b: V3): V3 {
  return [a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]];
}

function norm(a: V3): V3 {
  const n = Math.hypot(a[0], a[1], a[2]) || 1;
  return [a[0] / n, a[1] / n, a[2] / n];
}

export function lookAt(eye: V3, target: V3, up: V3): GlMat4 {
  const z = norm(sub(eye, target));
  const x = norm(cross(up, z));
  const y = cross(z, x);
  const m = new Float32Array(16);
  m[0] = x[0]; m[4] = x[1]; m[8] = x[2];
  m[1] = y[0]; m[5] = y[1]; m[9] = y[2];
  m[2] = z[0]; m[6] = z[1]; m[10] = z[2];
  m[12] = -(x[0] * eye[0] + x[1] * eye[1] + x[2] * eye[2]);
  m[13] = -(y[0] * eye[0] + y[1] * eye[1] + y[2] * eye[2]);
  m[14] = -(z[0] * eye[0] + z[1] * eye[1] + z[2] * eye[2]);
  m[15] = 1;
  return m;
}

/** Affine frame with scaled basis vectors: columns [xs, ys, zvec, origin]. */
export function glFrame(x: V3, y: V3, z: V3, origin: V3): GlMat4 {
  const m = new Float32Array(16);
  m.set([x[0], x[1], x[2], 0, y[0], y[1], y[2], 0, z[0], z[1], z[2], 0, origin[0], origin[1], origin[2], 1]);
  return m;
}

/** Matrix placing a unit +z cylinder (base at origin) between two points. */
export function segmentFrame(p0: V3, p1: V3, radius: number): GlMat4 | null {
  const d = sub(p1, p0);
  const len = Math.hypot(d[0], d[1], d[2]);
  if (len < 1e-9) return null;
  const zn: V3 = [d[0] / len, d[1] / len, d[2] / len];
  const ref: V3 = Math.abs(zn[2]) < 0.9 ? [0, 0, 1] : [1, 0, 0];
  const x = norm(cross(ref, zn));
  const y = cross(zn, x);
  return glFrame(
    [x[0] * radius, x[1] * radius, x[2] * radius],
    [y[0] * radius, y[1] * radius, y[2] * radius],
    d,
    p0
  );
}

/**
 * Reproducible float math mirroring the producer's pose arithmetic.
 *
 * The backend builds every pose and FK chain from these exact operations
 * (Cody-Waite reduced sine/cosine with fixed Horner polynomials, and a naive
 * unrolled 4x4 product). Plain IEEE-754 mul/add round identically in Python
 * and JavaScript, so replaying the same inputs here reproduces recorded
 * poses bit for bit. Do not "simplify" with Math.sin/Math.cos or fused
 * operations: those differ from the producer in final ULPs.
 */

export type Mat4 = number[][]; // 4 rows of 4

const PIO2 = 1.5707963267948966;
const PIO2_1 = 1.5707963267341256; // high 33 bits of pi/2
const PIO2_1T = 6.077100506506192e-11; // pi/2 - PIO2_1

const S1 = -1.6666666666666666e-1;
const S2 = 8.3333333333333332e-3;
const S3 = -1.9841269841269841e-4;
const S4 = 2.7557319223985893e-6;
const S5 = -2.505210838544172e-8;
const S6 = 1.6059043836821613e-10;
const S7 = -7.6471637318198164e-13;

const C1 = -5.0e-1;
const C2 = 4.1666666666666664e-2;
const C3 = -1.3888888888888889e-3;
const C4 = 2.4801587301587302e-5;
const C5 = -2.7557319223985888e-7;
const C6 = 2.08767569878681e-9;
const C7 = -1.1470745597729725e-11;
const C8 = 4.7794773323873853e-14;

function sinPoly(r: number): number {
  const z = r * r;
  return r * (1.0 + z * (S1 + z * (S2 + z * (S3 + z * (S4 + z * (S5 + z * (S6 + z * S7)))))));
}

function cosPoly(r: number): number {
  const z = r * r;
  return 1.0 + z * (C1 + z * (C2 + z * (C3 + z * (C4 + z * (C5 + z * (C6 + z * (C7 + z * C8)))))));
}

/** sin(x) and cos(x), bit-identical to the producer for any finite |x| <= 1e6. */
export function portableSincos(x: number): [number, number] {
  if (!Number.isFinite(x)) {
    throw new Error("portableSincos: non-finite angle");
  }
  const n = Math.floor(x / PIO2 + 0.5);
  const r = x - n * PIO2_1 - n * PIO2_1T;
  let m = n % 4;
  if (m < 0) m += 4; // match Python's non-negative modulo
  const s = sinPoly(r);
  const c = cosPoly(r);
  if (m === 0) return [s, c];
  if (m === 1) return [c, -s];
  if (m === 2) return [-s, -c];
  return [-c, s];
}

/** Naive 4x4 product with fixed summation order (k = 0..3), matching the producer. */
export function mm4(a: Mat4, b: Mat4): Mat4 {
  const out: Mat4 = [];
  for (let i = 0; i < 4; i++) {
    const row: number[] = [];
    for (let j = 0; j < 4; j++) {
      row.push(a[i][0] * b[0][j] + a[i][1] * b[1][j] + a[i][2] * b[2][j] + a[i][3] * b[3][j]);
    }
    out.push(row);
  }
  return out;
}

export function eye4(): Mat4 {
  return [
    [1, 0, 0, 0],
    [0, 1, 0, 0],
    [0, 0, 1, 0],
    [0, 0, 0, 1],
  ];
}

/** Row-major 16-array -> 4x4 rows (document pose encoding). */
export function fromFlat(flat: number[]): Mat4 {
  return [flat.slice(0, 4), flat.slice(4, 8), flat.slice(8, 12), flat.slice(12, 16)];
}

export function toFlat(m: Mat4): number[] {
  return [...m[0], ...m[1], ...m[2], ...m[3]];
}

/** Primitive geometry used by the renderer. Conventions:
 *  box/ball centered at the local origin; cylinder/cone base at the origin,
 *  axis +z (so a wall or pedestrian sits on the floor when posed at z = 0).
 */

export interface MeshData {
  positions: Float32Array;
  normals: Float32Array;
  indices: Uint16Array;
}

function build(pos: number[], nor: number[], idx: number[]): MeshData {
  return {
    positions: new Float32Array(pos),
    normals: new Float32Array(nor),
    indices: new Uint16Array(idx),
  };
}

export function boxMesh(w: number, h: number, d: number): MeshData {
  const x = w / 2, y = h / 2, z = d / 2;
  const faces: [number[], number[][]][] = [
    [[1, 0, 0], [[x, -y, -z], [x, y, -z], [x, y, z], [x, -y, z]]],
    [[-1, 0, 0], [[-x, y, -z], [-x, -y, -z], [-x, -y, z], [-x, y, z]]],
    [[0, 1, 0], [[x, y, -z], [-x, y, -z], [-x, y, z], [x, y, z]]],
    [[0, -1, 0], [[-x, -y, -z], [x, -y, -z], [x, -y, z], [-x, -y, z]]],
    [[0, 0, 1], [[-x, -y, z], [x, -y, z], [x, y, z], [-x, y, z]]],
    [[0, 0, -1], [[x, -y, -z], [-x, -y, -z], [-x, y, -z], [x, y, -z]]],
  ];
  const pos: number[] = [], nor: number[] = [], idx: number[] = [];
  faces.forEach(([n, quad]) => {
    const base = pos.length / 3;
    quad.forEach((p) => {
      pos.push(...p);
      nor.push(...n);
    });
    idx.push(base, base + 1, base + 2, base, base + 2, base + 3);
  });
  return build(pos, nor, idx);
}

export function sphereMesh(r: number, segs = 24, rings = 16): MeshData {
  const pos: number[] = [], nor: number[] = [], idx: number[] = [];
  for (let i = 0; i <= rings; i++) {
    const phi = (i / rings) * Math.PI;
    for (let j = 0; j <= segs; j++) {
      const th = (j / segs) * 2 * Math.PI;
      const n = [Math.sin(phi) * Math.cos(th), Math.sin(phi) * Math.sin(th), Math.cos(phi)];
      nor.push(...n);
      pos.push(n[0] * r, n[1] * r, n[2] * r);
    }
  }
  for (let i = 0; i < rings; i++) {
    for (let j = 0; j < segs; j++) {
      const a = i * (segs + 1) + j;
      const b = a + segs + 1;
      idx.push(a, b, a + 1, b, b + 1, a + 1);
    }
  }
  return build(pos, nor, idx);
}

function lathe(r: number, h: number, rTop: number, segs: number): MeshData {
  // side wall plus bottom cap (and top cap when rTop > 0)
  const pos: number[] = [], nor: number[] = [], idx: number[] = [];
  const slope = Math.hypot(h, r - rTop);
  const nz = (r - rTop) / slope;
  const nr = h / slope;
  for (let j = 0; j <= segs; j++) {
    const th = (j / segs) * 2 * Math.PI;
    const c = Math.cos(th), s = Math.sin(th);
    pos.push(r * c, r * s, 0, rTop * c, rTop * s, h);
    nor.push(c * nr, s * nr, nz, c * nr, s * nr, nz);
  }
  for (let j = 0; j < segs; j++) {
    const a = j * 2;
    idx.push(a, a + 2, a + 1, a + 1, a + 2, a + 3);
  }
  const caps: [number, number, number][] = [[0, -1, r]];
  if (rTop > 0) caps.push([h, 1, rTop]);
  caps.forEach(([z, nzc, rc]) => {
    const center = pos.length / 3;
    pos.push(0, 0, z);
    nor.push(0, 0, nzc);
    for (let j = 0; j <= segs; j++) {
      const th = (j / segs) * 2 * Math.PI;
      pos.push(rc * Math.cos(th), rc * Math.sin(th), z);
      nor.push(0, 0, nzc);
    }
    for (let j = 0; j < segs; j++) {
      if (nzc > 0) idx.push(center, center + 1 + j, center + 2 + j);
      else idx.push(center, center + 2 + j, center + 1 + j);
    }
  });
  return build(pos, nor, idx);
}

export function cylinderMesh(r: number, h: number, segs = 28): MeshData {
  return lathe(r, h, r, segs);
}

export function coneMesh(r: number, h: number, segs = 28): MeshData {
  return lathe(r, h, 0, segs);
}

export interface LineData {
  positions: Float32Array;
  colors: Float32Array;
}

export function axesLines(length: number): LineData {
  const l = length;
  return {
    positions: new Float32Array([0, 0, 0, l, 0, 0, 0, 0, 0, 0, l, 0, 0, 0, 0, 0, 0, l]),
    colors: new Float32Array([
      0.95, 0.3, 0.25, 0.95, 0.3, 0.25,
      0.35, 0.85, 0.35, 0.35, 0.85, 0.35,
      0.3, 0.55, 0.95, 0.3, 0.55, 0.95,
    ]),
  };
}

export function gridLines(extent = 5, step = 1): LineData {
  const pos: number[] = [], col: number[] = [];
  for (let i = -extent; i <= extent; i += step) {
    const major = i === 0 ? 0.45 : 0.28;
    pos.push(i, -extent, 0, i, extent, 0, -extent, i, 0, extent, i, 0);
    for (let k = 0; k < 4; k++) col.push(major, major, major + 0.03);
  }
  return { positions: new Float32Array(pos), colors: new Float32Array(col) };
}

export function pointCloudLines(points: number[][], color: [number, number, number]): LineData {
  const pos: number[] = [], col: number[] = [];
  points.forEach((p) => {
    pos.push(p[0], p[1], p[2]);
    col.push(...color);
  });
  return { positions: new Float32Array(pos), colors: new Float32Array(col) };
}

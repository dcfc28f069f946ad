/** Document parsing and validation; load errors surface as a banner, never a partial scene. */

import { DOC_VERSION, SceneDoc } from "./types";

export class DocumentError extends Error {}

function fail(path: string, message: string): never {
  throw new DocumentError(`${path}: ${message}`);
}

function need(cond: boolean, path: string, message: string): void {
  if (!cond) fail(path, message);
}

function isNum(v: unknown): v is number {
  return typeof v === "number" && Number.isFinite(v);
}

function checkPose(flat: unknown, path: string): void {
  need(Array.isArray(flat) && flat.length === 16 && flat.every(isNum), path, "expected 16 floats");
  const m = flat as number[];
  need(
    m[12] === 0 && m[13] === 0 && m[14] === 0 && m[15] === 1,
    path,
    "pose bottom row must be (0,0,0,1)"
  );
}

function checkVec(v: unknown, n: number, path: string): void {
  need(Array.isArray(v) && v.length === n && v.every(isNum), path, `expected ${n} numbers`);
}

function checkMaterial(m: any, path: string): void {
  need(m && typeof m === "object", path, "expected a material");
  checkVec(m.color, 3, `${path}.color`);
  need(isNum(m.metalness) && isNum(m.roughness) && isNum(m.opacity), path, "bad material scalars");
}

function checkObject(o: any, path: string): void {
  need(o && typeof o === "object", path, "expected an object entry");
  need(typeof o.id === "string" && o.id.length > 0, `${path}.id`, "expected a non-empty id");
  checkPose(o.initial_pose, `${path}.initial_pose`);
  checkMaterial(o.material, `${path}.material`);
  const s = o.shape;
  need(s && typeof s === "object" && typeof s.kind === "string", `${path}.shape`, "expected a shape");
  switch (s.kind) {
    case "box":
      checkVec(s.size, 3, `${path}.shape.size`);
      break;
    case "ball":
      need(isNum(s.radius) && s.radius > 0, `${path}.shape.radius`, "expected a positive radius");
      break;
    case "cylinder":
    case "cone":
      need(isNum(s.radius) && s.radius > 0, `${path}.shape.radius`, "expected a positive radius");
      need(isNum(s.height) && s.height > 0, `${path}.shape.height`, "expected a positive height");
      break;
    case "frame":
      need(isNum(s.axis_length) && s.axis_length > 0, `${path}.shape.axis_length`, "expected a length");
      break;
    case "point_cloud":
      need(Array.isArray(s.points), `${path}.shape.points`, "expected points");
      s.points.forEach((p: unknown, i: number) => checkVec(p, 3, `${path}.shape.points[${i}]`));
      need(isNum(s.point_size) && s.point_size > 0, `${path}.shape.point_size`, "expected a size");
      break;
    case "group":
      need(Array.isArray(s.children), `${path}.shape.children`, "expected children");
      need(
        Array.isArray(s.offsets) && s.offsets.length === s.children.length,
        `${path}.shape.offsets`,
        "expected one offset per child"
      );
      s.children.forEach((c: unknown, i: number) => checkObject(c, `${path}.shape.children[${i}]`));
      s.offsets.forEach((o: unknown, i: number) => checkPose(o, `${path}.shape.offsets[${i}]`));
      break;
    default:
      fail(`${path}.shape.kind`, `unknown shape kind '${s.kind}'`);
  }
}

function checkRobot(r: any, path: string): void {
  need(r && typeof r === "object", path, "expected a robot entry");
  need(typeof r.id === "string" && r.id.length > 0, `${path}.id`, "expected a non-empty id");
  checkMaterial(r.material, `${path}.material`);
  const m = r.model;
  need(m && typeof m === "object", `${path}.model`, "expected a model");
  checkPose(m.base, `${path}.model.base`);
  checkPose(m.tool, `${path}.model.tool`);
  need(Array.isArray(m.links) && m.links.length > 0, `${path}.model.links`, "expected links");
  m.links.forEach((l: any, i: number) => {
    const lp = `${path}.model.links[${i}]`;
    need(l && typeof l === "object", lp, "expected a link");
    need(l.kind === "revolute" || l.kind === "prismatic", `${lp}.kind`, "unknown joint kind");
    for (const f of ["theta_off", "d_off", "a", "alpha", "q_min", "q_max"]) {
      need(isNum(l[f]), `${lp}.${f}`, "expected a number");
    }
    need(l.q_min < l.q_max, lp, "q_min must be below q_max");
  });
  checkVec(m.q, m.links.length, `${path}.model.q`);
}

/** Parse and validate a document payload; throws DocumentError on violation. */
export function parseDocument(raw: unknown): SceneDoc {
  let payload: any = raw;
  if (typeof raw === "string") {
    try {
      payload = JSON.parse(raw);
    } catch (exc) {
      throw new DocumentError(`not valid JSON: ${(exc as Error).message}`);
    }
  }
  need(payload && typeof payload === "object", "", "document root must be an object");
  if (payload._version !== DOC_VERSION) {
    fail("_version", `unsupported version '${payload._version}'`);
  }
  need(isNum(payload.ambient_light_intensity), "ambient_light_intensity", "expected a number");
  checkVec(payload.background, 3, "background");
  need(payload.camera && typeof payload.camera === "object", "camera", "expected a camera");
  checkVec(payload.camera.position, 3, "camera.position");
  checkVec(payload.camera.look_at, 3, "camera.look_at");
  checkVec(payload.camera.up, 3, "camera.up");
  need(isNum(payload.camera.fov), "camera.fov", "expected a number");
  need(isNum(payload.duration) && payload.duration >= 0, "duration", "expected a duration");
  need(typeof payload.grid_visible === "boolean", "grid_visible", "expected a boolean");
  need(
    payload.viewport && isNum(payload.viewport.width) && isNum(payload.viewport.height),
    "viewport",
    "expected width/height"
  );
  need(Array.isArray(payload.objects), "objects", "expected an array");
  payload.objects.forEach((o: unknown, i: number) => checkObject(o, `objects[${i}]`));
  need(Array.isArray(payload.robots), "robots", "expected an array");
  payload.robots.forEach((r: unknown, i: number) => checkRobot(r, `robots[${i}]`));
  need(Array.isArray(payload.tracks), "tracks", "expected an array");
  const ids = new Set<string>([
    ...payload.objects.map((o: any) => o.id),
    ...payload.robots.map((r: any) => r.id),
  ]);
  payload.tracks.forEach((tr: any, i: number) => {
    const tp = `tracks[${i}]`;
    need(tr && typeof tr === "object", tp, "expected a track");
    need(ids.has(tr.id), `${tp}.id`, `track references unknown id '${tr.id}'`);
    need(tr.kind === "pose" || tr.kind === "config", `${tp}.kind`, "unknown track kind");
    need(Array.isArray(tr.keys), `${tp}.keys`, "expected keys");
    let prev = -Infinity;
    tr.keys.forEach((k: any, j: number) => {
      const kp = `${tp}.keys[${j}]`;
      need(Array.isArray(k) && k.length === 2 && isNum(k[0]), kp, "expected [t, values]");
      need(k[0] > prev, `${kp}[0]`, "keyframe times must increase");
      need(k[0] <= payload.duration, `${kp}[0]`, "keyframe beyond duration");
      prev = k[0];
      if (tr.kind === "pose") checkPose(k[1], `${kp}[1]`);
      else need(Array.isArray(k[1]) && k[1].every(isNum), `${kp}[1]`, "expected numbers");
    });
  });
  return payload as SceneDoc;
}

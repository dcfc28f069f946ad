/** Maps a scene document onto renderer nodes and repositions them per frame. */

import { chainFrames } from "./fk";
import { glFromPose, segmentFrame } from "./mat4";
import {
  axesLines,
  boxMesh,
  coneMesh,
  cylinderMesh,
  gridLines,
  pointCloudLines,
  sphereMesh,
} from "./mesh";
import { Mat4, eye4, fromFlat, mm4 } from "./portable";
import { NodeHandle, Renderer } from "./renderer";
import { FrameMsg, MaterialDoc, ObjectDoc, RobotDoc, SceneDoc } from "./types";

const JOINT_RADIUS = 0.034;
const LIMB_RADIUS = 0.024;

function rgba(m: MaterialDoc): [number, number, number, number] {
  return [m.color[0] / 255, m.color[1] / 255, m.color[2] / 255, m.opacity];
}

interface ObjectLeaf {
  node: NodeHandle;
  topId: string;
  offset: Mat4 | null; // composed group offset, null for top-level leaves
}

interface RobotParts {
  robot: RobotDoc;
  balls: NodeHandle[];
  limbs: NodeHandle[];
  eeAxes: NodeHandle;
}

export type PoseGetter = (id: string) => Mat4 | undefined;

export class SceneView {
  private leaves: ObjectLeaf[] = [];
  private robots: RobotParts[] = [];

  constructor(private renderer: Renderer, readonly doc: SceneDoc) {
    renderer.background = [
      doc.background[0] / 255,
      doc.background[1] / 255,
      doc.background[2] / 255,
    ];
    renderer.ambient = Math.min(1.0, 0.3 * doc.ambient_light_intensity);
    if (doc.grid_visible) renderer.addLines(gridLines(), "lines");
    for (const obj of doc.objects) this.buildObject(obj, obj.id, null);
    for (const robot of doc.robots) this.buildRobot(robot);
  }

  private buildObject(obj: ObjectDoc, topId: string, offset: Mat4 | null): void {
    const s = obj.shape;
    const color = rgba(obj.material);
    let node: NodeHandle | null = null;
    switch (s.kind) {
      case "box":
        node = this.renderer.addMesh(boxMesh(s.size[0], s.size[1], s.size[2]), color);
        break;
      case "ball":
        node = this.renderer.addMesh(sphereMesh(s.radius), color);
        break;
      case "cylinder":
        node = this.renderer.addMesh(cylinderMesh(s.radius, s.height), color);
        break;
      case "cone":
        node = this.renderer.addMesh(coneMesh(s.radius, s.height), color);
        break;
      case "frame":
        node = this.renderer.addLines(axesLines(s.axis_length), "lines");
        break;
      case "point_cloud":
        node = this.renderer.addLines(
          pointCloudLines(s.points, [color[0], color[1], color[2]]),
          "points",
          Math.max(2, s.point_size * 200)
        );
        break;
      case "group":
        s.children.forEach((child, i) => {
          const childOffset = fromFlat(s.offsets[i]);
          const composed = offset ? mm4(offset, childOffset) : childOffset;
          this.buildObject(child, topId, composed);
        });
        return;
    }
    if (node) this.leaves.push({ node, topId, offset });
  }

  private buildRobot(robot: RobotDoc): void {
    const color = rgba(robot.material);
    const n = robot.model.links.length;
    const balls: NodeHandle[] = [];
    const limbs: NodeHandle[] = [];
    for (let i = 0; i < n; i++) {
      balls.push(this.renderer.addMesh(sphereMesh(JOINT_RADIUS), color));
      limbs.push(this.renderer.addMesh(cylinderMesh(1, 1, 20), color));
    }
    const eeAxes = this.renderer.addLines(axesLines(0.12), "lines");
    this.robots.push({ robot, balls, limbs, eeAxes });
  }

  /** Reposition every node from a pose lookup (“<rid>/link<i>” ids for robots). */
  update(get: PoseGetter): void {
    for (const leaf of this.leaves) {
      const top = get(leaf.topId);
      if (!top) continue;
      const world = leaf.offset ? mm4(top, leaf.offset) : top;
      leaf.node.model = glFromPose(world);
    }
    robots: for (const parts of this.robots) {
      const rid = parts.robot.id;
      const n = parts.robot.model.links.length;
      const frames: Mat4[] = [];
      for (let i = 0; i <= n; i++) {
        const f = get(`${rid}/link${i}`);
        if (!f) continue robots;
        frames.push(f);
      }
      const ee = get(`${rid}/ee`) ?? frames[n];
      for (let i = 0; i < n; i++) {
        const p0: [number, number, number] = [frames[i][0][3], frames[i][1][3], frames[i][2][3]];
        const p1: [number, number, number] = [
          frames[i + 1][0][3],
          frames[i + 1][1][3],
          frames[i + 1][2][3],
        ];
        const ball = eye4();
        ball[0][3] = p0[0];
        ball[1][3] = p0[1];
        ball[2][3] = p0[2];
        parts.balls[i].model = glFromPose(ball);
        const seg = segmentFrame(p0, p1, LIMB_RADIUS);
        if (seg) {
          parts.limbs[i].model = seg;
          parts.limbs[i].visible = true;
        } else {
          parts.limbs[i].visible = false;
        }
      }
      parts.eeAxes.model = glFromPose(ee);
    }
  }

  /** Pose lookup for a live frame: object poses as sent, robots via local FK. */
  frameGetter(frame: FrameMsg): PoseGetter {
    const poses = new Map<string, Mat4>(frame.poses.map(([id, flat]) => [id, fromFlat(flat)]));
    for (const [rid, q] of frame.configs) {
      const robot = this.doc.robots.find((r) => r.id === rid);
      if (!robot) continue;
      const frames = chainFrames(robot, q);
      for (let i = 0; i < frames.length - 1; i++) poses.set(`${rid}/link${i}`, frames[i]);
      poses.set(`${rid}/ee`, frames[frames.length - 1]);
    }
    return (id) => poses.get(id);
  }
}

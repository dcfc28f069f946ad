/**
 * Forward kinematics over document DH tables.
 *
 * Mirrors the producer's chain evaluation exactly (same closed-form link
 * transform, same multiplication order, portable trig) so q-track playback
 * reproduces recorded per-link poses bit for bit.
 */

import { Mat4, eye4, fromFlat, mm4, portableSincos } from "./portable";
import { LinkDoc, RobotDoc } from "./types";

/** Link transform Rotz(theta) Transz(d) Transx(a) Rotx(alpha). */
export function linkTransform(link: LinkDoc, q: number): Mat4 {
  let theta: number;
  let d: number;
  if (link.kind === "revolute") {
    theta = link.theta_off + q;
    d = link.d_off;
  } else {
    theta = link.theta_off;
    d = link.d_off + q;
  }
  const [st, ct] = portableSincos(theta);
  const [sa, ca] = portableSincos(link.alpha);
  const a = link.a;
  return [
    [ct, -st * ca, st * sa, a * ct],
    [st, ct * ca, -ct * sa, a * st],
    [0.0, sa, ca, d],
    [0.0, 0.0, 0.0, 1.0],
  ];
}

/** All chain frames [base, link1, ..., linkN, end-effector]. */
export function chainFrames(robot: RobotDoc, q: number[]): Mat4[] {
  const base = fromFlat(robot.model.base);
  const frames: Mat4[] = [base];
  let t = base;
  for (let i = 0; i < robot.model.links.length; i++) {
    t = mm4(t, linkTransform(robot.model.links[i], q[i]));
    frames.push(t);
  }
  frames.push(mm4(t, fromFlat(robot.model.tool)));
  return frames;
}

export function clampConfig(robot: RobotDoc, q: number[]): number[] {
  return q.map((v, i) => {
    const l = robot.model.links[i];
    return Math.min(Math.max(v, l.q_min), l.q_max);
  });
}

export function identityPose(): Mat4 {
  return eye4();
}

/**
 * Sample-and-hold playback over document tracks, identical in semantics to
 * the producer: the pose at time t is the latest keyframe at or before t,
 * the initial pose before the first key; robots expand to per-link frames
 * named "<id>/link<i>" plus "<id>/ee".
 */

import { chainFrames } from "./fk";
import { Mat4, fromFlat } from "./portable";
import { SceneDoc, TrackDoc } from "./types";

/** Latest key value at or before t, or null before the first key. */
export function valueAt(track: TrackDoc, t: number): number[] | null {
  let lo = 0;
  let hi = track.keys.length;
  while (lo < hi) {
    const mid = (lo + hi) >> 1;
    if (track.keys[mid][0] <= t) lo = mid + 1;
    else hi = mid;
  }
  return lo ? track.keys[lo - 1][1] : null;
}

export function robotSampleIds(doc: SceneDoc, robotId: string): string[] {
  const robot = doc.robots.find((r) => r.id === robotId);
  if (!robot) return [];
  const ids: string[] = [];
  for (let i = 0; i <= robot.model.links.length; i++) ids.push(`${robotId}/link${i}`);
  ids.push(`${robotId}/ee`);
  return ids;
}

/** World poses of every object and robot frame at time t. */
export function samplePoses(doc: SceneDoc, t: number): Map<string, Mat4> {
  if (!(t >= 0 && t <= doc.duration)) {
    throw new Error(`sample time ${t} outside [0, ${doc.duration}]`);
  }
  const tracks = new Map<string, TrackDoc>(doc.tracks.map((tr) => [tr.id, tr]));
  const out = new Map<string, Mat4>();
  for (const obj of doc.objects) {
    const track = tracks.get(obj.id);
    const value = track ? valueAt(track, t) : null;
    out.set(obj.id, fromFlat(value ?? obj.initial_pose));
  }
  for (const robot of doc.robots) {
    const track = tracks.get(robot.id);
    const value = track ? valueAt(track, t) : null;
    const q = value ?? robot.model.q;
    const frames = chainFrames(robot, q);
    for (let i = 0; i < frames.length - 1; i++) {
      out.set(`${robot.id}/link${i}`, frames[i]);
    }
    out.set(`${robot.id}/ee`, frames[frames.length - 1]);
  }
  return out;
}

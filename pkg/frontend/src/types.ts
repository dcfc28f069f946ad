/** Scene-document schema ("kinesim-doc/1") and live-protocol message types. */

export const DOC_VERSION = "kinesim-doc/1";

export interface MaterialDoc {
  color: [number, number, number];
  metalness: number;
  roughness: number;
  opacity: number;
}

export type ShapeDoc =
  | { kind: "box"; size: [number, number, number] }
  | { kind: "ball"; radius: number }
  | { kind: "cylinder"; radius: number; height: number }
  | { kind: "cone"; radius: number; height: number }
  | { kind: "frame"; axis_length: number }
  | { kind: "point_cloud"; points: number[][]; point_size: number }
  | { kind: "group"; children: ObjectDoc[]; offsets: number[][] };

export interface ObjectDoc {
  id: string;
  initial_pose: number[]; // 16, row-major
  material: MaterialDoc;
  shape: ShapeDoc;
}

export interface LinkDoc {
  theta_off: number;
  d_off: number;
  a: number;
  alpha: number;
  kind: "revolute" | "prismatic";
  q_min: number;
  q_max: number;
}

export interface RobotDoc {
  id: string;
  link_style: string;
  material: MaterialDoc;
  model: {
    name: string;
    base: number[];
    tool: number[];
    links: LinkDoc[];
    q: number[];
    inertias: { mass: number; com: number[]; inertia: number[] }[] | null;
  };
}

export interface TrackDoc {
  id: string;
  kind: "pose" | "config";
  keys: [number, number[]][];
}

export interface SceneDoc {
  _version: string;
  ambient_light_intensity: number;
  background: [number, number, number];
  camera: {
    position: [number, number, number];
    look_at: [number, number, number];
    up: [number, number, number];
    fov: number;
  };
  duration: number;
  grid_visible: boolean;
  objects: ObjectDoc[];
  robots: RobotDoc[];
  tracks: TrackDoc[];
  viewport: { width: number; height: number };
}

// live protocol ------------------------------------------------------------

export interface HelloMsg {
  type: "hello";
  doc: SceneDoc;
}

export interface FrameMsg {
  type: "frame";
  t: number;
  poses: [string, number[]][];
  configs: [string, number[]][];
}

export interface AckMsg {
  type: "ack";
  id: number;
  ok: boolean;
}

export interface ErrorMsg {
  type: "error";
  id: number | null;
  message: string;
}

export type ServerMsg = HelloMsg | FrameMsg | AckMsg | ErrorMsg;

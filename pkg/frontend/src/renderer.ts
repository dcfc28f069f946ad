/** Minimal WebGL renderer: lambert-shaded meshes plus line/point overlays. */

import { GlMat4, glIdentity, lookAt, perspective } from "./mat4";
import { LineData, MeshData } from "./mesh";

const MESH_VS = `
attribute vec3 aPos;
attribute vec3 aNormal;
uniform mat4 uProj, uView, uModel;
varying vec3 vNormal;
void main() {
  vNormal = mat3(uModel) * aNormal;
  gl_Position = uProj * uView * uModel * vec4(aPos, 1.0);
}`;

const MESH_FS = `
precision mediump float;
uniform vec4 uColor;
uniform float uAmbient;
varying vec3 vNormal;
void main() {
  vec3 n = normalize(vNormal);
  vec3 l1 = normalize(vec3(0.45, 0.3, 0.84));
  vec3 l2 = normalize(vec3(-0.5, -0.6, 0.2));
  float diff = 0.62 * max(dot(n, l1), 0.0) + 0.25 * max(dot(n, l2), 0.0);
  float lum = clamp(diff + uAmbient, 0.0, 1.25);
  gl_FragColor = vec4(uColor.rgb * lum, uColor.a);
}`;

const LINE_VS = `
attribute vec3 aPos;
attribute vec3 aColor;
uniform mat4 uProj, uView, uModel;
uniform float uPointSize;
varying vec3 vColor;
void main() {
  vColor = aColor;
  gl_Position = uProj * uView * uModel * vec4(aPos, 1.0);
  gl_PointSize = uPointSize;
}`;

const LINE_FS = `
precision mediump float;
varying vec3 vColor;
void main() { gl_FragColor = vec4(vColor, 1.0); }`;

interface MeshNode {
  kind: "mesh";
  vbo: WebGLBuffer;
  nbo: WebGLBuffer;
  ibo: WebGLBuffer;
  count: number;
  color: [number, number, number, number];
  model: GlMat4;
  visible: boolean;
}

interface LineNode {
  kind: "lines" | "points";
  vbo: WebGLBuffer;
  cbo: WebGLBuffer;
  count: number;
  model: GlMat4;
  pointSize: number;
  visible: boolean;
}

export type NodeHandle = MeshNode | LineNode;

function compile(gl: WebGLRenderingContext, vsSrc: string, fsSrc: string): WebGLProgram {
  const mk = (type: number, src: string) => {
    const sh = gl.createShader(type)!;
    gl.shaderSource(sh, src);
    gl.compileShader(sh);
    if (!gl.getShaderParameter(sh, gl.COMPILE_STATUS)) {
      throw new Error(`shader: ${gl.getShaderInfoLog(sh)}`);
    }
    return sh;
  };
  const prog = gl.createProgram()!;
  gl.attachShader(prog, mk(gl.VERTEX_SHADER, vsSrc));
  gl.attachShader(prog, mk(gl.FRAGMENT_SHADER, fsSrc));
  gl.linkProgram(prog);
  if (!gl.getProgramParameter(prog, gl.LINK_STATUS)) {
    throw new Error(`program: ${gl.getProgramInfoLog(prog)}`);
  }
  return prog;
}

export class Renderer {
  readonly gl: WebGLRenderingContext;
  private meshProg: WebGLProgram;
  private lineProg: WebGLProgram;
  private nodes: NodeHandle[] = [];
  background: [number, number, number] = [0.07, 0.08, 0.1];
  ambient = 0.35;
  private proj: GlMat4 = glIdentity();
  private view: GlMat4 = glIdentity();
  private fovDeg = 50;

  constructor(private canvas: HTMLCanvasElement) {
    const gl = canvas.getContext("webgl", { antialias: true });
    if (!gl) throw new Error("WebGL is not available in this browser");
    this.gl = gl;
    this.meshProg = compile(gl, MESH_VS, MESH_FS);
    this.lineProg = compile(gl, LINE_VS, LINE_FS);
    gl.enable(gl.DEPTH_TEST);
    gl.enable(gl.BLEND);
    gl.blendFunc(gl.SRC_ALPHA, gl.ONE_MINUS_SRC_ALPHA);
  }

  addMesh(mesh: MeshData, color: [number, number, number, number]): MeshNode {
    const gl = this.gl;
    const node: MeshNode = {
      kind: "mesh",
      vbo: gl.createBuffer()!,
      nbo: gl.createBuffer()!,
      ibo: gl.createBuffer()!,
      count: mesh.indices.length,
      color,
      model: glIdentity(),
      visible: true,
    };
    gl.bindBuffer(gl.ARRAY_BUFFER, node.vbo);
    gl.bufferData(gl.ARRAY_BUFFER, mesh.positions, gl.STATIC_DRAW);
    gl.bindBuffer(gl.ARRAY_BUFFER, node.nbo);
    gl.bufferData(gl.ARRAY_BUFFER, mesh.normals, gl.STATIC_DRAW);
    gl.bindBuffer(gl.ELEMENT_ARRAY_BUFFER, node.ibo);
    gl.bufferData(gl.ELEMENT_ARRAY_BUFFER, mesh.indices, gl.STATIC_DRAW);
    this.nodes.push(node);
    return node;
  }

  addLines(lines: LineData, mode: "lines" | "points", pointSize = 4): LineNode {
    const gl = this.gl;
    const node: LineNode = {
      kind: mode,
      vbo: gl.createBuffer()!,
      cbo: gl.createBuffer()!,
      count: lines.positions.length / 3,
      model: glIdentity(),
      pointSize,
      visible: true,
    };
    gl.bindBuffer(gl.ARRAY_BUFFER, node.vbo);
    gl.bufferData(gl.ARRAY_BUFFER, lines.positions, gl.STATIC_DRAW);
    gl.bindBuffer(gl.ARRAY_BUFFER, node.cbo);
    gl.bufferData(gl.ARRAY_BUFFER, lines.colors, gl.STATIC_DRAW);
    this.nodes.push(node);
    return node;
  }

  setCamera(eye: [number, number, number], target: [number, number, number], up: [number, number, number], fovDeg?: number): void {
    if (fovDeg) this.fovDeg = fovDeg;
    this.view = lookAt(eye, target, up);
    const aspect = this.canvas.width / Math.max(1, this.canvas.height);
    this.proj = perspective(this.fovDeg, aspect, 0.01, 200.0);
  }

  resize(width: number, height: number): void {
    this.canvas.width = width;
    this.canvas.height = height;
    this.gl.viewport(0, 0, width, height);
  }

  /** Drop every node and release its buffers (document reload). */
  clear(): void {
    const gl = this.gl;
    for (const node of this.nodes) {
      gl.deleteBuffer(node.vbo);
      if (node.kind === "mesh") {
        gl.deleteBuffer(node.nbo);
        gl.deleteBuffer(node.ibo);
      } else {
        gl.deleteBuffer(node.cbo);
      }
    }
    this.nodes = [];
  }

  render(): void {
    const gl = this.gl;
    gl.clearColor(this.background[0], this.background[1], this.background[2], 1.0);
    gl.clear(gl.COLOR_BUFFER_BIT | gl.DEPTH_BUFFER_BIT);

    gl.useProgram(this.meshProg);
    const mp = (n: string) => gl.getUniformLocation(this.meshProg, n);
    gl.uniformMatrix4fv(mp("uProj"), false, this.proj);
    gl.uniformMatrix4fv(mp("uView"), false, this.view);
    gl.uniform1f(mp("uAmbient"), this.ambient);
    const aPos = gl.getAttribLocation(this.meshProg, "aPos");
    const aNormal = gl.getAttribLocation(this.meshProg, "aNormal");
    gl.enableVertexAttribArray(aPos);
    gl.enableVertexAttribArray(aNormal);
    const meshes = this.nodes.filter((n): n is MeshNode => n.kind === "mesh" && n.visible);
    meshes.sort((a, b) => Number(a.color[3] < 1) - Number(b.color[3] < 1));
    for (const node of meshes) {
      gl.uniformMatrix4fv(mp("uModel"), false, node.model);
      gl.uniform4fv(mp("uColor"), node.color);
      gl.depthMask(node.color[3] >= 1);
      gl.bindBuffer(gl.ARRAY_BUFFER, node.vbo);
      gl.vertexAttribPointer(aPos, 3, gl.FLOAT, false, 0, 0);
      gl.bindBuffer(gl.ARRAY_BUFFER, node.nbo);
      gl.vertexAttribPointer(aNormal, 3, gl.FLOAT, false, 0, 0);
      gl.bindBuffer(gl.ELEMENT_ARRAY_BUFFER, node.ibo);
      gl.drawElements(gl.TRIANGLES, node.count, gl.UNSIGNED_SHORT, 0);
    }
    gl.depthMask(true);
    gl.disableVertexAttribArray(aPos);
    gl.disableVertexAttribArray(aNormal);

    gl.useProgram(this.lineProg);
    const lp = (n: string) => gl.getUniformLocation(this.lineProg, n);
    gl.uniformMatrix4fv(lp("uProj"), false, this.proj);
    gl.uniformMatrix4fv(lp("uView"), false, this.view);
    const lPos = gl.getAttribLocation(this.lineProg, "aPos");
    const lCol = gl.getAttribLocation(this.lineProg, "aColor");
    gl.enableVertexAttribArray(lPos);
    gl.enableVertexAttribArray(lCol);
    for (const node of this.nodes) {
      if ((node.kind !== "lines" && node.kind !== "points") || !node.visible) continue;
      gl.uniformMatrix4fv(lp("uModel"), false, node.model);
      gl.uniform1f(lp("uPointSize"), node.pointSize);
      gl.bindBuffer(gl.ARRAY_BUFFER, node.vbo);
      gl.vertexAttribPointer(lPos, 3, gl.FLOAT, false, 0, 0);
      gl.bindBuffer(gl.ARRAY_BUFFER, node.cbo);
      gl.vertexAttribPointer(lCol, 3, gl.FLOAT, false, 0, 0);
      gl.lineWidth(1);
      gl.drawArrays(node.kind === "lines" ? gl.LINES : gl.POINTS, 0, node.count);
    }
    gl.disableVertexAttribArray(lPos);
    gl.disableVertexAttribArray(lCol);
  }
}

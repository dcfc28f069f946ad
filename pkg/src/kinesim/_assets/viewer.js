"use strict";
(() => {
  // src/portable.ts
  var PIO2 = 1.5707963267948966;
  var PIO2_1 = 1.5707963267341256;
  var PIO2_1T = 6077100506506192e-26;
  var S1 = -0.16666666666666666;
  var S2 = 0.008333333333333333;
  var S3 = -1984126984126984e-19;
  var S4 = 27557319223985893e-22;
  var S5 = -2505210838544172e-23;
  var S6 = 16059043836821613e-26;
  var S7 = -7647163731819816e-28;
  var C1 = -0.5;
  var C2 = 0.041666666666666664;
  var C3 = -0.001388888888888889;
  var C4 = 248015873015873e-19;
  var C5 = -2755731922398589e-22;
  var C6 = 208767569878681e-23;
  var C7 = -11470745597729725e-27;
  var C8 = 4779477332387385e-29;
  function sinPoly(r) {
    const z = r * r;
    return r * (1 + z * (S1 + z * (S2 + z * (S3 + z * (S4 + z * (S5 + z * (S6 + z * S7)))))));
  }
  function cosPoly(r) {
    const z = r * r;
    return 1 + z * (C1 + z * (C2 + z * (C3 + z * (C4 + z * (C5 + z * (C6 + z * (C7 + z * C8)))))));
  }
  function portableSincos(x) {
    if (!Number.isFinite(x)) {
      throw new Error("portableSincos: non-finite angle");
    }
    const n = Math.floor(x / PIO2 + 0.5);
    const r = x - n * PIO2_1 - n * PIO2_1T;
    let m = n % 4;
    if (m < 0) m += 4;
    const s = sinPoly(r);
    const c = cosPoly(r);
    if (m === 0) return [s, c];
    if (m === 1) return [c, -s];
    if (m === 2) return [-s, -c];
    return [-c, s];
  }
  function mm4(a, b) {
    const out = [];
    for (let i = 0; i < 4; i++) {
      const row = [];
      for (let j = 0; j < 4; j++) {
        row.push(a[i][0] * b[0][j] + a[i][1] * b[1][j] + a[i][2] * b[2][j] + a[i][3] * b[3][j]);
      }
      out.push(row);
    }
    return out;
  }
  function eye4() {
    return [
      [1, 0, 0, 0],
      [0, 1, 0, 0],
      [0, 0, 1, 0],
      [0, 0, 0, 1]
    ];
  }
  function fromFlat(flat) {
    return [flat.slice(0, 4), flat.slice(4, 8), flat.slice(8, 12), flat.slice(12, 16)];
  }

  // src/fk.ts
  function linkTransform(link, q) {
    let theta;
    let d;
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
      [0, sa, ca, d],
      [0, 0, 0, 1]
    ];
  }
  function chainFrames(robot, q) {
    const base = fromFlat(robot.model.base);
    const frames = [base];
    let t = base;
    for (let i = 0; i < robot.model.links.length; i++) {
      t = mm4(t, linkTransform(robot.model.links[i], q[i]));
      frames.push(t);
    }
    frames.push(mm4(t, fromFlat(robot.model.tool)));
    return frames;
  }
  function clampConfig(robot, q) {
    return q.map((v, i) => {
      const l = robot.model.links[i];
      return Math.min(Math.max(v, l.q_min), l.q_max);
    });
  }

  // src/live.ts
  var LiveClient = class {
    constructor(callbacks, factory) {
      this.callbacks = callbacks;
      this.factory = factory;
      this.socket = null;
      this.nextId = 1;
      this.pending = /* @__PURE__ */ new Map();
      this.connected = false;
    }
    connect(url) {
      var _a;
      const make = (_a = this.factory) != null ? _a : (u) => new WebSocket(u);
      return new Promise((resolve, reject) => {
        let socket;
        try {
          socket = make(url);
        } catch (exc) {
          reject(exc);
          return;
        }
        this.socket = socket;
        socket.onopen = () => {
          this.connected = true;
          resolve();
        };
        socket.onerror = (ev) => {
          if (!this.connected) reject(new Error("websocket connection failed"));
        };
        socket.onclose = () => {
          var _a2, _b;
          const wasConnected = this.connected;
          this.connected = false;
          this.socket = null;
          for (const resolver of this.pending.values()) {
            resolver({ type: "error", id: null, message: "connection closed" });
          }
          this.pending.clear();
          if (wasConnected) (_b = (_a2 = this.callbacks).onClose) == null ? void 0 : _b.call(_a2);
        };
        socket.onmessage = (ev) => {
          var _a2, _b, _c, _d, _e, _f;
          let msg;
          try {
            msg = JSON.parse(String(ev.data));
          } catch {
            return;
          }
          if (msg.type === "hello") {
            (_b = (_a2 = this.callbacks).onHello) == null ? void 0 : _b.call(_a2, msg.doc);
          } else if (msg.type === "frame") {
            (_d = (_c = this.callbacks).onFrame) == null ? void 0 : _d.call(_c, msg);
          } else if (msg.type === "ack" || msg.type === "error") {
            (_f = (_e = this.callbacks).onReply) == null ? void 0 : _f.call(_e, msg);
            if (msg.id !== null && this.pending.has(msg.id)) {
              const resolver = this.pending.get(msg.id);
              this.pending.delete(msg.id);
              resolver(msg);
            }
          }
        };
      });
    }
    close() {
      var _a;
      (_a = this.socket) == null ? void 0 : _a.close();
    }
    request(payload) {
      if (!this.socket || !this.connected) {
        return Promise.resolve({ type: "error", id: null, message: "not connected" });
      }
      const id = this.nextId++;
      const promise = new Promise((resolve) => this.pending.set(id, resolve));
      this.socket.send(JSON.stringify({ ...payload, id }));
      return promise;
    }
    setConfig(robot, q) {
      return this.request({ type: "set_config", robot, q });
    }
    moveToPose(robot, space, target) {
      return this.request({ type: "move_to_pose", robot, space, target });
    }
    play() {
      return this.request({ type: "play" });
    }
    pause() {
      return this.request({ type: "pause" });
    }
    seek(t) {
      return this.request({ type: "seek", t });
    }
  };

  // src/orbit.ts
  var OrbitCamera = class {
    constructor(eye, target) {
      this.dragging = 0;
      // 0 none, 1 rotate, 2 pan
      this.lastX = 0;
      this.lastY = 0;
      this.target = [...target];
      const d = [eye[0] - target[0], eye[1] - target[1], eye[2] - target[2]];
      this.radius = Math.max(0.2, Math.hypot(d[0], d[1], d[2]));
      this.azimuth = Math.atan2(d[1], d[0]);
      this.elevation = Math.asin(Math.min(1, Math.max(-1, d[2] / this.radius)));
      this.goalTarget = [...this.target];
      this.goalRadius = this.radius;
      this.goalAzimuth = this.azimuth;
      this.goalElevation = this.elevation;
    }
    attach(el) {
      el.addEventListener("pointerdown", (e) => {
        this.dragging = e.button === 2 || e.shiftKey ? 2 : 1;
        this.lastX = e.clientX;
        this.lastY = e.clientY;
        el.setPointerCapture(e.pointerId);
      });
      el.addEventListener("pointerup", (e) => {
        this.dragging = 0;
        el.releasePointerCapture(e.pointerId);
      });
      el.addEventListener("pointermove", (e) => {
        if (!this.dragging) return;
        const dx = e.clientX - this.lastX;
        const dy = e.clientY - this.lastY;
        this.lastX = e.clientX;
        this.lastY = e.clientY;
        if (this.dragging === 1) {
          this.goalAzimuth -= dx * 8e-3;
          this.goalElevation = Math.min(1.52, Math.max(-1.52, this.goalElevation + dy * 8e-3));
        } else {
          const scale = this.goalRadius * 16e-4;
          const ca = Math.cos(this.goalAzimuth);
          const sa = Math.sin(this.goalAzimuth);
          this.goalTarget[0] += (sa * dx + ca * Math.sin(this.goalElevation) * dy) * scale;
          this.goalTarget[1] += (-ca * dx + sa * Math.sin(this.goalElevation) * dy) * scale;
          this.goalTarget[2] += Math.cos(this.goalElevation) * dy * scale;
        }
      });
      el.addEventListener(
        "wheel",
        (e) => {
          e.preventDefault();
          this.goalRadius = Math.min(80, Math.max(0.15, this.goalRadius * Math.exp(e.deltaY * 12e-4)));
        },
        { passive: false }
      );
      el.addEventListener("contextmenu", (e) => e.preventDefault());
    }
    /** Damped approach toward the interaction goals; call once per frame. */
    update() {
      const k = 0.22;
      this.azimuth += (this.goalAzimuth - this.azimuth) * k;
      this.elevation += (this.goalElevation - this.elevation) * k;
      this.radius += (this.goalRadius - this.radius) * k;
      for (let i = 0; i < 3; i++) this.target[i] += (this.goalTarget[i] - this.target[i]) * k;
    }
    eye() {
      const ce = Math.cos(this.elevation);
      return [
        this.target[0] + this.radius * ce * Math.cos(this.azimuth),
        this.target[1] + this.radius * ce * Math.sin(this.azimuth),
        this.target[2] + this.radius * Math.sin(this.elevation)
      ];
    }
  };

  // src/playback.ts
  function valueAt(track, t) {
    let lo = 0;
    let hi = track.keys.length;
    while (lo < hi) {
      const mid = lo + hi >> 1;
      if (track.keys[mid][0] <= t) lo = mid + 1;
      else hi = mid;
    }
    return lo ? track.keys[lo - 1][1] : null;
  }
  function samplePoses(doc, t) {
    if (!(t >= 0 && t <= doc.duration)) {
      throw new Error(`sample time ${t} outside [0, ${doc.duration}]`);
    }
    const tracks = new Map(doc.tracks.map((tr) => [tr.id, tr]));
    const out = /* @__PURE__ */ new Map();
    for (const obj of doc.objects) {
      const track = tracks.get(obj.id);
      const value = track ? valueAt(track, t) : null;
      out.set(obj.id, fromFlat(value != null ? value : obj.initial_pose));
    }
    for (const robot of doc.robots) {
      const track = tracks.get(robot.id);
      const value = track ? valueAt(track, t) : null;
      const q = value != null ? value : robot.model.q;
      const frames = chainFrames(robot, q);
      for (let i = 0; i < frames.length - 1; i++) {
        out.set(`${robot.id}/link${i}`, frames[i]);
      }
      out.set(`${robot.id}/ee`, frames[frames.length - 1]);
    }
    return out;
  }

  // src/mat4.ts
  function glIdentity() {
    const m = new Float32Array(16);
    m[0] = m[5] = m[10] = m[15] = 1;
    return m;
  }
  function glFromPose(pose) {
    const m = new Float32Array(16);
    for (let r = 0; r < 4; r++) {
      for (let c = 0; c < 4; c++) {
        m[c * 4 + r] = pose[r][c];
      }
    }
    return m;
  }
  function perspective(fovYDeg, aspect, near, far) {
    const f = 1 / Math.tan(fovYDeg * Math.PI / 360);
    const m = new Float32Array(16);
    m[0] = f / aspect;
    m[5] = f;
    m[10] = (far + near) / (near - far);
    m[11] = -1;
    m[14] = 2 * far * near / (near - far);
    return m;
  }
  function sub(a, b) {
    return [a[0] - b[0], a[1] - b[1], a[2] - b[2]];
  }
  function cross(a, b) {
    return [a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]];
  }
  function norm(a) {
    const n = Math.hypot(a[0], a[1], a[2]) || 1;
    return [a[0] / n, a[1] / n, a[2] / n];
  }
  function lookAt(eye, target, up) {
    const z = norm(sub(eye, target));
    const x = norm(cross(up, z));
    const y = cross(z, x);
    const m = new Float32Array(16);
    m[0] = x[0];
    m[4] = x[1];
    m[8] = x[2];
    m[1] = y[0];
    m[5] = y[1];
    m[9] = y[2];
    m[2] = z[0];
    m[6] = z[1];
    m[10] = z[2];
    m[12] = -(x[0] * eye[0] + x[1] * eye[1] + x[2] * eye[2]);
    m[13] = -(y[0] * eye[0] + y[1] * eye[1] + y[2] * eye[2]);
    m[14] = -(z[0] * eye[0] + z[1] * eye[1] + z[2] * eye[2]);
    m[15] = 1;
    return m;
  }
  function glFrame(x, y, z, origin) {
    const m = new Float32Array(16);
    m.set([x[0], x[1], x[2], 0, y[0], y[1], y[2], 0, z[0], z[1], z[2], 0, origin[0], origin[1], origin[2], 1]);
    return m;
  }
  function segmentFrame(p0, p1, radius) {
    const d = sub(p1, p0);
    const len = Math.hypot(d[0], d[1], d[2]);
    if (len < 1e-9) return null;
    const zn = [d[0] / len, d[1] / len, d[2] / len];
    const ref = Math.abs(zn[2]) < 0.9 ? [0, 0, 1] : [1, 0, 0];
    const x = norm(cross(ref, zn));
    const y = cross(zn, x);
    return glFrame(
      [x[0] * radius, x[1] * radius, x[2] * radius],
      [y[0] * radius, y[1] * radius, y[2] * radius],
      d,
      p0
    );
  }

  // src/renderer.ts
  var MESH_VS = `
attribute vec3 aPos;
attribute vec3 aNormal;
uniform mat4 uProj, uView, uModel;
varying vec3 vNormal;
void main() {
  vNormal = mat3(uModel) * aNormal;
  gl_Position = uProj * uView * uModel * vec4(aPos, 1.0);
}`;
  var MESH_FS = `
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
  var LINE_VS = `
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
  var LINE_FS = `
precision mediump float;
varying vec3 vColor;
void main() { gl_FragColor = vec4(vColor, 1.0); }`;
  function compile(gl, vsSrc, fsSrc) {
    const mk = (type, src) => {
      const sh = gl.createShader(type);
      gl.shaderSource(sh, src);
      gl.compileShader(sh);
      if (!gl.getShaderParameter(sh, gl.COMPILE_STATUS)) {
        throw new Error(`shader: ${gl.getShaderInfoLog(sh)}`);
      }
      return sh;
    };
    const prog = gl.createProgram();
    gl.attachShader(prog, mk(gl.VERTEX_SHADER, vsSrc));
    gl.attachShader(prog, mk(gl.FRAGMENT_SHADER, fsSrc));
    gl.linkProgram(prog);
    if (!gl.getProgramParameter(prog, gl.LINK_STATUS)) {
      throw new Error(`program: ${gl.getProgramInfoLog(prog)}`);
    }
    return prog;
  }
  var Renderer = class {
    constructor(canvas) {
      this.canvas = canvas;
      this.nodes = [];
      this.background = [0.07, 0.08, 0.1];
      this.ambient = 0.35;
      this.proj = glIdentity();
      this.view = glIdentity();
      this.fovDeg = 50;
      const gl = canvas.getContext("webgl", { antialias: true });
      if (!gl) throw new Error("WebGL is not available in this browser");
      this.gl = gl;
      this.meshProg = compile(gl, MESH_VS, MESH_FS);
      this.lineProg = compile(gl, LINE_VS, LINE_FS);
      gl.enable(gl.DEPTH_TEST);
      gl.enable(gl.BLEND);
      gl.blendFunc(gl.SRC_ALPHA, gl.ONE_MINUS_SRC_ALPHA);
    }
    addMesh(mesh, color) {
      const gl = this.gl;
      const node = {
        kind: "mesh",
        vbo: gl.createBuffer(),
        nbo: gl.createBuffer(),
        ibo: gl.createBuffer(),
        count: mesh.indices.length,
        color,
        model: glIdentity(),
        visible: true
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
    addLines(lines, mode, pointSize = 4) {
      const gl = this.gl;
      const node = {
        kind: mode,
        vbo: gl.createBuffer(),
        cbo: gl.createBuffer(),
        count: lines.positions.length / 3,
        model: glIdentity(),
        pointSize,
        visible: true
      };
      gl.bindBuffer(gl.ARRAY_BUFFER, node.vbo);
      gl.bufferData(gl.ARRAY_BUFFER, lines.positions, gl.STATIC_DRAW);
      gl.bindBuffer(gl.ARRAY_BUFFER, node.cbo);
      gl.bufferData(gl.ARRAY_BUFFER, lines.colors, gl.STATIC_DRAW);
      this.nodes.push(node);
      return node;
    }
    setCamera(eye, target, up, fovDeg) {
      if (fovDeg) this.fovDeg = fovDeg;
      this.view = lookAt(eye, target, up);
      const aspect = this.canvas.width / Math.max(1, this.canvas.height);
      this.proj = perspective(this.fovDeg, aspect, 0.01, 200);
    }
    resize(width, height) {
      this.canvas.width = width;
      this.canvas.height = height;
      this.gl.viewport(0, 0, width, height);
    }
    /** Drop every node and release its buffers (document reload). */
    clear() {
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
    render() {
      const gl = this.gl;
      gl.clearColor(this.background[0], this.background[1], this.background[2], 1);
      gl.clear(gl.COLOR_BUFFER_BIT | gl.DEPTH_BUFFER_BIT);
      gl.useProgram(this.meshProg);
      const mp = (n) => gl.getUniformLocation(this.meshProg, n);
      gl.uniformMatrix4fv(mp("uProj"), false, this.proj);
      gl.uniformMatrix4fv(mp("uView"), false, this.view);
      gl.uniform1f(mp("uAmbient"), this.ambient);
      const aPos = gl.getAttribLocation(this.meshProg, "aPos");
      const aNormal = gl.getAttribLocation(this.meshProg, "aNormal");
      gl.enableVertexAttribArray(aPos);
      gl.enableVertexAttribArray(aNormal);
      const meshes = this.nodes.filter((n) => n.kind === "mesh" && n.visible);
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
      const lp = (n) => gl.getUniformLocation(this.lineProg, n);
      gl.uniformMatrix4fv(lp("uProj"), false, this.proj);
      gl.uniformMatrix4fv(lp("uView"), false, this.view);
      const lPos = gl.getAttribLocation(this.lineProg, "aPos");
      const lCol = gl.getAttribLocation(this.lineProg, "aColor");
      gl.enableVertexAttribArray(lPos);
      gl.enableVertexAttribArray(lCol);
      for (const node of this.nodes) {
        if (node.kind !== "lines" && node.kind !== "points" || !node.visible) continue;
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
  };

  // src/types.ts
  var DOC_VERSION = "kinesim-doc/1";

  // src/schema.ts
  var DocumentError = class extends Error {
  };
  function fail(path, message) {
    throw new DocumentError(`${path}: ${message}`);
  }
  function need(cond, path, message) {
    if (!cond) fail(path, message);
  }
  function isNum(v) {
    return typeof v === "number" && Number.isFinite(v);
  }
  function checkPose(flat, path) {
    need(Array.isArray(flat) && flat.length === 16 && flat.every(isNum), path, "expected 16 floats");
    const m = flat;
    need(
      m[12] === 0 && m[13] === 0 && m[14] === 0 && m[15] === 1,
      path,
      "pose bottom row must be (0,0,0,1)"
    );
  }
  function checkVec(v, n, path) {
    need(Array.isArray(v) && v.length === n && v.every(isNum), path, `expected ${n} numbers`);
  }
  function checkMaterial(m, path) {
    need(m && typeof m === "object", path, "expected a material");
    checkVec(m.color, 3, `${path}.color`);
    need(isNum(m.metalness) && isNum(m.roughness) && isNum(m.opacity), path, "bad material scalars");
  }
  function checkObject(o, path) {
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
        s.points.forEach((p, i) => checkVec(p, 3, `${path}.shape.points[${i}]`));
        need(isNum(s.point_size) && s.point_size > 0, `${path}.shape.point_size`, "expected a size");
        break;
      case "group":
        need(Array.isArray(s.children), `${path}.shape.children`, "expected children");
        need(
          Array.isArray(s.offsets) && s.offsets.length === s.children.length,
          `${path}.shape.offsets`,
          "expected one offset per child"
        );
        s.children.forEach((c, i) => checkObject(c, `${path}.shape.children[${i}]`));
        s.offsets.forEach((o2, i) => checkPose(o2, `${path}.shape.offsets[${i}]`));
        break;
      default:
        fail(`${path}.shape.kind`, `unknown shape kind '${s.kind}'`);
    }
  }
  function checkRobot(r, path) {
    need(r && typeof r === "object", path, "expected a robot entry");
    need(typeof r.id === "string" && r.id.length > 0, `${path}.id`, "expected a non-empty id");
    checkMaterial(r.material, `${path}.material`);
    const m = r.model;
    need(m && typeof m === "object", `${path}.model`, "expected a model");
    checkPose(m.base, `${path}.model.base`);
    checkPose(m.tool, `${path}.model.tool`);
    need(Array.isArray(m.links) && m.links.length > 0, `${path}.model.links`, "expected links");
    m.links.forEach((l, i) => {
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
  function parseDocument(raw) {
    let payload = raw;
    if (typeof raw === "string") {
      try {
        payload = JSON.parse(raw);
      } catch (exc) {
        throw new DocumentError(`not valid JSON: ${exc.message}`);
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
    payload.objects.forEach((o, i) => checkObject(o, `objects[${i}]`));
    need(Array.isArray(payload.robots), "robots", "expected an array");
    payload.robots.forEach((r, i) => checkRobot(r, `robots[${i}]`));
    need(Array.isArray(payload.tracks), "tracks", "expected an array");
    const ids = /* @__PURE__ */ new Set([
      ...payload.objects.map((o) => o.id),
      ...payload.robots.map((r) => r.id)
    ]);
    payload.tracks.forEach((tr, i) => {
      const tp = `tracks[${i}]`;
      need(tr && typeof tr === "object", tp, "expected a track");
      need(ids.has(tr.id), `${tp}.id`, `track references unknown id '${tr.id}'`);
      need(tr.kind === "pose" || tr.kind === "config", `${tp}.kind`, "unknown track kind");
      need(Array.isArray(tr.keys), `${tp}.keys`, "expected keys");
      let prev = -Infinity;
      tr.keys.forEach((k, j) => {
        const kp = `${tp}.keys[${j}]`;
        need(Array.isArray(k) && k.length === 2 && isNum(k[0]), kp, "expected [t, values]");
        need(k[0] > prev, `${kp}[0]`, "keyframe times must increase");
        need(k[0] <= payload.duration, `${kp}[0]`, "keyframe beyond duration");
        prev = k[0];
        if (tr.kind === "pose") checkPose(k[1], `${kp}[1]`);
        else need(Array.isArray(k[1]) && k[1].every(isNum), `${kp}[1]`, "expected numbers");
      });
    });
    return payload;
  }

  // src/mesh.ts
  function build(pos, nor, idx) {
    return {
      positions: new Float32Array(pos),
      normals: new Float32Array(nor),
      indices: new Uint16Array(idx)
    };
  }
  function boxMesh(w, h, d) {
    const x = w / 2, y = h / 2, z = d / 2;
    const faces = [
      [[1, 0, 0], [[x, -y, -z], [x, y, -z], [x, y, z], [x, -y, z]]],
      [[-1, 0, 0], [[-x, y, -z], [-x, -y, -z], [-x, -y, z], [-x, y, z]]],
      [[0, 1, 0], [[x, y, -z], [-x, y, -z], [-x, y, z], [x, y, z]]],
      [[0, -1, 0], [[-x, -y, -z], [x, -y, -z], [x, -y, z], [-x, -y, z]]],
      [[0, 0, 1], [[-x, -y, z], [x, -y, z], [x, y, z], [-x, y, z]]],
      [[0, 0, -1], [[x, -y, -z], [-x, -y, -z], [-x, y, -z], [x, y, -z]]]
    ];
    const pos = [], nor = [], idx = [];
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
  function sphereMesh(r, segs = 24, rings = 16) {
    const pos = [], nor = [], idx = [];
    for (let i = 0; i <= rings; i++) {
      const phi = i / rings * Math.PI;
      for (let j = 0; j <= segs; j++) {
        const th = j / segs * 2 * Math.PI;
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
  function lathe(r, h, rTop, segs) {
    const pos = [], nor = [], idx = [];
    const slope = Math.hypot(h, r - rTop);
    const nz = (r - rTop) / slope;
    const nr = h / slope;
    for (let j = 0; j <= segs; j++) {
      const th = j / segs * 2 * Math.PI;
      const c = Math.cos(th), s = Math.sin(th);
      pos.push(r * c, r * s, 0, rTop * c, rTop * s, h);
      nor.push(c * nr, s * nr, nz, c * nr, s * nr, nz);
    }
    for (let j = 0; j < segs; j++) {
      const a = j * 2;
      idx.push(a, a + 2, a + 1, a + 1, a + 2, a + 3);
    }
    const caps = [[0, -1, r]];
    if (rTop > 0) caps.push([h, 1, rTop]);
    caps.forEach(([z, nzc, rc]) => {
      const center = pos.length / 3;
      pos.push(0, 0, z);
      nor.push(0, 0, nzc);
      for (let j = 0; j <= segs; j++) {
        const th = j / segs * 2 * Math.PI;
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
  function cylinderMesh(r, h, segs = 28) {
    return lathe(r, h, r, segs);
  }
  function coneMesh(r, h, segs = 28) {
    return lathe(r, h, 0, segs);
  }
  function axesLines(length) {
    const l = length;
    return {
      positions: new Float32Array([0, 0, 0, l, 0, 0, 0, 0, 0, 0, l, 0, 0, 0, 0, 0, 0, l]),
      colors: new Float32Array([
        0.95,
        0.3,
        0.25,
        0.95,
        0.3,
        0.25,
        0.35,
        0.85,
        0.35,
        0.35,
        0.85,
        0.35,
        0.3,
        0.55,
        0.95,
        0.3,
        0.55,
        0.95
      ])
    };
  }
  function gridLines(extent = 5, step = 1) {
    const pos = [], col = [];
    for (let i = -extent; i <= extent; i += step) {
      const major = i === 0 ? 0.45 : 0.28;
      pos.push(i, -extent, 0, i, extent, 0, -extent, i, 0, extent, i, 0);
      for (let k = 0; k < 4; k++) col.push(major, major, major + 0.03);
    }
    return { positions: new Float32Array(pos), colors: new Float32Array(col) };
  }
  function pointCloudLines(points, color) {
    const pos = [], col = [];
    points.forEach((p) => {
      pos.push(p[0], p[1], p[2]);
      col.push(...color);
    });
    return { positions: new Float32Array(pos), colors: new Float32Array(col) };
  }

  // src/sceneview.ts
  var JOINT_RADIUS = 0.034;
  var LIMB_RADIUS = 0.024;
  function rgba(m) {
    return [m.color[0] / 255, m.color[1] / 255, m.color[2] / 255, m.opacity];
  }
  var SceneView = class {
    constructor(renderer, doc) {
      this.renderer = renderer;
      this.doc = doc;
      this.leaves = [];
      this.robots = [];
      renderer.background = [
        doc.background[0] / 255,
        doc.background[1] / 255,
        doc.background[2] / 255
      ];
      renderer.ambient = Math.min(1, 0.3 * doc.ambient_light_intensity);
      if (doc.grid_visible) renderer.addLines(gridLines(), "lines");
      for (const obj of doc.objects) this.buildObject(obj, obj.id, null);
      for (const robot of doc.robots) this.buildRobot(robot);
    }
    buildObject(obj, topId, offset) {
      const s = obj.shape;
      const color = rgba(obj.material);
      let node = null;
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
    buildRobot(robot) {
      const color = rgba(robot.material);
      const n = robot.model.links.length;
      const balls = [];
      const limbs = [];
      for (let i = 0; i < n; i++) {
        balls.push(this.renderer.addMesh(sphereMesh(JOINT_RADIUS), color));
        limbs.push(this.renderer.addMesh(cylinderMesh(1, 1, 20), color));
      }
      const eeAxes = this.renderer.addLines(axesLines(0.12), "lines");
      this.robots.push({ robot, balls, limbs, eeAxes });
    }
    /** Reposition every node from a pose lookup (“<rid>/link<i>” ids for robots). */
    update(get) {
      var _a;
      for (const leaf of this.leaves) {
        const top = get(leaf.topId);
        if (!top) continue;
        const world = leaf.offset ? mm4(top, leaf.offset) : top;
        leaf.node.model = glFromPose(world);
      }
      robots: for (const parts of this.robots) {
        const rid = parts.robot.id;
        const n = parts.robot.model.links.length;
        const frames = [];
        for (let i = 0; i <= n; i++) {
          const f = get(`${rid}/link${i}`);
          if (!f) continue robots;
          frames.push(f);
        }
        const ee = (_a = get(`${rid}/ee`)) != null ? _a : frames[n];
        for (let i = 0; i < n; i++) {
          const p0 = [frames[i][0][3], frames[i][1][3], frames[i][2][3]];
          const p1 = [
            frames[i + 1][0][3],
            frames[i + 1][1][3],
            frames[i + 1][2][3]
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
    frameGetter(frame) {
      const poses = new Map(frame.poses.map(([id, flat]) => [id, fromFlat(flat)]));
      for (const [rid, q] of frame.configs) {
        const robot = this.doc.robots.find((r) => r.id === rid);
        if (!robot) continue;
        const frames = chainFrames(robot, q);
        for (let i = 0; i < frames.length - 1; i++) poses.set(`${rid}/link${i}`, frames[i]);
        poses.set(`${rid}/ee`, frames[frames.length - 1]);
      }
      return (id) => poses.get(id);
    }
  };

  // src/ui.ts
  var SPEEDS = [0.25, 0.5, 1, 2, 4];
  var STYLE = `
html, body { margin: 0; height: 100%; overflow: hidden; background: #101216; }
#ks-root { position: fixed; inset: 0; font: 13px/1.4 system-ui, sans-serif; color: #d8dbe2; }
#ks-canvas { position: absolute; inset: 0; width: 100%; height: 100%; display: block; touch-action: none; }
#ks-banner { position: absolute; top: 0; left: 0; right: 0; padding: 10px 16px; background: #8c2f39;
  color: #fff; display: none; z-index: 30; white-space: pre-wrap; }
#ks-toolbar { position: absolute; left: 0; right: 0; bottom: 0; display: flex; gap: 10px;
  align-items: center; padding: 10px 14px; background: rgba(16,18,22,0.85); z-index: 20; }
#ks-toolbar button, #ks-toolbar select, #ks-live input, #ks-panel button, #ks-panel select, #ks-panel input {
  background: #232733; color: #d8dbe2; border: 1px solid #3a4052; border-radius: 4px; padding: 4px 10px; }
#ks-toolbar button:hover, #ks-panel button:hover { background: #2e3442; cursor: pointer; }
#ks-scrubwrap { position: relative; flex: 1; height: 22px; }
#ks-ticks { position: absolute; inset: 0; width: 100%; height: 100%; }
#ks-scrub { position: absolute; inset: 0; width: 100%; margin: 0; background: transparent; }
#ks-time { min-width: 130px; text-align: right; font-variant-numeric: tabular-nums; }
#ks-live { display: flex; gap: 6px; align-items: center; }
#ks-live-dot { width: 9px; height: 9px; border-radius: 50%; background: #5a6170; }
#ks-live-dot.on { background: #46c46a; }
#ks-toasts { position: absolute; top: 12px; right: 12px; display: flex; flex-direction: column;
  gap: 6px; z-index: 25; max-width: 360px; }
.ks-toast { padding: 6px 10px; border-radius: 4px; background: #232733; border: 1px solid #3a4052; }
.ks-toast.err { background: #4d2229; border-color: #8c2f39; }
#ks-panel { position: absolute; top: 0; right: 0; bottom: 46px; width: 270px; overflow-y: auto;
  background: rgba(16,18,22,0.92); padding: 12px; display: none; z-index: 15; }
#ks-panel h3 { margin: 10px 0 4px; font-size: 12px; text-transform: uppercase; color: #8e95a5; }
.ks-slider-row { display: grid; grid-template-columns: 34px 1fr 56px; gap: 6px; align-items: center; margin: 3px 0; }
.ks-slider-row input[type=range] { width: 100%; padding: 0; }
.ks-pose-grid { display: grid; grid-template-columns: repeat(3, 1fr); gap: 4px; margin: 4px 0; }
.ks-pose-grid input { width: 100%; box-sizing: border-box; }
#ks-panel .wide { width: 100%; box-sizing: border-box; margin-top: 4px; }
`;
  function buildUi() {
    const style = document.createElement("style");
    style.textContent = STYLE;
    document.head.appendChild(style);
    const root = document.createElement("div");
    root.id = "ks-root";
    root.innerHTML = `
    <canvas id="ks-canvas"></canvas>
    <div id="ks-banner"></div>
    <div id="ks-toasts"></div>
    <div id="ks-panel"></div>
    <div id="ks-toolbar">
      <button id="ks-play">Pause</button>
      <div id="ks-scrubwrap">
        <canvas id="ks-ticks"></canvas>
        <input id="ks-scrub" type="range" min="0" max="1" step="0.0001" value="0">
      </div>
      <span id="ks-time"></span>
      <select id="ks-speed">${SPEEDS.map(
      (s) => `<option value="${s}" ${s === 1 ? "selected" : ""}>${s}x</option>`
    ).join("")}</select>
      <div id="ks-live">
        <span id="ks-live-dot"></span>
        <input id="ks-live-url" size="22" placeholder="ws://host:port/ws">
        <button id="ks-live-btn">Connect</button>
      </div>
    </div>`;
    document.body.appendChild(root);
    const get = (id) => root.querySelector(`#${id}`);
    const banner = get("ks-banner");
    const toasts = get("ks-toasts");
    const ticks = get("ks-ticks");
    const ui = {
      canvas: get("ks-canvas"),
      banner,
      playBtn: get("ks-play"),
      scrub: get("ks-scrub"),
      ticks,
      timeLabel: get("ks-time"),
      speedSel: get("ks-speed"),
      liveUrl: get("ks-live-url"),
      liveBtn: get("ks-live-btn"),
      liveDot: get("ks-live-dot"),
      panel: get("ks-panel"),
      toasts,
      showBanner(text) {
        banner.textContent = text;
        banner.style.display = "block";
      },
      hideBanner() {
        banner.style.display = "none";
      },
      toast(text, isError = false) {
        const el = document.createElement("div");
        el.className = isError ? "ks-toast err" : "ks-toast";
        el.textContent = text;
        toasts.appendChild(el);
        setTimeout(() => el.remove(), isError ? 6e3 : 2500);
      },
      drawTicks(times, duration) {
        const ctx = ticks.getContext("2d");
        if (!ctx) return;
        const w = ticks.width = ticks.clientWidth || 600;
        const h = ticks.height = ticks.clientHeight || 22;
        ctx.clearRect(0, 0, w, h);
        ctx.fillStyle = "#3a4052";
        if (duration <= 0) return;
        for (const t of times) {
          const x = Math.round(t / duration * (w - 2)) + 1;
          ctx.fillRect(x, h - 6, 1, 5);
        }
      }
    };
    return ui;
  }
  function buildRobotControls(panel, robot, onSlider, onSend) {
    const section = document.createElement("div");
    const title = document.createElement("h3");
    title.textContent = `robot: ${robot.id}`;
    section.appendChild(title);
    const sliders = [];
    robot.model.links.forEach((link, i) => {
      const row = document.createElement("div");
      row.className = "ks-slider-row";
      const label = document.createElement("span");
      label.textContent = `q${i + 1}`;
      const slider = document.createElement("input");
      slider.type = "range";
      slider.min = String(link.q_min);
      slider.max = String(link.q_max);
      slider.step = "0.001";
      slider.value = String(robot.model.q[i]);
      const value = document.createElement("span");
      value.textContent = Number(slider.value).toFixed(2);
      slider.addEventListener("input", () => value.textContent = Number(slider.value).toFixed(2));
      slider.addEventListener("change", () => onSlider(sliders.map((s) => Number(s.value))));
      row.append(label, slider, value);
      section.appendChild(row);
      sliders.push(slider);
    });
    const poseTitle = document.createElement("h3");
    poseTitle.textContent = "move to pose";
    section.appendChild(poseTitle);
    const spaceSel = document.createElement("select");
    spaceSel.innerHTML = `<option value="task">task (x y z r p y)</option><option value="joint">joint (q list)</option>`;
    spaceSel.className = "wide";
    section.appendChild(spaceSel);
    const grid = document.createElement("div");
    grid.className = "ks-pose-grid";
    const taskInputs = ["x", "y", "z", "roll", "pitch", "yaw"].map((name) => {
      const input = document.createElement("input");
      input.placeholder = name;
      input.value = "0";
      grid.appendChild(input);
      return input;
    });
    section.appendChild(grid);
    const jointInput = document.createElement("input");
    jointInput.className = "wide";
    jointInput.placeholder = robot.model.links.map(() => "0").join(", ");
    jointInput.style.display = "none";
    section.appendChild(jointInput);
    spaceSel.addEventListener("change", () => {
      const joint = spaceSel.value === "joint";
      grid.style.display = joint ? "none" : "grid";
      jointInput.style.display = joint ? "block" : "none";
    });
    const send = document.createElement("button");
    send.textContent = "Send";
    send.className = "wide";
    section.appendChild(send);
    panel.appendChild(section);
    const controls = {
      sliders,
      readPoseForm() {
        if (spaceSel.value === "joint") {
          const values2 = jointInput.value.split(",").map((v) => Number(v.trim()));
          if (values2.length !== robot.model.links.length || values2.some((v) => !Number.isFinite(v))) {
            return null;
          }
          return { space: "joint", values: values2 };
        }
        const values = taskInputs.map((i) => Number(i.value));
        return values.some((v) => !Number.isFinite(v)) ? null : { space: "task", values };
      }
    };
    send.addEventListener("click", () => {
      const form = controls.readPoseForm();
      if (form) onSend(form.space, form.values);
    });
    return controls;
  }

  // src/main.ts
  function poseFromXyzRpy(v) {
    const [x, y, z, roll, pitch, yaw] = v;
    const rot = (axis, angle) => {
      const [s, c] = portableSincos(angle);
      if (axis === "x") return [[1, 0, 0, 0], [0, c, -s, 0], [0, s, c, 0], [0, 0, 0, 1]];
      if (axis === "y") return [[c, 0, s, 0], [0, 1, 0, 0], [-s, 0, c, 0], [0, 0, 0, 1]];
      return [[c, -s, 0, 0], [s, c, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]];
    };
    const m = mm4(mm4(rot("z", yaw), rot("y", pitch)), rot("x", roll));
    m[0][3] = x;
    m[1][3] = y;
    m[2][3] = z;
    return [...m[0], ...m[1], ...m[2], ...m[3]];
  }
  function main() {
    var _a;
    const ui = buildUi();
    let doc;
    try {
      const el = document.getElementById("scene-doc");
      if (!el) throw new DocumentError("no embedded scene document found");
      doc = parseDocument((_a = el.textContent) != null ? _a : "");
    } catch (exc) {
      ui.showBanner(`Failed to load scene: ${exc.message}`);
      return;
    }
    let renderer;
    try {
      renderer = new Renderer(ui.canvas);
    } catch (exc) {
      ui.showBanner(exc.message);
      return;
    }
    let view = new SceneView(renderer, doc);
    const orbit = new OrbitCamera(doc.camera.position, doc.camera.look_at);
    orbit.attach(ui.canvas);
    let t = 0;
    let playing = doc.duration > 0;
    let speed = 1;
    let mode = "file";
    let lastFrame = null;
    const keyTimes = () => doc.tracks.flatMap((tr) => tr.keys.map((k) => k[0]));
    ui.drawTicks(keyTimes(), doc.duration);
    ui.scrub.max = String(Math.max(doc.duration, 1e-4));
    const setPlaying = (value) => {
      playing = value;
      ui.playBtn.textContent = playing ? "Pause" : "Play";
    };
    setPlaying(playing);
    ui.playBtn.addEventListener("click", () => {
      if (mode === "live") {
        void (playing ? live.pause() : live.play());
      }
      setPlaying(!playing);
    });
    ui.scrub.addEventListener("input", () => {
      t = Number(ui.scrub.value);
      if (mode === "live") void live.seek(t);
    });
    ui.speedSel.addEventListener("change", () => {
      speed = SPEEDS.includes(Number(ui.speedSel.value)) ? Number(ui.speedSel.value) : 1;
    });
    let robotControls = [];
    const rebuildForDoc = () => {
      renderer.clear();
      view = new SceneView(renderer, doc);
      ui.drawTicks(keyTimes(), doc.duration);
      ui.scrub.max = String(Math.max(doc.duration, 1e-4));
    };
    const buildPanel = () => {
      ui.panel.innerHTML = "";
      robotControls = doc.robots.map(
        (robot) => buildRobotControls(
          ui.panel,
          robot,
          (q) => {
            void live.setConfig(robot.id, clampConfig(robot, q));
          },
          (space, values) => {
            const target = space === "task" ? poseFromXyzRpy(values) : clampConfig(robot, values);
            void live.moveToPose(robot.id, space, target);
          }
        )
      );
      ui.panel.style.display = doc.robots.length ? "block" : "none";
    };
    const live = new LiveClient({
      onHello(helloDoc) {
        doc = helloDoc;
        rebuildForDoc();
        buildPanel();
      },
      onFrame(frame) {
        lastFrame = frame;
        t = frame.t;
        for (const [rid, q] of frame.configs) {
          const controls = robotControls[doc.robots.findIndex((r) => r.id === rid)];
          if (controls) q.forEach((v, i) => controls.sliders[i].value = String(v));
        }
      },
      onReply(reply) {
        var _a2;
        if (reply.type === "ack") ui.toast(`#${reply.id} ok`);
        else ui.toast(`#${(_a2 = reply.id) != null ? _a2 : "?"} error: ${reply.message}`, true);
      },
      onClose() {
        ui.showBanner("Live connection lost; showing the last received state.");
        ui.liveDot.classList.remove("on");
        ui.liveBtn.textContent = "Connect";
        mode = "file";
        ui.panel.style.display = "none";
        t = Math.min(t, doc.duration);
        setPlaying(false);
      }
    });
    ui.liveUrl.value = `ws://${location.host || "127.0.0.1:8700"}/ws`;
    ui.liveBtn.addEventListener("click", () => {
      if (mode === "live") {
        live.close();
        return;
      }
      live.connect(ui.liveUrl.value).then(() => {
        mode = "live";
        ui.hideBanner();
        ui.liveDot.classList.add("on");
        ui.liveBtn.textContent = "Disconnect";
        buildPanel();
      }).catch((exc) => ui.toast(`connect failed: ${exc.message}`, true));
    });
    const resize = () => {
      renderer.resize(window.innerWidth, window.innerHeight);
    };
    window.addEventListener("resize", resize);
    resize();
    let lastTick = performance.now();
    const loop = (now) => {
      const dt = Math.min(0.1, (now - lastTick) / 1e3);
      lastTick = now;
      if (mode === "file") {
        if (playing && doc.duration > 0) {
          t += dt * speed;
          if (t >= doc.duration) {
            t = doc.duration;
            setPlaying(false);
          }
        }
        const clamped = Math.min(Math.max(t, 0), doc.duration);
        const sampled = samplePoses(doc, clamped);
        view.update((id) => sampled.get(id));
      } else if (lastFrame) {
        view.update(view.frameGetter(lastFrame));
      }
      ui.scrub.value = String(t);
      ui.timeLabel.textContent = `t = ${t.toFixed(2)} / ${doc.duration.toFixed(2)} s`;
      orbit.update();
      renderer.setCamera(orbit.eye(), orbit.target, doc.camera.up, doc.camera.fov);
      renderer.render();
      requestAnimationFrame(loop);
    };
    requestAnimationFrame(loop);
  }
  main();
})();

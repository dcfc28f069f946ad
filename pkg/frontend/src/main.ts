/** Entry point: load the embedded document, render, play back, go live on demand. */

import { clampConfig } from "./fk";
import { LiveClient } from "./live";
import { Mat4, mm4, portableSincos } from "./portable";
import { OrbitCamera } from "./orbit";
import { samplePoses } from "./playback";
import { Renderer } from "./renderer";
import { DocumentError, parseDocument } from "./schema";
import { SceneView } from "./sceneview";
import { FrameMsg, SceneDoc } from "./types";
import { buildRobotControls, buildUi, RobotControls, SPEEDS } from "./ui";

function poseFromXyzRpy(v: number[]): number[] {
  const [x, y, z, roll, pitch, yaw] = v;
  const rot = (axis: "x" | "y" | "z", angle: number): Mat4 => {
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

function main(): void {
  const ui = buildUi();
  let doc: SceneDoc;
  try {
    const el = document.getElementById("scene-doc");
    if (!el) throw new DocumentError("no embedded scene document found");
    doc = parseDocument(el.textContent ?? "");
  } catch (exc) {
    ui.showBanner(`Failed to load scene: ${(exc as Error).message}`);
    return;
  }

  let renderer: Renderer;
  try {
    renderer = new Renderer(ui.canvas);
  } catch (exc) {
    ui.showBanner((exc as Error).message);
    return;
  }
  let view = new SceneView(renderer, doc);
  const orbit = new OrbitCamera(doc.camera.position, doc.camera.look_at);
  orbit.attach(ui.canvas);

  // playback state -----------------------------------------------------------
  let t = 0;
  let playing = doc.duration > 0;
  let speed = 1;
  let mode: "file" | "live" = "file";
  let lastFrame: FrameMsg | null = null;

  const keyTimes = () => doc.tracks.flatMap((tr) => tr.keys.map((k) => k[0]));
  ui.drawTicks(keyTimes(), doc.duration);
  ui.scrub.max = String(Math.max(doc.duration, 1e-4));

  const setPlaying = (value: boolean) => {
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

  // live mode -----------------------------------------------------------------
  let robotControls: RobotControls[] = [];

  const rebuildForDoc = () => {
    renderer.clear();
    view = new SceneView(renderer, doc);
    ui.drawTicks(keyTimes(), doc.duration);
    ui.scrub.max = String(Math.max(doc.duration, 1e-4));
  };

  const buildPanel = () => {
    ui.panel.innerHTML = "";
    robotControls = doc.robots.map((robot) =>
      buildRobotControls(
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
        if (controls) q.forEach((v, i) => (controls.sliders[i].value = String(v)));
      }
    },
    onReply(reply) {
      if (reply.type === "ack") ui.toast(`#${reply.id} ok`);
      else ui.toast(`#${reply.id ?? "?"} error: ${reply.message}`, true);
    },
    onClose() {
      ui.showBanner("Live connection lost; showing the last received state.");
      ui.liveDot.classList.remove("on");
      ui.liveBtn.textContent = "Connect";
      mode = "file";
      ui.panel.style.display = "none";
      t = Math.min(t, doc.duration);
      setPlaying(false);
    },
  });

  ui.liveUrl.value = `ws://${location.host || "127.0.0.1:8700"}/ws`;
  ui.liveBtn.addEventListener("click", () => {
    if (mode === "live") {
      live.close();
      return;
    }
    live
      .connect(ui.liveUrl.value)
      .then(() => {
        mode = "live";
        ui.hideBanner();
        ui.liveDot.classList.add("on");
        ui.liveBtn.textContent = "Disconnect";
        buildPanel();
      })
      .catch((exc) => ui.toast(`connect failed: ${exc.message}`, true));
  });

  // render loop ----------------------------------------------------------------
  const resize = () => {
    renderer.resize(window.innerWidth, window.innerHeight);
  };
  window.addEventListener("resize", resize);
  resize();

  let lastTick = performance.now();
  const loop = (now: number) => {
    const dt = Math.min(0.1, (now - lastTick) / 1000);
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

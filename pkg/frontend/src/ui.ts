/** DOM chrome: timeline, speed presets, live panel, toasts, banner. */

import { RobotDoc, SceneDoc } from "./types";

export const SPEEDS = [0.25, 0.5, 1, 2, 4];

const STYLE = `
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

export interface Ui {
  canvas: HTMLCanvasElement;
  banner: HTMLElement;
  playBtn: HTMLButtonElement;
  scrub: HTMLInputElement;
  ticks: HTMLCanvasElement;
  timeLabel: HTMLElement;
  speedSel: HTMLSelectElement;
  liveUrl: HTMLInputElement;
  liveBtn: HTMLButtonElement;
  liveDot: HTMLElement;
  panel: HTMLElement;
  toasts: HTMLElement;
  showBanner(text: string): void;
  hideBanner(): void;
  toast(text: string, isError?: boolean): void;
  drawTicks(times: number[], duration: number): void;
}

export function buildUi(): Ui {
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

  const get = <T extends HTMLElement>(id: string) => root.querySelector(`#${id}`) as T;
  const banner = get<HTMLElement>("ks-banner");
  const toasts = get<HTMLElement>("ks-toasts");
  const ticks = get<HTMLCanvasElement>("ks-ticks");

  const ui: Ui = {
    canvas: get<HTMLCanvasElement>("ks-canvas"),
    banner,
    playBtn: get<HTMLButtonElement>("ks-play"),
    scrub: get<HTMLInputElement>("ks-scrub"),
    ticks,
    timeLabel: get<HTMLElement>("ks-time"),
    speedSel: get<HTMLSelectElement>("ks-speed"),
    liveUrl: get<HTMLInputElement>("ks-live-url"),
    liveBtn: get<HTMLButtonElement>("ks-live-btn"),
    liveDot: get<HTMLElement>("ks-live-dot"),
    panel: get<HTMLElement>("ks-panel"),
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
      setTimeout(() => el.remove(), isError ? 6000 : 2500);
    },
    drawTicks(times, duration) {
      const ctx = ticks.getContext("2d");
      if (!ctx) return;
      const w = (ticks.width = ticks.clientWidth || 600);
      const h = (ticks.height = ticks.clientHeight || 22);
      ctx.clearRect(0, 0, w, h);
      ctx.fillStyle = "#3a4052";
      if (duration <= 0) return;
      for (const t of times) {
        const x = Math.round((t / duration) * (w - 2)) + 1;
        ctx.fillRect(x, h - 6, 1, 5);
      }
    },
  };
  return ui;
}

export interface RobotControls {
  sliders: HTMLInputElement[];
  readPoseForm(): { space: "joint" | "task"; values: number[] } | null;
}

/** Per-robot live controls: joint sliders plus a target-pose form. */
export function buildRobotControls(
  panel: HTMLElement,
  robot: RobotDoc,
  onSlider: (q: number[]) => void,
  onSend: (space: "joint" | "task", values: number[]) => void
): RobotControls {
  const section = document.createElement("div");
  const title = document.createElement("h3");
  title.textContent = `robot: ${robot.id}`;
  section.appendChild(title);

  const sliders: HTMLInputElement[] = [];
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
    slider.addEventListener("input", () => (value.textContent = Number(slider.value).toFixed(2)));
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

  const controls: RobotControls = {
    sliders,
    readPoseForm() {
      if (spaceSel.value === "joint") {
        const values = jointInput.value.split(",").map((v) => Number(v.trim()));
        if (values.length !== robot.model.links.length || values.some((v) => !Number.isFinite(v))) {
          return null;
        }
        return { space: "joint", values };
      }
      const values = taskInputs.map((i) => Number(i.value));
      return values.some((v) => !Number.isFinite(v)) ? null : { space: "task", values };
    },
  };
  send.addEventListener("click", () => {
    const form = controls.readPoseForm();
    if (form) onSend(form.space, form.values);
  });
  return controls;
}

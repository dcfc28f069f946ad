/** Orbit camera: drag to rotate, wheel to zoom, shift/right-drag to pan; damped. */

type V3 = [number, number, number];

export class OrbitCamera {
  target: V3;
  radius: number;
  azimuth: number;
  elevation: number;
  private goalTarget: V3;
  private goalRadius: number;
  private goalAzimuth: number;
  private goalElevation: number;
  private dragging: 0 | 1 | 2 = 0; // 0 none, 1 rotate, 2 pan
  private lastX = 0;
  private lastY = 0;

  constructor(eye: V3, target: V3) {
    this.target = [...target] as V3;
    const d: V3 = [eye[0] - target[0], eye[1] - target[1], eye[2] - target[2]];
    this.radius = Math.max(0.2, Math.hypot(d[0], d[1], d[2]));
    this.azimuth = Math.atan2(d[1], d[0]);
    this.elevation = Math.asin(Math.min(1, Math.max(-1, d[2] / this.radius)));
    this.goalTarget = [...this.target] as V3;
    this.goalRadius = this.radius;
    this.goalAzimuth = this.azimuth;
    this.goalElevation = this.elevation;
  }

  attach(el: HTMLElement): void {
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
        this.goalAzimuth -= dx * 0.008;
        this.goalElevation = Math.min(1.52, Math.max(-1.52, this.goalElevation + dy * 0.008));
      } else {
        const scale = this.goalRadius * 0.0016;
        const ca = Math.cos(this.goalAzimuth);
        const sa = Math.sin(this.goalAzimuth);
        // screen-right and screen-up in the ground plane
        this.goalTarget[0] += (sa * dx + ca * Math.sin(this.goalElevation) * dy) * scale;
        this.goalTarget[1] += (-ca * dx + sa * Math.sin(this.goalElevation) * dy) * scale;
        this.goalTarget[2] += Math.cos(this.goalElevation) * dy * scale;
      }
    });
    el.addEventListener(
      "wheel",
      (e) => {
        e.preventDefault();
        this.goalRadius = Math.min(80, Math.max(0.15, this.goalRadius * Math.exp(e.deltaY * 0.0012)));
      },
      { passive: false }
    );
    el.addEventListener("contextmenu", (e) => e.preventDefault());
  }

  /** Damped approach toward the interaction goals; call once per frame. */
  update(): void {
    const k = 0.22;
    this.azimuth += (this.goalAzimuth - this.azimuth) * k;
    this.elevation += (this.goalElevation - this.elevation) * k;
    this.radius += (this.goalRadius - this.radius) * k;
    for (let i = 0; i < 3; i++) this.target[i] += (this.goalTarget[i] - this.target[i]) * k;
  }

  eye(): V3 {
    const ce = Math.cos(this.elevation);
    return [
      this.target[0] + this.radius * ce * Math.cos(this.azimuth),
      this.target[1] + this.radius * ce * Math.sin(this.azimuth),
      this.target[2] + this.radius * Math.sin(this.elevation),
    ];
  }
}

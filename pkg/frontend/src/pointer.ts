/**
 * Pointer-as-gaze surrogate: samples the pointer position on a fixed-rate
 * timer and emits one upstream gaze message per tick. Holding the blink key
 * marks samples invalid, simulating track loss. A real tracker feed can
 * replace this by calling `send` with its own samples at its own cadence —
 * nothing downstream knows the difference.
 */

import type { GazeUpstream } from "./wire.js";

export class PointerSampler {
  private timer: ReturnType<typeof setInterval> | null = null;
  private pos: { x: number; y: number } = { x: 0, y: 0 };
  private t0 = 0;
  blink = false;

  constructor(
    public readonly rateHz: number,
    private readonly send: (msg: GazeUpstream) => void,
    private readonly now: () => number = () => performance.now()
  ) {}

  updatePosition(x: number, y: number): void {
    this.pos = { x, y };
  }

  /** One sample, stamped relative to start(). Exposed for tests. */
  tick(): GazeUpstream {
    const msg: GazeUpstream = {
      type: "gaze",
      t: Math.round(this.now() - this.t0),
      x: this.pos.x,
      y: this.pos.y,
      pupil: null,
      valid: !this.blink,
    };
    this.send(msg);
    return msg;
  }

  start(): void {
    if (this.timer !== null) return;
    this.t0 = this.now();
    this.timer = setInterval(() => this.tick(), 1000 / this.rateHz);
  }

  stop(): void {
    if (this.timer !== null) {
      clearInterval(this.timer);
      this.timer = null;
    }
  }

  get running(): boolean {
    return this.timer !== null;
  }
}

/**
 * Trace playback: a timeline cursor over parsed records.
 *
 * The view state at cursor time t is a pure fold over all records with
 * timestamp <= t, so seeking anywhere is "rebuild from the prefix" and
 * necessarily agrees with having played through from the start.
 */

import type { FixRec, GazeRec, PointerRec, SegRec, TraceRec, ZoneRec } from "./gtr.js";

export interface PlaybackView {
  cursorMs: number;
  /** recent gaze points, oldest first (bounded trail) */
  trail: GazeRec[];
  pointer: PointerRec | null;
  /** fixations that have started by the cursor */
  fixations: FixRec[];
  zones: ZoneRec[];
  activeSegments: SegRec[];
  frameRef: string | null;
  blink: boolean;
}

export const TRAIL_LENGTH = 24;

export function emptyView(): PlaybackView {
  return {
    cursorMs: 0,
    trail: [],
    pointer: null,
    fixations: [],
    zones: [],
    activeSegments: [],
    frameRef: null,
    blink: false,
  };
}

export function foldRecord(view: PlaybackView, rec: TraceRec): PlaybackView {
  const next: PlaybackView = { ...view, cursorMs: rec.t };
  switch (rec.kind) {
    case "GAZE":
      if (rec.valid) {
        next.trail = [...view.trail, rec].slice(-TRAIL_LENGTH);
        next.blink = false;
      } else {
        next.blink = true;
      }
      return next;
    case "POINTER":
      next.pointer = rec;
      return next;
    case "FIX": {
      const rest = view.fixations.filter((f) => !(f.t === rec.t && f.x === rec.x));
      next.fixations = [...rest, rec];
      return next;
    }
    case "ZONE":
      next.zones = [...view.zones.filter((z) => z.id !== rec.id), rec];
      return next;
    case "SEG":
      next.activeSegments = [...view.activeSegments, rec];
      return next;
    case "FRAME":
      next.frameRef = rec.ref;
      return next;
    default:
      return next;
  }
}

/** Segments whose [start, end] interval covers the cursor. */
export function segmentsAt(view: PlaybackView): SegRec[] {
  return view.activeSegments.filter((s) => s.t <= view.cursorMs && view.cursorMs <= s.end);
}

export class PlaybackTimeline {
  readonly records: TraceRec[];
  private index = 0;
  view: PlaybackView = emptyView();

  constructor(records: TraceRec[]) {
    this.records = [...records].sort((a, b) => a.t - b.t);
  }

  get durationMs(): number {
    return this.records.length ? this.records[this.records.length - 1].t : 0;
  }

  /** Advance the cursor to t (monotone); returns records consumed. */
  advanceTo(t: number): TraceRec[] {
    const consumed: TraceRec[] = [];
    while (this.index < this.records.length && this.records[this.index].t <= t) {
      const rec = this.records[this.index++];
      this.view = foldRecord(this.view, rec);
      consumed.push(rec);
    }
    this.view = { ...this.view, cursorMs: t };
    return consumed;
  }

  /** Jump anywhere: rebuild the view from the record prefix. */
  seek(t: number): void {
    this.index = 0;
    this.view = emptyView();
    this.advanceTo(t);
  }

  atEnd(): boolean {
    return this.index >= this.records.length;
  }
}

/** Marker geometry: dispersion sets the circle size, duration the ring
 * thickness, pupil the center dot. Pure so the scaling is testable. */
export function fixationGlyphGeometry(fix: FixRec): {
  radius: number;
  ring: number;
  dot: number;
} {
  const radius = Math.max(6, Math.min(60, 6 + fix.dispersion));
  const durationMs = fix.end - fix.t;
  const ring = Math.max(1.5, Math.min(8, durationMs / 120));
  const dot = fix.pupil === null ? 0 : Math.max(2, Math.min(10, fix.pupil * 1.5));
  return { radius, ring, dot };
}

/**
 * Live-session state: a pure fold over wire messages.
 *
 * The UI computes no gaze logic of its own; everything rendered (markers,
 * warning circle, map view, lens) is a projection of engine messages. That
 * keeps the view replayable from a recorded transcript, which is exactly how
 * the tests drive it. The warning circle is visible precisely between a
 * dwell_armed and its closing committed/cancelled; the map view changes only
 * when a map_state message arrives.
 */

import type {
  DwellMsg,
  FixMsg,
  LandingMsg,
  LensMsg,
  MapStateMsg,
  RectSpec,
  WireMessage,
  ZoneStatsMsg,
} from "./wire.js";

export interface FixationGlyph {
  seq: number;
  x: number;
  y: number;
  startMs: number;
  endMs: number;
  n: number;
  dispersion: number;
  pupil: number | null;
  confirmed: boolean;
  ended: boolean;
}

export interface ArmedCircle {
  zone: string;
  x: number;
  y: number;
  sinceMs: number;
}

export interface UiSessionState {
  lastT: number;
  mapState: MapStateMsg | null;
  layout: Record<string, RectSpec> | null;
  /** non-null exactly while a dwell is armed but not yet closed */
  armed: ArmedCircle | null;
  lens: LensMsg | null;
  landing: LandingMsg | null;
  fixations: FixationGlyph[];
  zoneStats: ZoneStatsMsg | null;
  commitCount: number;
  cancelCount: number;
}

export function initialState(): UiSessionState {
  return {
    lastT: 0,
    mapState: null,
    layout: null,
    armed: null,
    lens: null,
    landing: null,
    fixations: [],
    zoneStats: null,
    commitCount: 0,
    cancelCount: 0,
  };
}

const MAX_FIXATION_GLYPHS = 40;

function upsertFixation(state: UiSessionState, msg: FixMsg): UiSessionState {
  const glyph: FixationGlyph = {
    seq: msg.seq,
    x: msg.x,
    y: msg.y,
    startMs: msg.start,
    endMs: msg.end,
    n: msg.n,
    dispersion: msg.dispersion,
    pupil: msg.pupil,
    confirmed: msg.type !== "fix_provisional",
    ended: msg.type === "fix_end",
  };
  const rest = state.fixations.filter((f) => f.seq !== msg.seq);
  rest.push(glyph);
  return { ...state, fixations: rest.slice(-MAX_FIXATION_GLYPHS) };
}

export function applyMessage(state: UiSessionState, msg: WireMessage): UiSessionState {
  const next = { ...state, lastT: msg.t };
  switch (msg.type) {
    case "map_state": {
      const m = msg as MapStateMsg;
      return {
        ...next,
        mapState: m,
        layout: m.layout ?? state.layout,
      };
    }
    case "fix_provisional":
    case "fix_start":
    case "fix_update":
    case "fix_end":
      return upsertFixation(next, msg as FixMsg);
    case "dwell_armed": {
      const m = msg as DwellMsg;
      return {
        ...next,
        armed: { zone: m.zone, x: m.x ?? 0, y: m.y ?? 0, sinceMs: m.t },
      };
    }
    case "dwell_committed":
      return { ...next, armed: null, commitCount: state.commitCount + 1 };
    case "dwell_cancelled":
      return { ...next, armed: null, cancelCount: state.cancelCount + 1 };
    case "lens":
      return { ...next, lens: msg as LensMsg };
    case "landing":
      return { ...next, landing: msg as LandingMsg };
    case "zone_stats":
      return { ...next, zoneStats: msg as ZoneStatsMsg };
    default:
      return next; // unknown types are ignored by contract
  }
}

export function applyAll(
  messages: WireMessage[],
  start: UiSessionState = initialState()
): UiSessionState {
  return messages.reduce(applyMessage, start);
}

/** The blue warning circle is shown iff a dwell is armed and unresolved. */
export function warningCircleVisible(state: UiSessionState): boolean {
  return state.armed !== null;
}

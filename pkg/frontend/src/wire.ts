/**
 * NDJSON wire protocol shared with the engine. One JSON object per message;
 * "t" and "type" are always present, unknown fields must be ignored.
 */

export interface RectSpec {
  x: number;
  y: number;
  w: number;
  h: number;
}

export interface MapStateMsg {
  t: number;
  type: "map_state";
  focus_x: number;
  focus_y: number;
  zoom_index: number;
  zoom_factor: number;
  pan_step: number;
  overview_w: number;
  overview_h: number;
  rect: RectSpec;
  /** only present on the hello message */
  layout?: Record<string, RectSpec>;
}

export interface FixMsg {
  t: number;
  type: "fix_provisional" | "fix_start" | "fix_update" | "fix_end";
  seq: number;
  start: number;
  end: number;
  x: number;
  y: number;
  n: number;
  dispersion: number;
  pupil: number | null;
}

export interface DwellMsg {
  t: number;
  type: "dwell_armed" | "dwell_committed" | "dwell_cancelled";
  zone: string;
  x?: number;
  y?: number;
}

export interface LensMsg {
  t: number;
  type: "lens";
  x: number;
  y: number;
  radius: number;
  ramp: number;
  active: boolean;
}

export interface LandingMsg {
  t: number;
  type: "landing";
  x: number;
  y: number;
  onset_x: number;
  onset_y: number;
  peak_x: number;
  peak_y: number;
  peak_speed: number;
}

export interface ZoneStatsMsg {
  t: number;
  type: "zone_stats";
  zones: Array<{
    id: string;
    fixations: number;
    total_ms: number;
    mean_pupil: number | null;
  }>;
}

export type WireMessage =
  | MapStateMsg
  | FixMsg
  | DwellMsg
  | LensMsg
  | LandingMsg
  | ZoneStatsMsg;

export interface GazeUpstream {
  type: "gaze";
  t: number;
  x: number;
  y: number;
  pupil: number | null;
  valid: boolean;
}

export function parseWireLine(line: string): WireMessage | null {
  const trimmed = line.trim();
  if (!trimmed) return null;
  const obj = JSON.parse(trimmed);
  if (typeof obj.type !== "string" || typeof obj.t !== "number") {
    throw new Error(`malformed wire message: ${trimmed.slice(0, 80)}`);
  }
  return obj as WireMessage;
}

export function parseTranscript(text: string): WireMessage[] {
  const out: WireMessage[] = [];
  for (const line of text.split("\n")) {
    const msg = parseWireLine(line);
    if (msg) out.push(msg);
  }
  return out;
}

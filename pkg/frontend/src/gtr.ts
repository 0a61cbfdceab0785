/**
 * Parser for the engine's tab-separated trace format (.gtr), read-only: the
 * playback view consumes recorded sessions, it never writes them.
 */

export interface GazeRec {
  kind: "GAZE";
  t: number;
  x: number;
  y: number;
  pupil: number | null;
  valid: boolean;
}

export interface PointerRec {
  kind: "POINTER";
  t: number;
  x: number;
  y: number;
}

export interface FixRec {
  kind: "FIX";
  t: number;
  end: number;
  x: number;
  y: number;
  n: number;
  dispersion: number;
  pupil: number | null;
}

export interface ZoneRec {
  kind: "ZONE";
  t: number;
  id: string;
  x: number;
  y: number;
  w: number;
  h: number;
  label: string;
}

export interface SegRec {
  kind: "SEG";
  t: number;
  label: string;
  end: number;
}

export interface EventRec {
  kind: "EVENT";
  t: number;
  source: string;
  name: string;
  detail: string;
}

export interface FrameRec {
  kind: "FRAME";
  t: number;
  ref: string;
}

export interface OtherRec {
  kind: "OTHER";
  t: number;
  rawKind: string;
  fields: string[];
}

export type TraceRec =
  | GazeRec
  | PointerRec
  | FixRec
  | ZoneRec
  | SegRec
  | EventRec
  | FrameRec
  | OtherRec;

export class GtrParseError extends Error {
  constructor(message: string, public readonly lineNo: number) {
    super(`line ${lineNo}: ${message}`);
  }
}

function num(token: string, what: string, lineNo: number): number {
  const v = Number(token);
  if (token === "" || Number.isNaN(v)) {
    throw new GtrParseError(`bad ${what} ${JSON.stringify(token)}`, lineNo);
  }
  return v;
}

function opt(token: string, what: string, lineNo: number): number | null {
  return token === "-" ? null : num(token, what, lineNo);
}

function need(fields: string[], n: number, kind: string, lineNo: number): void {
  if (fields.length !== n) {
    throw new GtrParseError(`${kind} record needs ${n} fields, got ${fields.length}`, lineNo);
  }
}

export function parseGtrLine(line: string, lineNo: number): TraceRec {
  const parts = line.replace(/\n$/, "").split("\t");
  if (parts.length < 2) {
    throw new GtrParseError("record needs a timestamp and a kind", lineNo);
  }
  if (!/^-?\d+$/.test(parts[0])) {
    throw new GtrParseError(`bad timestamp ${JSON.stringify(parts[0])}`, lineNo);
  }
  const t = Number(parts[0]);
  const kind = parts[1];
  const f = parts.slice(2);
  switch (kind) {
    case "GAZE":
      need(f, 4, kind, lineNo);
      return {
        kind, t,
        x: num(f[0], "x", lineNo),
        y: num(f[1], "y", lineNo),
        pupil: opt(f[2], "pupil", lineNo),
        valid: f[3] === "1",
      };
    case "POINTER":
      need(f, 2, kind, lineNo);
      return { kind, t, x: num(f[0], "x", lineNo), y: num(f[1], "y", lineNo) };
    case "FIX":
      need(f, 6, kind, lineNo);
      return {
        kind, t,
        end: num(f[0], "end", lineNo),
        x: num(f[1], "x", lineNo),
        y: num(f[2], "y", lineNo),
        n: num(f[3], "n", lineNo),
        dispersion: num(f[4], "dispersion", lineNo),
        pupil: opt(f[5], "pupil", lineNo),
      };
    case "ZONE":
      need(f, 6, kind, lineNo);
      return {
        kind, t, id: f[0],
        x: num(f[1], "x", lineNo),
        y: num(f[2], "y", lineNo),
        w: num(f[3], "w", lineNo),
        h: num(f[4], "h", lineNo),
        label: f[5],
      };
    case "SEG":
      need(f, 2, kind, lineNo);
      return { kind, t, label: f[0], end: num(f[1], "end", lineNo) };
    case "EVENT":
      need(f, 3, kind, lineNo);
      return { kind, t, source: f[0], name: f[1], detail: f[2] };
    case "FRAME":
      need(f, 1, kind, lineNo);
      return { kind, t, ref: f[0] };
    default:
      return { kind: "OTHER", t, rawKind: kind, fields: f };
  }
}

export function parseGtr(text: string): TraceRec[] {
  const out: TraceRec[] = [];
  const lines = text.split("\n");
  for (let i = 0; i < lines.length; i++) {
    if (lines[i].trim() === "") continue;
    out.push(parseGtrLine(lines[i], i + 1));
  }
  return out;
}

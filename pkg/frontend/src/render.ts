/**
 * Canvas rendering for both modes. Everything here projects state produced
 * elsewhere (engine messages or trace records) onto the screen; no gaze
 * logic lives in the renderer.
 */

import type { Frame, FalloffMode } from "./lens.js";
import { boxBlur, compositeLens } from "./lens.js";
import type { RectSpec } from "./wire.js";
import type { UiSessionState } from "./state.js";
import type { PlaybackView } from "./playback.js";
import { fixationGlyphGeometry, segmentsAt } from "./playback.js";

/** Map bitmap oversampling vs overview coordinates, for crisp zoom crops. */
export const MAP_SCALE = 4;

export interface ZoomWindowFrames {
  sharp: Frame;
  degraded: Frame;
  key: string;
}

function frameFromImageData(img: ImageData): Frame {
  return { width: img.width, height: img.height, data: img.data };
}

/** Render the current map crop into the zoom window size and pre-blur it. */
export function buildZoomFrames(
  map: HTMLCanvasElement,
  rect: RectSpec,
  widget: RectSpec,
  key: string
): ZoomWindowFrames {
  const w = Math.round(widget.w);
  const h = Math.round(widget.h);
  const scratch = document.createElement("canvas");
  scratch.width = w;
  scratch.height = h;
  const ctx = scratch.getContext("2d")!;
  ctx.imageSmoothingEnabled = true;
  ctx.drawImage(
    map,
    rect.x * MAP_SCALE,
    rect.y * MAP_SCALE,
    rect.w * MAP_SCALE,
    rect.h * MAP_SCALE,
    0,
    0,
    w,
    h
  );
  const sharp = frameFromImageData(ctx.getImageData(0, 0, w, h));
  const degraded = boxBlur(sharp, 6);
  return { sharp, degraded, key };
}

function drawButton(
  ctx: CanvasRenderingContext2D,
  rect: RectSpec,
  label: string,
  emphasized = false
): void {
  ctx.fillStyle = emphasized ? "#b8c4cc" : "#d4d4d4"; // control buttons in grey
  ctx.fillRect(rect.x, rect.y, rect.w, rect.h);
  ctx.strokeStyle = "#888";
  ctx.strokeRect(rect.x + 0.5, rect.y + 0.5, rect.w - 1, rect.h - 1);
  ctx.fillStyle = "#222";
  ctx.font = "16px sans-serif";
  ctx.textAlign = "center";
  ctx.textBaseline = "middle";
  ctx.fillText(label, rect.x + rect.w / 2, rect.y + rect.h / 2);
}

const BUTTON_LABELS: Record<string, string> = {
  pan_left: "◀",
  pan_right: "▶",
  pan_up: "▲",
  pan_down: "▼",
};

export function renderLive(
  ctx: CanvasRenderingContext2D,
  state: UiSessionState,
  map: HTMLCanvasElement,
  zoomFrames: ZoomWindowFrames | null,
  lensMode: FalloffMode,
  lensEnabled: boolean
): void {
  const { width, height } = ctx.canvas;
  ctx.clearRect(0, 0, width, height);
  ctx.fillStyle = "#f4f4f0";
  ctx.fillRect(0, 0, width, height);
  if (!state.layout || !state.mapState) {
    ctx.fillStyle = "#555";
    ctx.font = "20px sans-serif";
    ctx.textAlign = "center";
    ctx.fillText("waiting for engine…", width / 2, height / 2);
    return;
  }
  const layout = state.layout;
  const ms = state.mapState;

  for (const [name, rect] of Object.entries(layout)) {
    if (name.startsWith("zoom_") && name !== "zoom_window") {
      const idx = Number(name.slice(5));
      drawButton(ctx, rect, `×${idx}`, ms.zoom_index === idx - 1);
    } else if (name in BUTTON_LABELS) {
      drawButton(ctx, rect, BUTTON_LABELS[name]);
    }
  }

  // overview: whole map + black view rectangle
  const ov = layout["overview"];
  if (ov) {
    ctx.drawImage(map, 0, 0, map.width, map.height, ov.x, ov.y, ov.w, ov.h);
    ctx.strokeStyle = "#555";
    ctx.strokeRect(ov.x + 0.5, ov.y + 0.5, ov.w - 1, ov.h - 1);
    const sx = ov.w / ms.overview_w;
    const sy = ov.h / ms.overview_h;
    ctx.strokeStyle = "#000";
    ctx.lineWidth = 2;
    ctx.strokeRect(
      ov.x + ms.rect.x * sx,
      ov.y + ms.rect.y * sy,
      ms.rect.w * sx,
      ms.rect.h * sy
    );
    ctx.lineWidth = 1;
  }

  // zoom window: cropped map, with the lens composited over it
  const zw = layout["zoom_window"];
  if (zw && zoomFrames) {
    let frame = zoomFrames.sharp;
    if (lensEnabled) {
      const region = state.lens
        ? {
            x: state.lens.x - zw.x,
            y: state.lens.y - zw.y,
            radius: state.lens.radius,
            ramp: state.lens.ramp,
            active: state.lens.active,
          }
        : { x: 0, y: 0, radius: 0, ramp: 0, active: false };
      frame = compositeLens(zoomFrames.sharp, zoomFrames.degraded, region, lensMode);
    }
    ctx.putImageData(
      new ImageData(new Uint8ClampedArray(frame.data), frame.width, frame.height),
      Math.round(zw.x),
      Math.round(zw.y)
    );
    ctx.strokeStyle = "#555";
    ctx.strokeRect(zw.x + 0.5, zw.y + 0.5, zw.w - 1, zw.h - 1);
  }

  // fixation markers from the engine
  for (const fix of state.fixations) {
    if (!fix.confirmed) continue;
    ctx.strokeStyle = fix.ended ? "rgba(60,60,60,0.35)" : "rgba(200,60,40,0.8)";
    ctx.lineWidth = 2;
    ctx.beginPath();
    ctx.arc(fix.x, fix.y, Math.max(6, 6 + fix.dispersion), 0, Math.PI * 2);
    ctx.stroke();
    ctx.lineWidth = 1;
  }

  // landing prediction: where the lens will pre-position
  if (state.landing) {
    const { x, y } = state.landing;
    ctx.strokeStyle = "#7a3fbf";
    ctx.beginPath();
    ctx.moveTo(x - 10, y);
    ctx.lineTo(x + 10, y);
    ctx.moveTo(x, y - 10);
    ctx.lineTo(x, y + 10);
    ctx.stroke();
  }

  // dwell warning: blue circle around the armed point
  if (state.armed) {
    ctx.strokeStyle = "#1f5fd0";
    ctx.lineWidth = 3;
    ctx.beginPath();
    ctx.arc(state.armed.x, state.armed.y, 26, 0, Math.PI * 2);
    ctx.stroke();
    ctx.lineWidth = 1;
  }
}

export function renderPlayback(
  ctx: CanvasRenderingContext2D,
  view: PlaybackView
): void {
  const { width, height } = ctx.canvas;
  ctx.clearRect(0, 0, width, height);
  ctx.fillStyle = "#20242a";
  ctx.fillRect(0, 0, width, height);

  for (const zone of view.zones) {
    ctx.strokeStyle = "#4a90d9";
    ctx.strokeRect(zone.x, zone.y, zone.w, zone.h);
    ctx.fillStyle = "#4a90d9";
    ctx.font = "13px sans-serif";
    ctx.textAlign = "left";
    ctx.fillText(zone.label || zone.id, zone.x + 4, zone.y + 16);
  }

  // gaze trail fades towards its tail
  view.trail.forEach((g, i) => {
    const alpha = (i + 1) / view.trail.length;
    ctx.fillStyle = `rgba(120,200,120,${0.15 + 0.6 * alpha})`;
    ctx.beginPath();
    ctx.arc(g.x, g.y, 3, 0, Math.PI * 2);
    ctx.fill();
  });

  // fixation markers: size = dispersion, ring = duration, dot = pupil
  for (const fix of view.fixations) {
    const geo = fixationGlyphGeometry(fix);
    ctx.strokeStyle = "rgba(240,170,60,0.9)";
    ctx.lineWidth = geo.ring;
    ctx.beginPath();
    ctx.arc(fix.x, fix.y, geo.radius, 0, Math.PI * 2);
    ctx.stroke();
    ctx.lineWidth = 1;
    if (geo.dot > 0) {
      ctx.fillStyle = "rgba(240,170,60,0.9)";
      ctx.beginPath();
      ctx.arc(fix.x, fix.y, geo.dot, 0, Math.PI * 2);
      ctx.fill();
    }
  }

  if (view.pointer) {
    ctx.strokeStyle = "#d0d0d0";
    ctx.beginPath();
    ctx.moveTo(view.pointer.x - 8, view.pointer.y);
    ctx.lineTo(view.pointer.x + 8, view.pointer.y);
    ctx.moveTo(view.pointer.x, view.pointer.y - 8);
    ctx.lineTo(view.pointer.x, view.pointer.y + 8);
    ctx.stroke();
  }

  ctx.fillStyle = "#e8e8e8";
  ctx.font = "14px sans-serif";
  ctx.textAlign = "left";
  const segs = segmentsAt(view).map((s) => s.label).join(", ");
  ctx.fillText(
    `t = ${(view.cursorMs / 1000).toFixed(2)} s` +
      (segs ? `   [${segs}]` : "") +
      (view.blink ? "   (blink)" : "") +
      (view.frameRef ? `   frame: ${view.frameRef}` : ""),
    12,
    height - 14
  );
}

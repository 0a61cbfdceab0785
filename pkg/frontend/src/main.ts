/**
 * App bootstrap: connects to the engine's websocket bridge, runs the
 * pointer-as-gaze sampler in live mode, and the trace player in playback
 * mode. The pointer here is an explicit eye-tracker surrogate; see
 * PointerSampler for the adapter seam a real tracker would use.
 */

import { applyMessage, initialState, UiSessionState } from "./state.js";
import { parseWireLine } from "./wire.js";
import type { FalloffMode } from "./lens.js";
import { makeMapCanvas } from "./mapimage.js";
import { buildZoomFrames, MAP_SCALE, renderLive, renderPlayback, ZoomWindowFrames } from "./render.js";
import { PointerSampler } from "./pointer.js";
import { parseGtr } from "./gtr.js";
import { PlaybackTimeline } from "./playback.js";

type Mode = "live" | "playback";

const canvas = document.getElementById("screen") as HTMLCanvasElement;
const ctx = canvas.getContext("2d")!;
const statusEl = document.getElementById("status")!;
const modeButtons = document.querySelectorAll<HTMLButtonElement>("[data-mode]");
const falloffSelect = document.getElementById("falloff") as HTMLSelectElement;
const lensToggle = document.getElementById("lens-enabled") as HTMLInputElement;
const fileInput = document.getElementById("trace-file") as HTMLInputElement;
const playButton = document.getElementById("play") as HTMLButtonElement;
const speedSelect = document.getElementById("speed") as HTMLSelectElement;
const seekSlider = document.getElementById("seek") as HTMLInputElement;
const statsButton = document.getElementById("zone-stats") as HTMLButtonElement;
const statsPanel = document.getElementById("stats-panel")!;

let mode: Mode = "live";
let state: UiSessionState = initialState();
let socket: WebSocket | null = null;
let map: HTMLCanvasElement | null = null;
let zoomFrames: ZoomWindowFrames | null = null;
let timeline: PlaybackTimeline | null = null;
let playing = false;
let lastFrameAt = 0;
let retryDelayMs = 500;

const sampler = new PointerSampler(60, (msg) => {
  // playback mode must never push gaze upstream
  if (mode === "live" && socket && socket.readyState === WebSocket.OPEN) {
    socket.send(JSON.stringify(msg));
  }
});

function setStatus(text: string, ok: boolean): void {
  statusEl.textContent = text;
  statusEl.className = ok ? "ok" : "bad";
}

function connect(): void {
  const url = `ws://${location.host}/ws`;
  socket = new WebSocket(url);
  socket.onopen = () => {
    setStatus("connected", true);
    retryDelayMs = 500;
    sampler.start();
  };
  socket.onmessage = (ev) => {
    const msg = parseWireLine(String(ev.data));
    if (msg) state = applyMessage(state, msg);
    if (msg && msg.type === "zone_stats") renderStats();
  };
  socket.onclose = () => {
    // visible state change + bounded exponential retry
    setStatus(`disconnected, retrying in ${retryDelayMs / 1000}s`, false);
    sampler.stop();
    socket = null;
    setTimeout(connect, retryDelayMs);
    retryDelayMs = Math.min(retryDelayMs * 2, 8000);
  };
}

function ensureZoomFrames(): void {
  if (!state.mapState || !state.layout || !map) return;
  const widget = state.layout["zoom_window"];
  if (!widget) return;
  const r = state.mapState.rect;
  const key = `${r.x},${r.y},${r.w},${r.h},${widget.w}`;
  if (!zoomFrames || zoomFrames.key !== key) {
    zoomFrames = buildZoomFrames(map, r, widget, key);
  }
}

function ensureMap(): void {
  if (!map && state.mapState) {
    map = makeMapCanvas(
      Math.round(state.mapState.overview_w * MAP_SCALE),
      Math.round(state.mapState.overview_h * MAP_SCALE)
    );
  }
}

function renderStats(): void {
  if (!state.zoneStats) return;
  const rows = state.zoneStats.zones
    .filter((z) => z.fixations > 0)
    .sort((a, b) => b.total_ms - a.total_ms)
    .map(
      (z) =>
        `<tr><td>${z.id}</td><td>${z.fixations}</td>` +
        `<td>${z.total_ms.toFixed(0)} ms</td></tr>`
    )
    .join("");
  statsPanel.innerHTML =
    "<table><tr><th>zone</th><th>fixations</th><th>total</th></tr>" +
    (rows || "<tr><td colspan=3>no fixations yet</td></tr>") +
    "</table>";
}

function frame(now: number): void {
  const dt = lastFrameAt ? now - lastFrameAt : 0;
  lastFrameAt = now;
  if (mode === "live") {
    ensureMap();
    ensureZoomFrames();
    if (map) {
      renderLive(
        ctx,
        state,
        map,
        zoomFrames,
        falloffSelect.value as FalloffMode,
        lensToggle.checked
      );
    }
  } else if (timeline) {
    if (playing) {
      const speed = speedSelect.value === "max" ? Infinity : Number(speedSelect.value);
      if (speed === Infinity) {
        timeline.advanceTo(timeline.durationMs);
        playing = false;
      } else {
        timeline.advanceTo(timeline.view.cursorMs + dt * speed);
        if (timeline.atEnd()) playing = false;
      }
      seekSlider.value = String(timeline.view.cursorMs);
      playButton.textContent = playing ? "Pause" : "Play";
    }
    renderPlayback(ctx, timeline.view);
  } else {
    renderPlayback(ctx, new PlaybackTimeline([]).view);
  }
  requestAnimationFrame(frame);
}

// pointer-as-gaze input over the whole screen canvas
canvas.addEventListener("pointermove", (ev) => {
  const bounds = canvas.getBoundingClientRect();
  sampler.updatePosition(
    ((ev.clientX - bounds.left) / bounds.width) * canvas.width,
    ((ev.clientY - bounds.top) / bounds.height) * canvas.height
  );
});

// hold B to simulate a blink (invalid samples)
window.addEventListener("keydown", (ev) => {
  if (ev.key === "b" || ev.key === "B") sampler.blink = true;
});
window.addEventListener("keyup", (ev) => {
  if (ev.key === "b" || ev.key === "B") sampler.blink = false;
});

modeButtons.forEach((btn) =>
  btn.addEventListener("click", () => {
    mode = btn.dataset.mode as Mode;
    modeButtons.forEach((b) => b.classList.toggle("active", b === btn));
    document.body.dataset.mode = mode;
    if (mode === "playback") sampler.stop();
    else if (socket && socket.readyState === WebSocket.OPEN) sampler.start();
  })
);

fileInput.addEventListener("change", async () => {
  const file = fileInput.files?.[0];
  if (!file) return;
  try {
    timeline = new PlaybackTimeline(parseGtr(await file.text()));
    seekSlider.max = String(timeline.durationMs);
    seekSlider.value = "0";
    playing = false;
    setStatus(`loaded ${file.name} (${timeline.records.length} records)`, true);
  } catch (err) {
    setStatus(String(err), false);
  }
});

playButton.addEventListener("click", () => {
  if (!timeline) return;
  if (timeline.atEnd()) timeline.seek(0);
  playing = !playing;
  playButton.textContent = playing ? "Pause" : "Play";
});

seekSlider.addEventListener("input", () => {
  timeline?.seek(Number(seekSlider.value));
});

statsButton.addEventListener("click", () => {
  socket?.send(JSON.stringify({ type: "zone_stats", t: state.lastT }));
});

connect();
requestAnimationFrame(frame);

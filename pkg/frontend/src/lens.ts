/**
 * Lens compositing over raw RGBA buffers (canvas-free, so it is testable
 * headlessly and usable on OffscreenCanvas data alike).
 *
 * Step mode: pixels strictly inside the circle are copied from the sharp
 * source byte-for-byte, everything else from the degraded frame. Smooth
 * mode ramps linearly between them across the ramp band.
 */

export interface Frame {
  width: number;
  height: number;
  /** RGBA, length = width * height * 4 */
  data: Uint8ClampedArray;
}

export interface LensRegionSpec {
  x: number;
  y: number;
  radius: number;
  ramp: number;
  active: boolean;
}

export type FalloffMode = "step" | "smooth";

export function makeFrame(width: number, height: number): Frame {
  return { width, height, data: new Uint8ClampedArray(width * height * 4) };
}

/**
 * Sharpness weight at distance d: 1 inside the circle, 0 past the ramp,
 * linear in between. With ramp 0 this degenerates to the step function.
 */
export function falloffWeight(d: number, radius: number, ramp: number): number {
  if (d <= radius) return 1;
  if (ramp <= 0 || d >= radius + ramp) return 0;
  return 1 - (d - radius) / ramp;
}

/** Ramp width used when smooth mode is toggled but the engine sent none. */
export function effectiveRamp(region: LensRegionSpec, mode: FalloffMode): number {
  if (mode === "step") return 0;
  return region.ramp > 0 ? region.ramp : region.radius / 2;
}

/**
 * Blend sharp and degraded frames around the region. Weight-1 pixels are
 * copied from the source untouched (bit-identical); weight-0 pixels from the
 * degraded frame; the ramp blends with rounding.
 *
 * An inactive region (no fixation seen yet) degrades the whole frame.
 */
export function compositeLens(
  sharp: Frame,
  degraded: Frame,
  region: LensRegionSpec,
  mode: FalloffMode,
  out?: Frame
): Frame {
  if (
    sharp.width !== degraded.width ||
    sharp.height !== degraded.height ||
    sharp.data.length !== degraded.data.length
  ) {
    throw new Error("frame dimensions differ");
  }
  const result = out ?? makeFrame(sharp.width, sharp.height);
  const dst = result.data;
  if (!region.active) {
    dst.set(degraded.data);
    return result;
  }
  const ramp = effectiveRamp(region, mode);
  const rOut = region.radius + ramp;
  const s = sharp.data;
  const g = degraded.data;
  for (let py = 0; py < sharp.height; py++) {
    const dy = py + 0.5 - region.y;
    for (let px = 0; px < sharp.width; px++) {
      const dx = px + 0.5 - region.x;
      const d = Math.sqrt(dx * dx + dy * dy);
      const i = (py * sharp.width + px) * 4;
      if (d <= region.radius) {
        dst[i] = s[i];
        dst[i + 1] = s[i + 1];
        dst[i + 2] = s[i + 2];
        dst[i + 3] = s[i + 3];
      } else if (d >= rOut) {
        dst[i] = g[i];
        dst[i + 1] = g[i + 1];
        dst[i + 2] = g[i + 2];
        dst[i + 3] = g[i + 3];
      } else {
        const w = falloffWeight(d, region.radius, ramp);
        dst[i] = Math.round(s[i] * w + g[i] * (1 - w));
        dst[i + 1] = Math.round(s[i + 1] * w + g[i + 1] * (1 - w));
        dst[i + 2] = Math.round(s[i + 2] * w + g[i + 2] * (1 - w));
        dst[i + 3] = Math.round(s[i + 3] * w + g[i + 3] * (1 - w));
      }
    }
  }
  return result;
}

/**
 * Separable box blur, used to produce the degraded frame once per map view
 * (not per gaze sample).
 */
export function boxBlur(src: Frame, radius: number): Frame {
  if (radius <= 0) {
    return { width: src.width, height: src.height, data: src.data.slice() };
  }
  const { width, height } = src;
  const tmp = new Float32Array(src.data.length);
  const out = makeFrame(width, height);
  const win = radius * 2 + 1;

  // horizontal pass
  for (let y = 0; y < height; y++) {
    for (let c = 0; c < 4; c++) {
      let acc = 0;
      for (let x = -radius; x <= radius; x++) {
        acc += src.data[(y * width + clamp(x, width)) * 4 + c];
      }
      for (let x = 0; x < width; x++) {
        tmp[(y * width + x) * 4 + c] = acc / win;
        acc -= src.data[(y * width + clamp(x - radius, width)) * 4 + c];
        acc += src.data[(y * width + clamp(x + radius + 1, width)) * 4 + c];
      }
    }
  }
  // vertical pass
  for (let x = 0; x < width; x++) {
    for (let c = 0; c < 4; c++) {
      let acc = 0;
      for (let y = -radius; y <= radius; y++) {
        acc += tmp[(clamp(y, height) * width + x) * 4 + c];
      }
      for (let y = 0; y < height; y++) {
        out.data[(y * width + x) * 4 + c] = Math.round(acc / win);
        acc -= tmp[(clamp(y - radius, height) * width + x) * 4 + c];
        acc += tmp[(clamp(y + radius + 1, height) * width + x) * 4 + c];
      }
    }
  }
  return out;
}

function clamp(i: number, n: number): number {
  return i < 0 ? 0 : i >= n ? n - 1 : i;
}

/**
 * Procedural raster map so the demo ships no binary assets: a deterministic
 * street grid with parks, water and landmark blocks, drawn once into an
 * offscreen canvas. The same seed always yields the same map.
 */

export function mulberry32(seed: number): () => number {
  let a = seed >>> 0;
  return () => {
    a |= 0;
    a = (a + 0x6d2b79f5) | 0;
    let t = Math.imul(a ^ (a >>> 15), 1 | a);
    t = (t + Math.imul(t ^ (t >>> 7), 61 | t)) ^ t;
    return ((t ^ (t >>> 14)) >>> 0) / 4294967296;
  };
}

export function drawMap(
  ctx: CanvasRenderingContext2D,
  width: number,
  height: number,
  seed = 1859
): void {
  const rnd = mulberry32(seed);

  ctx.fillStyle = "#e8e4d8"; // paper background
  ctx.fillRect(0, 0, width, height);

  // river: a wavy band crossing the map
  ctx.strokeStyle = "#9ec7e8";
  ctx.lineWidth = height * 0.06;
  ctx.beginPath();
  const riverY = height * (0.3 + rnd() * 0.4);
  ctx.moveTo(-20, riverY);
  for (let x = 0; x <= width + 40; x += width / 8) {
    ctx.lineTo(x, riverY + Math.sin(x / width * Math.PI * 3) * height * 0.1 + (rnd() - 0.5) * 20);
  }
  ctx.stroke();

  // parks
  ctx.fillStyle = "#bcd6a2";
  for (let i = 0; i < 14; i++) {
    const w = width * (0.03 + rnd() * 0.08);
    const h = height * (0.03 + rnd() * 0.08);
    ctx.fillRect(rnd() * (width - w), rnd() * (height - h), w, h);
  }

  // street grid with slight jitter
  ctx.strokeStyle = "#ffffff";
  ctx.lineWidth = 3;
  const step = Math.max(24, Math.floor(width / 36));
  for (let x = step / 2; x < width; x += step) {
    ctx.beginPath();
    ctx.moveTo(x + (rnd() - 0.5) * 6, 0);
    ctx.lineTo(x + (rnd() - 0.5) * 6, height);
    ctx.stroke();
  }
  for (let y = step / 2; y < height; y += step) {
    ctx.beginPath();
    ctx.moveTo(0, y + (rnd() - 0.5) * 6);
    ctx.lineTo(width, y + (rnd() - 0.5) * 6);
    ctx.stroke();
  }

  // avenues
  ctx.strokeStyle = "#f4c26b";
  ctx.lineWidth = 7;
  for (let i = 0; i < 4; i++) {
    ctx.beginPath();
    ctx.moveTo(rnd() * width, 0);
    ctx.lineTo(rnd() * width, height);
    ctx.stroke();
    ctx.beginPath();
    ctx.moveTo(0, rnd() * height);
    ctx.lineTo(width, rnd() * height);
    ctx.stroke();
  }

  // landmark blocks + labels
  const labels = ["Gare", "Place", "Campus", "Halles", "Parc", "Pont", "Musée", "Port"];
  ctx.font = `${Math.max(10, width / 64)}px sans-serif`;
  for (let i = 0; i < labels.length; i++) {
    const x = rnd() * (width - 80) + 20;
    const y = rnd() * (height - 60) + 30;
    ctx.fillStyle = "#c96f53";
    ctx.fillRect(x, y, width * 0.025, width * 0.02);
    ctx.fillStyle = "#333";
    ctx.fillText(labels[i], x + width * 0.03, y + width * 0.015);
  }
}

export function makeMapCanvas(width: number, height: number, seed = 1859): HTMLCanvasElement {
  const canvas = document.createElement("canvas");
  canvas.width = width;
  canvas.height = height;
  const ctx = canvas.getContext("2d");
  if (!ctx) throw new Error("2d context unavailable");
  drawMap(ctx, width, height, seed);
  return canvas;
}

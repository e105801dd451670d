/**
 * Canvas painter: immediate-mode drawing of a scene over the court
 * overlay. The world viewport includes the bench strip below the sideline
 * (y < 0) and is mapped with a uniform scale, so the 28:15 court stays
 * true-proportioned on any canvas.
 */

import type { Scene } from './scene.js';
import type { CourtInfo, OccupancyGridWire } from './types.js';

const WORLD_PAD_M = 1.0;
const BENCH_DEPTH_M = 2.5;
const COURT_LINE = '#444444';
const COURT_FILL = '#f7f3e8';
const BENCH_FILL = '#ececec';

export interface Transform {
  scale: number;
  offsetX: number;
  offsetY: number;
  worldH: number;
}

export function courtTransform(
  court: CourtInfo,
  widthPx: number,
  heightPx: number,
): Transform {
  const worldW = court.length_m + 2 * WORLD_PAD_M;
  const worldH = court.width_m + WORLD_PAD_M + BENCH_DEPTH_M;
  const scale = Math.min(widthPx / worldW, heightPx / worldH);
  return {
    scale,
    offsetX: (widthPx - worldW * scale) / 2 + WORLD_PAD_M * scale,
    offsetY: (heightPx - worldH * scale) / 2 + WORLD_PAD_M * scale,
    worldH,
  };
}

/** Court meters -> canvas pixels (width axis points up on screen). */
export function toPx(t: Transform, x: number, y: number, court: CourtInfo): [number, number] {
  return [t.offsetX + x * t.scale, t.offsetY + (court.width_m - y) * t.scale];
}

export function paintCourt(
  ctx: CanvasRenderingContext2D,
  court: CourtInfo,
  t: Transform,
  underlay: OccupancyGridWire | null = null,
): void {
  const [x0, y0] = toPx(t, 0, court.width_m, court);
  const w = court.length_m * t.scale;
  const h = court.width_m * t.scale;

  ctx.fillStyle = BENCH_FILL;
  const [bx, by] = toPx(t, 0, 0, court);
  ctx.fillRect(bx, by, w, BENCH_DEPTH_M * t.scale);

  ctx.fillStyle = COURT_FILL;
  ctx.fillRect(x0, y0, w, h);

  if (underlay !== null) {
    paintHeatmapUnderlay(ctx, court, t, underlay);
  }

  ctx.strokeStyle = COURT_LINE;
  ctx.lineWidth = 1.5;
  ctx.strokeRect(x0, y0, w, h);
  // midcourt line
  const [mx0, my0] = toPx(t, court.length_m / 2, 0, court);
  const [mx1, my1] = toPx(t, court.length_m / 2, court.width_m, court);
  ctx.beginPath();
  ctx.moveTo(mx0, my0);
  ctx.lineTo(mx1, my1);
  ctx.stroke();
  // baskets
  for (const [bx2, by2] of court.baskets) {
    const [px, py] = toPx(t, bx2, by2, court);
    ctx.beginPath();
    ctx.arc(px, py, 0.45 * t.scale, 0, 2 * Math.PI);
    ctx.stroke();
  }
}

function heatColor(fraction: number): string {
  // white -> yellow -> red, matching the engine's ramp
  const f = Math.min(Math.max(fraction, 0), 1);
  if (f < 0.5) {
    const g = f * 2;
    return `rgba(255, 255, ${Math.round(255 * (1 - g))}, ${0.25 + 0.35 * g})`;
  }
  const g = (f - 0.5) * 2;
  return `rgba(255, ${Math.round(255 * (1 - g))}, 0, ${0.6})`;
}

function paintHeatmapUnderlay(
  ctx: CanvasRenderingContext2D,
  court: CourtInfo,
  t: Transform,
  grid: OccupancyGridWire,
): void {
  let max = 0;
  for (const row of grid.values) {
    for (const v of row) {
      if (v > max) max = v;
    }
  }
  if (max === 0) return;
  const { origin, cell_size_m: cell, n_rows, n_cols } = grid.grid;
  for (let r = 0; r < n_rows; r += 1) {
    for (let c = 0; c < n_cols; c += 1) {
      const v = grid.values[r][c];
      if (v === 0) continue;
      const [px, py] = toPx(t, origin[0] + c * cell, origin[1] + (r + 1) * cell, court);
      ctx.fillStyle = heatColor(v / max);
      ctx.fillRect(px, py, cell * t.scale, cell * t.scale);
    }
  }
}

export function paintScene(
  ctx: CanvasRenderingContext2D,
  scene: Scene,
  court: CourtInfo,
  t: Transform,
): void {
  ctx.lineWidth = 2;
  for (const trail of scene.trails) {
    if (trail.points.length < 2) continue;
    ctx.strokeStyle = trail.color;
    ctx.globalAlpha = 0.45;
    ctx.beginPath();
    trail.points.forEach(([x, y], i) => {
      const [px, py] = toPx(t, x, y, court);
      if (i === 0) ctx.moveTo(px, py);
      else ctx.lineTo(px, py);
    });
    ctx.stroke();
    ctx.globalAlpha = 1;
  }
  for (const bubble of scene.bubbles) {
    const [px, py] = toPx(t, bubble.x, bubble.y, court);
    ctx.fillStyle = bubble.color;
    ctx.beginPath();
    ctx.arc(px, py, bubble.r * t.scale, 0, 2 * Math.PI);
    ctx.fill();
    ctx.fillStyle = '#ffffff';
    ctx.font = `${Math.max(10, 0.45 * t.scale)}px sans-serif`;
    ctx.textAlign = 'center';
    ctx.textBaseline = 'middle';
    ctx.fillText(String(bubble.player), px, py);
  }
  if (scene.notice !== null) {
    ctx.fillStyle = '#b00020';
    ctx.font = '14px sans-serif';
    ctx.textAlign = 'left';
    ctx.fillText(scene.notice, 12, 20);
  }
}

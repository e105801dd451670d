/**
 * Trail extraction: a player's recent path, split where the player was
 * absent so the polyline breaks at tracking gaps.
 */

import type { MotionFrameWire, Point } from './types.js';

/**
 * Positions of one player over (playheadMs - windowMs, playheadMs], in
 * chronological order, as polyline segments. A frame without the player
 * ends the current segment. The frame exactly at the playhead is always
 * included, so a zero window yields the single current point. frames must
 * be sorted by t_ms.
 */
export function trailPoints(
  frames: MotionFrameWire[],
  player: number,
  playheadMs: number,
  windowMs: number,
): Point[][] {
  const segments: Point[][] = [];
  let current: Point[] = [];
  for (const frame of frames) {
    const inWindow =
      frame.t_ms === playheadMs ||
      (frame.t_ms > playheadMs - windowMs && frame.t_ms <= playheadMs);
    if (!inWindow) {
      continue;
    }
    const entry = frame.entries.find((e) => e.player === player);
    if (entry === undefined) {
      if (current.length > 0) {
        segments.push(current);
        current = [];
      }
      continue;
    }
    current.push([entry.x, entry.y]);
  }
  if (current.length > 0) {
    segments.push(current);
  }
  return segments;
}

/**
 * Scene construction: the pure mapping from (frame, view state) to what
 * gets drawn. Scenes stay in court coordinates (meters); the canvas
 * painter applies the pixel transform. Replaying the same inputs yields a
 * deep-equal scene.
 */

import { trailPoints } from './trails.js';
import type { ViewState } from './state.js';
import type { MotionFrameWire, Point } from './types.js';

// Bubble radii in court meters; speed sizing saturates at a fast sprint.
export const RADIUS_MIN_M = 0.35;
export const RADIUS_MAX_M = 0.85;
export const RADIUS_CONSTANT_M = 0.45;
export const SPEED_FULL_MPS = 8;

export interface Bubble {
  player: number;
  x: number;
  y: number;
  r: number;
  color: string;
  speed: number | null;
}

export interface TrailSegment {
  player: number;
  color: string;
  points: Point[];
}

export interface Scene {
  tMs: number | null;
  bubbles: Bubble[];
  trails: TrailSegment[];
  phase: string | null;
  notice: string | null;
}

export function bubbleRadius(speed: number | null, sizeBy: ViewState['sizeBy']): number {
  if (sizeBy === 'constant' || speed === null) {
    return RADIUS_CONSTANT_M;
  }
  const v = Math.min(Math.max(speed, 0), SPEED_FULL_MPS);
  return RADIUS_MIN_M + (RADIUS_MAX_M - RADIUS_MIN_M) * (v / SPEED_FULL_MPS);
}

/**
 * Build the scene for the frame under the playhead.
 *
 * frame=null means the playhead is outside the loaded range: the scene is
 * empty apart from a visible notice. trailFrames supplies the recent
 * frames used for trail polylines (ignored unless trails are enabled).
 */
export function buildScene(
  frame: MotionFrameWire | null,
  view: ViewState,
  colors: Map<number, string>,
  trailFrames: MotionFrameWire[] = [],
  phase: string | null = null,
): Scene {
  if (frame === null) {
    return {
      tMs: null,
      bubbles: [],
      trails: [],
      phase: null,
      notice: 'no frame loaded at the playhead',
    };
  }
  const bubbles: Bubble[] = [];
  for (const entry of frame.entries) {
    if (!view.selected.has(entry.player)) {
      continue;
    }
    bubbles.push({
      player: entry.player,
      x: entry.x,
      y: entry.y,
      r: bubbleRadius(entry.speed, view.sizeBy),
      color: colors.get(entry.player) ?? '#000000',
      speed: entry.speed,
    });
  }
  const trails: TrailSegment[] = [];
  if (view.trailsEnabled) {
    for (const bubble of bubbles) {
      for (const points of trailPoints(
        trailFrames,
        bubble.player,
        view.playheadMs,
        view.trailWindowMs,
      )) {
        trails.push({ player: bubble.player, color: bubble.color, points });
      }
    }
  }
  return { tMs: frame.t_ms, bubbles, trails, phase, notice: null };
}

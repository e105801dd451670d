/**
 * Viewer state and its pure transitions.
 *
 * All transitions return a new state object; the render loop and the tests
 * replay them deterministically (scrubbing to t then playing must match
 * continuous playback through t).
 */

export type SizeBy = 'speed' | 'constant';

export interface ViewState {
  selected: ReadonlySet<number>;
  playheadMs: number;
  playing: boolean;
  playbackSpeed: number;
  trailsEnabled: boolean;
  trailWindowMs: number;
  sizeBy: SizeBy;
  rangeStartMs: number;
  rangeEndMs: number; // timestamp of the last loadable frame
}

export function createViewState(
  roster: number[],
  rangeStartMs: number,
  rangeEndMs: number,
): ViewState {
  if (rangeEndMs < rangeStartMs) {
    throw new Error(`empty frame range [${rangeStartMs}, ${rangeEndMs}]`);
  }
  return {
    selected: new Set(roster),
    playheadMs: rangeStartMs,
    playing: false,
    playbackSpeed: 1,
    trailsEnabled: false,
    trailWindowMs: 10_000,
    sizeBy: 'speed',
    rangeStartMs,
    rangeEndMs,
  };
}

/** Advance by wall-clock time scaled by playback speed; pause at range end. */
export function advancePlayhead(view: ViewState, wallDtMs: number): ViewState {
  if (!view.playing || wallDtMs <= 0) {
    return view;
  }
  const next = view.playheadMs + wallDtMs * view.playbackSpeed;
  if (next >= view.rangeEndMs) {
    return { ...view, playheadMs: view.rangeEndMs, playing: false };
  }
  return { ...view, playheadMs: next };
}

export function scrubTo(view: ViewState, tMs: number): ViewState {
  const clamped = Math.min(Math.max(tMs, view.rangeStartMs), view.rangeEndMs);
  return { ...view, playheadMs: clamped };
}

export function setPlaying(view: ViewState, playing: boolean): ViewState {
  if (playing && view.playheadMs >= view.rangeEndMs) {
    // replay from the start when play is pressed at the end
    return { ...view, playheadMs: view.rangeStartMs, playing: true };
  }
  return { ...view, playing };
}

export function setPlaybackSpeed(view: ViewState, speed: number): ViewState {
  if (!(speed > 0)) {
    throw new Error(`playback speed must be positive, got ${speed}`);
  }
  return { ...view, playbackSpeed: speed };
}

export function togglePlayer(view: ViewState, player: number): ViewState {
  const selected = new Set(view.selected);
  if (selected.has(player)) {
    selected.delete(player);
  } else {
    selected.add(player);
  }
  return { ...view, selected };
}

export function setTrails(view: ViewState, enabled: boolean, windowMs?: number): ViewState {
  return {
    ...view,
    trailsEnabled: enabled,
    trailWindowMs: windowMs ?? view.trailWindowMs,
  };
}

export function setSizeBy(view: ViewState, sizeBy: SizeBy): ViewState {
  return { ...view, sizeBy };
}

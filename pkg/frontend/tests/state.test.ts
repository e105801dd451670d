import { describe, expect, it } from 'vitest';

import {
  advancePlayhead,
  createViewState,
  scrubTo,
  setPlaybackSpeed,
  setPlaying,
  togglePlayer,
} from '../src/state.js';

const ROSTER = [1, 2, 3, 4, 5, 6];

function playing(speed = 1) {
  let view = createViewState(ROSTER, 0, 60_000);
  view = setPlaying(view, true);
  return setPlaybackSpeed(view, speed);
}

describe('advancePlayhead', () => {
  it('advances wall time times playback speed', () => {
    const view = advancePlayhead(playing(2), 1000);
    expect(view.playheadMs).toBe(2000);
  });

  it('half speed over 4 s advances 2 s of match time', () => {
    const view = advancePlayhead(playing(0.5), 4000);
    expect(view.playheadMs).toBe(2000);
  });

  it('clamps at range end and pauses', () => {
    let view = playing(4);
    view = advancePlayhead(view, 20_000);
    expect(view.playheadMs).toBe(60_000);
    expect(view.playing).toBe(false);
    const again = advancePlayhead(view, 1000);
    expect(again.playheadMs).toBe(60_000);
  });

  it('does nothing when paused', () => {
    const paused = createViewState(ROSTER, 0, 60_000);
    expect(advancePlayhead(paused, 500)).toBe(paused);
  });

  it('accumulates like continuous playback after a scrub', () => {
    // scrubbing to t then playing equals continuous playback through t
    let continuous = playing(1);
    for (let i = 0; i < 10; i += 1) continuous = advancePlayhead(continuous, 100);
    let scrubbed = scrubTo(playing(1), 500);
    for (let i = 0; i < 5; i += 1) scrubbed = advancePlayhead(scrubbed, 100);
    expect(scrubbed.playheadMs).toBe(continuous.playheadMs);
  });
});

describe('scrubTo', () => {
  it('clamps into the loaded range', () => {
    const view = createViewState(ROSTER, 1000, 5000);
    expect(scrubTo(view, 0).playheadMs).toBe(1000);
    expect(scrubTo(view, 9999).playheadMs).toBe(5000);
    expect(scrubTo(view, 3000).playheadMs).toBe(3000);
  });
});

describe('setPlaying', () => {
  it('restarts from range start when pressed at the end', () => {
    let view = createViewState(ROSTER, 0, 1000);
    view = scrubTo(view, 1000);
    view = setPlaying(view, true);
    expect(view.playheadMs).toBe(0);
    expect(view.playing).toBe(true);
  });
});

describe('setPlaybackSpeed', () => {
  it('rejects non-positive speeds', () => {
    expect(() => setPlaybackSpeed(playing(), 0)).toThrow();
    expect(() => setPlaybackSpeed(playing(), -1)).toThrow();
  });
});

describe('togglePlayer', () => {
  it('removes then restores a player', () => {
    let view = createViewState(ROSTER, 0, 1000);
    view = togglePlayer(view, 3);
    expect(view.selected.has(3)).toBe(false);
    expect(view.selected.size).toBe(5);
    view = togglePlayer(view, 3);
    expect(view.selected.has(3)).toBe(true);
  });

  it('does not mutate the previous state', () => {
    const before = createViewState(ROSTER, 0, 1000);
    togglePlayer(before, 1);
    expect(before.selected.size).toBe(6);
  });
});

describe('createViewState', () => {
  it('rejects an empty range', () => {
    expect(() => createViewState(ROSTER, 100, 0)).toThrow();
  });
});

/**
 * Viewer acceptance against the live analysis service (spawned by
 * globalSetup on a seeded synthetic fixture): scrub/fetch agreement,
 * trail agreement, wall-clock playback scaling, selection behavior.
 */

import { beforeAll, describe, expect, inject, it } from 'vitest';

import { ApiClient } from '../src/api.js';
import { assignColors } from '../src/colors.js';
import { FrameStore } from '../src/frameStore.js';
import { buildScene } from '../src/scene.js';
import {
  advancePlayhead,
  createViewState,
  scrubTo,
  setPlaying,
  setPlaybackSpeed,
  setTrails,
  togglePlayer,
} from '../src/state.js';
import { trailPoints } from '../src/trails.js';
import type { CourtInfo, PlayerInfo } from '../src/types.js';

const api = new ApiClient(inject('apiBaseUrl'));

let court: CourtInfo;
let players: PlayerInfo[];
let roster: number[];
let sessionStart: number;
let sessionEnd: number;

beforeAll(async () => {
  court = await api.court();
  players = await api.players();
  roster = players.map((p) => p.index);
  sessionStart = court.session!.match_start_ms;
  sessionEnd = court.session!.match_end_ms;
});

describe('fixture loads through the service', () => {
  it('reports the 28 x 15 court and a six-player roster', () => {
    expect(court.length_m).toBe(28);
    expect(court.width_m).toBe(15);
    expect(roster).toHaveLength(6);
  });

  it('serves frames for the session range', async () => {
    const stream = await api.frames(sessionStart, sessionStart + 10_000);
    expect(stream.frames).toHaveLength(50); // 10 s at 5 Hz
    expect(stream.header.canvas.width_px / stream.header.canvas.height_px).toBe(2);
  });
});

describe('scrubbing', () => {
  it('shows bubble positions equal to the fetched frame', async () => {
    const store = new FrameStore(api, sessionStart, sessionEnd);
    const colors = assignColors(roster);
    let view = createViewState(roster, sessionStart, sessionEnd);

    for (const offset of [30_000, 95_400, 200_000]) {
      const target = sessionStart + offset;
      view = scrubTo(view, target);
      await store.ensureRange(target, target);
      const scene = buildScene(store.frameAt(view.playheadMs), view, colors);

      // independent fetch of the same instant
      const direct = await api.frames(target - 200, target + 200);
      const reference = [...direct.frames].reverse().find((f) => f.t_ms <= target)!;
      expect(scene.tMs).toBe(reference.t_ms);
      const byPlayer = new Map(reference.entries.map((e) => [e.player, e]));
      for (const bubble of scene.bubbles) {
        const entry = byPlayer.get(bubble.player)!;
        expect(bubble.x).toBeCloseTo(entry.x, 9);
        expect(bubble.y).toBeCloseTo(entry.y, 9);
      }
    }
  });
});

describe('trails', () => {
  it('polyline matches trail_points over a scripted possession window', async () => {
    const store = new FrameStore(api, sessionStart, sessionEnd);
    const colors = assignColors(roster);
    const windowMs = 12_000;
    const playhead = sessionStart + 60_000; // mid first half
    let view = createViewState(roster, sessionStart, sessionEnd);
    view = scrubTo(view, playhead);
    view = setTrails(view, true, windowMs);

    await store.ensureRange(playhead - windowMs, playhead);
    const trailFrames = store.framesBetween(playhead - windowMs, playhead);
    const scene = buildScene(store.frameAt(playhead), view, colors, trailFrames);

    // reference polylines straight from an independent fetch
    const direct = await api.frames(playhead - windowMs, playhead + 200);
    for (const player of roster) {
      const expected = trailPoints(direct.frames, player, playhead, windowMs);
      const mine = scene.trails
        .filter((t) => t.player === player)
        .map((t) => t.points);
      if (scene.bubbles.some((b) => b.player === player)) {
        expect(mine).toEqual(expected);
        const segment = mine[0];
        expect(segment.length).toBeGreaterThan(10); // a real path, not a dot
      }
    }
  });
});

describe('playback', () => {
  it('2x playback advances match time at twice wall time within 5%', async () => {
    let view = createViewState(roster, sessionStart, sessionEnd);
    view = setPlaybackSpeed(setPlaying(view, true), 2);
    const startPlayhead = view.playheadMs;
    const wallStart = performance.now();
    let last = wallStart;
    while (performance.now() - wallStart < 400) {
      await new Promise((resolve) => setTimeout(resolve, 16));
      const now = performance.now();
      view = advancePlayhead(view, now - last);
      last = now;
    }
    const wallElapsed = last - wallStart;
    const matchElapsed = view.playheadMs - startPlayhead;
    expect(matchElapsed / wallElapsed).toBeGreaterThan(2 * 0.95);
    expect(matchElapsed / wallElapsed).toBeLessThan(2 * 1.05);
  });
});

describe('selection', () => {
  it('deselecting a player removes exactly one bubble', async () => {
    const store = new FrameStore(api, sessionStart, sessionEnd);
    const colors = assignColors(roster);
    const target = sessionStart + 45_000;
    await store.ensureRange(target, target);
    const frame = store.frameAt(target)!;

    let view = createViewState(roster, sessionStart, sessionEnd);
    view = scrubTo(view, target);
    const before = buildScene(frame, view, colors);
    const after = buildScene(frame, togglePlayer(view, roster[2]), colors);
    expect(after.bubbles.length).toBe(before.bubbles.length - 1);
    expect(after.bubbles.every((b) => b.player !== roster[2])).toBe(true);
    expect(after.bubbles).toEqual(before.bubbles.filter((b) => b.player !== roster[2]));
  });
});

import { describe, expect, it } from 'vitest';

import { assignColors } from '../src/colors.js';
import { buildScene, bubbleRadius } from '../src/scene.js';
import { createViewState, setSizeBy, setTrails, togglePlayer } from '../src/state.js';
import type { MotionFrameWire } from '../src/types.js';

const ROSTER = [1, 2, 3, 4, 5, 6];
const COLORS = assignColors(ROSTER);

const FRAME: MotionFrameWire = {
  t_ms: 1000,
  entries: ROSTER.map((p) => ({ player: p, x: p * 2, y: p, speed: p - 1, phase: null })),
};

describe('buildScene', () => {
  it('draws one bubble per selected player', () => {
    const view = createViewState(ROSTER, 0, 10_000);
    const scene = buildScene(FRAME, view, COLORS);
    expect(scene.bubbles).toHaveLength(6);
    expect(scene.bubbles.map((b) => b.player)).toEqual(ROSTER);
  });

  it('deselecting a player removes exactly one bubble, others unchanged', () => {
    const view = createViewState(ROSTER, 0, 10_000);
    const before = buildScene(FRAME, view, COLORS);
    const after = buildScene(FRAME, togglePlayer(view, 3), COLORS);
    expect(after.bubbles).toHaveLength(5);
    expect(after.bubbles.find((b) => b.player === 3)).toBeUndefined();
    const beforeOthers = before.bubbles.filter((b) => b.player !== 3);
    expect(after.bubbles).toEqual(beforeOthers);
  });

  it('bubble radius grows strictly with speed when size_by=speed', () => {
    const view = createViewState(ROSTER, 0, 10_000);
    const scene = buildScene(FRAME, view, COLORS);
    const r0 = scene.bubbles.find((b) => b.player === 1)!.r; // speed 0
    const r5 = scene.bubbles.find((b) => b.player === 6)!.r; // speed 5
    expect(r5).toBeGreaterThan(r0);
  });

  it('constant sizing ignores speed', () => {
    const view = setSizeBy(createViewState(ROSTER, 0, 10_000), 'constant');
    const scene = buildScene(FRAME, view, COLORS);
    const radii = new Set(scene.bubbles.map((b) => b.r));
    expect(radii.size).toBe(1);
  });

  it('missing frame produces a visible notice and no bubbles', () => {
    const view = createViewState(ROSTER, 0, 10_000);
    const scene = buildScene(null, view, COLORS);
    expect(scene.bubbles).toHaveLength(0);
    expect(scene.notice).toBeTruthy();
  });

  it('is a pure function of its inputs', () => {
    const view = setTrails(createViewState(ROSTER, 0, 10_000), true, 5000);
    const a = buildScene(FRAME, view, COLORS, [FRAME], 'attack');
    const b = buildScene(FRAME, view, COLORS, [FRAME], 'attack');
    expect(a).toEqual(b);
  });

  it('attaches trails only when enabled', () => {
    const base = createViewState(ROSTER, 0, 10_000);
    const plain = buildScene(FRAME, { ...base, playheadMs: 1000 }, COLORS, [FRAME]);
    expect(plain.trails).toHaveLength(0);
    const withTrails = buildScene(
      FRAME,
      setTrails({ ...base, playheadMs: 1000 }, true, 5000),
      COLORS,
      [FRAME],
    );
    expect(withTrails.trails.length).toBeGreaterThan(0);
  });
});

describe('bubbleRadius', () => {
  it('is monotone and saturates', () => {
    let prev = -1;
    for (const v of [0, 1, 2, 4, 8, 20]) {
      const r = bubbleRadius(v, 'speed');
      expect(r).toBeGreaterThanOrEqual(prev);
      prev = r;
    }
    expect(bubbleRadius(8, 'speed')).toBe(bubbleRadius(100, 'speed'));
  });

  it('falls back to the constant radius for missing speeds', () => {
    expect(bubbleRadius(null, 'speed')).toBe(bubbleRadius(3, 'constant'));
  });
});

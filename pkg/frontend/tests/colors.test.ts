import { describe, expect, it } from 'vitest';

import { assignColors } from '../src/colors.js';

describe('assignColors', () => {
  it('gives every roster player a unique color', () => {
    const colors = assignColors([1, 2, 3, 4, 5, 6]);
    expect(new Set(colors.values()).size).toBe(6);
  });

  it('is stable across sessions for the same roster ordering', () => {
    const a = assignColors([1, 2, 3, 4, 5, 6]);
    const b = assignColors([1, 2, 3, 4, 5, 6]);
    expect([...a.entries()]).toEqual([...b.entries()]);
  });

  it('assignment depends on sorted position, not call order', () => {
    const shuffled = assignColors([4, 2, 6, 1, 3, 5]);
    const sorted = assignColors([1, 2, 3, 4, 5, 6]);
    expect([...shuffled.entries()].sort()).toEqual([...sorted.entries()].sort());
  });
});

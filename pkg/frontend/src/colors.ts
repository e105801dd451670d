/**
 * Stable per-player colors: player i gets the palette entry matching its
 * position in the (sorted) roster, so the same roster ordering always
 * produces the same swatches across sessions.
 */

export const PLAYER_PALETTE = [
  '#1f77b4',
  '#ff7f0e',
  '#2ca02c',
  '#d62728',
  '#9467bd',
  '#8c564b',
  '#e377c2',
  '#7f7f7f',
  '#bcbd22',
  '#17becf',
] as const;

export function assignColors(roster: number[]): Map<number, string> {
  const ordered = [...roster].sort((a, b) => a - b);
  const colors = new Map<number, string>();
  ordered.forEach((player, i) => {
    colors.set(player, PLAYER_PALETTE[i % PLAYER_PALETTE.length]);
  });
  return colors;
}

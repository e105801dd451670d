/**
 * Wire formats of the analysis service consumed by the viewer.
 */

export interface SessionWindows {
  match_start_ms: number;
  halftime_start_ms: number;
  halftime_end_ms: number;
  match_end_ms: number;
}

export interface CourtInfo {
  length_m: number;
  width_m: number;
  baskets: Array<[number, number]>;
  attack_first_half: number;
  session?: SessionWindows;
}

export interface FrameEntryWire {
  player: number;
  x: number;
  y: number;
  speed: number | null;
  phase: string | null;
}

export interface MotionFrameWire {
  t_ms: number;
  entries: FrameEntryWire[];
}

export interface StreamHeader {
  court: CourtInfo;
  canvas: { width_px: number; height_px: number };
  rate_hz: number;
  frame_count: number;
}

export interface FrameStream {
  header: StreamHeader;
  frames: MotionFrameWire[];
}

export interface PlayerInfo {
  index: number;
  tag: string;
}

export interface SpacingRow {
  t_ms: number;
  mean_pairwise_distance_m: number;
  voronoi_area_sum_m2: number;
  centroid: [number, number];
  phase: string | null;
}

export interface OccupancyGridWire {
  kind: 'occupancy';
  player: number;
  grid: { origin: [number, number]; cell_size_m: number; n_cols: number; n_rows: number };
  total: number;
  out_of_grid: number;
  values: number[][];
  color_ramp: string[];
}

export type Point = [number, number];

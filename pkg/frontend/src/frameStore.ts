/**
 * Chunked frame cache.
 *
 * Frames arrive in fixed-size chunks (default 60 s) and are merged into one
 * sorted array, so playback never re-fetches a range it has seen. Requests
 * carry a monotonically increasing version; responses from before the last
 * reset are discarded, which makes rapid scrubbing race-free.
 */

import type { ApiClient } from './api.js';
import type { MotionFrameWire } from './types.js';

export const DEFAULT_CHUNK_MS = 60_000;

export class FrameStore {
  private frames: MotionFrameWire[] = [];
  private loadedChunks = new Set<number>();
  private pendingChunks = new Map<number, Promise<void>>();
  private version = 0;

  constructor(
    private readonly api: ApiClient,
    private readonly rangeStartMs: number,
    private readonly rangeEndMs: number,
    private readonly chunkMs: number = DEFAULT_CHUNK_MS,
  ) {}

  get loadedFrameCount(): number {
    return this.frames.length;
  }

  private chunkKey(tMs: number): number {
    return Math.floor((tMs - this.rangeStartMs) / this.chunkMs);
  }

  private maxChunkKey(): number {
    return this.chunkKey(Math.max(this.rangeEndMs - 1, this.rangeStartMs));
  }

  /** Fetch every chunk overlapping [fromMs, toMs]; cached chunks are free. */
  async ensureRange(fromMs: number, toMs: number): Promise<void> {
    const first = Math.max(0, this.chunkKey(fromMs));
    const last = Math.min(this.maxChunkKey(), this.chunkKey(toMs));
    const waits: Promise<void>[] = [];
    for (let key = first; key <= last; key += 1) {
      if (this.loadedChunks.has(key)) {
        continue;
      }
      const pending = this.pendingChunks.get(key);
      if (pending !== undefined) {
        waits.push(pending);
        continue;
      }
      const promise = this.fetchChunk(key);
      this.pendingChunks.set(key, promise);
      waits.push(promise);
    }
    await Promise.all(waits);
  }

  private async fetchChunk(key: number): Promise<void> {
    const requestVersion = this.version;
    const fromMs = this.rangeStartMs + key * this.chunkMs;
    const toMs = Math.min(fromMs + this.chunkMs, this.rangeEndMs);
    try {
      const stream = await this.api.frames(fromMs, toMs);
      if (requestVersion !== this.version) {
        return; // stale response from before a reset
      }
      this.merge(stream.frames);
      this.loadedChunks.add(key);
    } finally {
      this.pendingChunks.delete(key);
    }
  }

  private merge(incoming: MotionFrameWire[]): void {
    if (incoming.length === 0) {
      return;
    }
    const byTime = new Map<number, MotionFrameWire>();
    for (const f of this.frames) {
      byTime.set(f.t_ms, f);
    }
    for (const f of incoming) {
      byTime.set(f.t_ms, f);
    }
    this.frames = [...byTime.values()].sort((a, b) => a.t_ms - b.t_ms);
  }

  /** Drop everything and invalidate in-flight responses. */
  reset(): void {
    this.version += 1;
    this.frames = [];
    this.loadedChunks.clear();
  }

  /** Latest frame at or before tMs, or null when none is loaded. */
  frameAt(tMs: number): MotionFrameWire | null {
    let lo = 0;
    let hi = this.frames.length - 1;
    let best: MotionFrameWire | null = null;
    while (lo <= hi) {
      const mid = (lo + hi) >> 1;
      if (this.frames[mid].t_ms <= tMs) {
        best = this.frames[mid];
        lo = mid + 1;
      } else {
        hi = mid - 1;
      }
    }
    return best;
  }

  /** Loaded frames with t in [fromMs, toMs], chronological. */
  framesBetween(fromMs: number, toMs: number): MotionFrameWire[] {
    return this.frames.filter((f) => f.t_ms >= fromMs && f.t_ms <= toMs);
  }
}

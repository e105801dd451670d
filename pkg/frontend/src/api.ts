/**
 * Typed client for the analysis service. The base URL is the only
 * configuration the viewer takes.
 */

import type {
  CourtInfo,
  FrameStream,
  OccupancyGridWire,
  PlayerInfo,
  SpacingRow,
} from './types.js';

export class ApiError extends Error {
  constructor(
    public readonly status: number,
    public readonly url: string,
    detail: string,
  ) {
    super(`${status} from ${url}: ${detail}`);
  }
}

export class ApiClient {
  constructor(
    private readonly baseUrl: string,
    private readonly fetchFn: typeof fetch = fetch,
  ) {}

  private async getJson<T>(path: string): Promise<T> {
    const url = `${this.baseUrl}${path}`;
    const response = await this.fetchFn(url);
    if (!response.ok) {
      const detail = await response.text().catch(() => '');
      throw new ApiError(response.status, url, detail);
    }
    return (await response.json()) as T;
  }

  court(): Promise<CourtInfo> {
    return this.getJson<CourtInfo>('/court');
  }

  async players(): Promise<PlayerInfo[]> {
    const body = await this.getJson<{ players: PlayerInfo[] }>('/players');
    return body.players;
  }

  frames(fromMs: number, toMs: number, hz?: number): Promise<FrameStream> {
    const hzPart = hz === undefined ? '' : `&hz=${hz}`;
    return this.getJson<FrameStream>(`/frames?from_ms=${fromMs}&to_ms=${toMs}${hzPart}`);
  }

  async spacing(fromMs: number, toMs: number): Promise<SpacingRow[]> {
    const body = await this.getJson<{ frames: SpacingRow[] }>(
      `/spacing?from_ms=${fromMs}&to_ms=${toMs}`,
    );
    return body.frames;
  }

  heatmap(player: number): Promise<OccupancyGridWire> {
    return this.getJson<OccupancyGridWire>(`/heatmap/${player}?mode=counts`);
  }
}

/**
 * App wiring: DOM controls, playback loop, and data flow.
 *
 * The service base URL comes from the `?api=` query parameter (default
 * http://127.0.0.1:8787). Frames are fetched in 60 s chunks around the
 * playhead so playback never blocks on ranges it has already seen.
 */

import { ApiClient } from './api.js';
import { assignColors } from './colors.js';
import { DEFAULT_CHUNK_MS, FrameStore } from './frameStore.js';
import { courtTransform, paintCourt, paintScene } from './render.js';
import { buildScene } from './scene.js';
import {
  ViewState,
  advancePlayhead,
  createViewState,
  scrubTo,
  setPlaying,
  setPlaybackSpeed,
  setSizeBy,
  setTrails,
  togglePlayer,
} from './state.js';
import type { CourtInfo, OccupancyGridWire, PlayerInfo, SpacingRow } from './types.js';

function el<T extends HTMLElement>(id: string): T {
  const node = document.getElementById(id);
  if (node === null) throw new Error(`missing #${id}`);
  return node as T;
}

class PhaseIndex {
  private rows: SpacingRow[] = [];
  private loaded = new Set<number>();

  constructor(
    private readonly api: ApiClient,
    private readonly startMs: number,
    private readonly chunkMs = DEFAULT_CHUNK_MS,
  ) {}

  prefetch(tMs: number): void {
    const key = Math.floor((tMs - this.startMs) / this.chunkMs);
    if (this.loaded.has(key)) return;
    this.loaded.add(key);
    const from = this.startMs + key * this.chunkMs;
    this.api
      .spacing(from, from + this.chunkMs)
      .then((rows) => {
        this.rows = [...this.rows, ...rows].sort((a, b) => a.t_ms - b.t_ms);
      })
      .catch(() => this.loaded.delete(key));
  }

  phaseAt(tMs: number): string | null {
    let best: SpacingRow | null = null;
    for (const row of this.rows) {
      if (row.t_ms > tMs) break;
      best = row;
    }
    return best?.phase ?? null;
  }
}

async function boot(): Promise<void> {
  const params = new URLSearchParams(window.location.search);
  const baseUrl = params.get('api') ?? 'http://127.0.0.1:8787';
  const api = new ApiClient(baseUrl);

  const court: CourtInfo = await api.court();
  const players: PlayerInfo[] = await api.players();
  const session = court.session;
  if (session === undefined) throw new Error('service did not report a session range');

  const roster = players.map((p) => p.index);
  const colors = assignColors(roster);
  const store = new FrameStore(api, session.match_start_ms, session.match_end_ms);
  const phases = new PhaseIndex(api, session.match_start_ms);
  let view: ViewState = createViewState(roster, session.match_start_ms, session.match_end_ms);
  let underlay: OccupancyGridWire | null = null;

  const canvas = el<HTMLCanvasElement>('court');
  const ctx = canvas.getContext('2d');
  if (ctx === null) throw new Error('canvas 2d context unavailable');
  const transform = courtTransform(court, canvas.width, canvas.height);

  // legend with color swatches and selection toggles
  const legend = el<HTMLDivElement>('legend');
  for (const p of players) {
    const label = document.createElement('label');
    const box = document.createElement('input');
    box.type = 'checkbox';
    box.checked = true;
    box.addEventListener('change', () => {
      view = togglePlayer(view, p.index);
    });
    const swatch = document.createElement('span');
    swatch.className = 'swatch';
    swatch.style.background = colors.get(p.index) ?? '#000';
    label.append(box, swatch, ` ${p.index} (${p.tag})`);
    legend.append(label);
  }

  const scrubber = el<HTMLInputElement>('scrubber');
  scrubber.min = String(session.match_start_ms);
  scrubber.max = String(session.match_end_ms);
  scrubber.value = String(view.playheadMs);
  scrubber.addEventListener('input', () => {
    view = scrubTo(view, Number(scrubber.value));
  });

  const playButton = el<HTMLButtonElement>('play');
  playButton.addEventListener('click', () => {
    view = setPlaying(view, !view.playing);
    playButton.textContent = view.playing ? 'Pause' : 'Play';
  });

  el<HTMLSelectElement>('speed').addEventListener('change', (ev) => {
    view = setPlaybackSpeed(view, Number((ev.target as HTMLSelectElement).value));
  });
  el<HTMLInputElement>('trails').addEventListener('change', (ev) => {
    view = setTrails(view, (ev.target as HTMLInputElement).checked);
  });
  el<HTMLInputElement>('trail-window').addEventListener('change', (ev) => {
    view = setTrails(view, view.trailsEnabled, Number((ev.target as HTMLInputElement).value) * 1000);
  });
  el<HTMLSelectElement>('size-by').addEventListener('change', (ev) => {
    view = setSizeBy(view, (ev.target as HTMLSelectElement).value as 'speed' | 'constant');
  });
  const underlaySelect = el<HTMLSelectElement>('underlay');
  for (const p of players) {
    const opt = document.createElement('option');
    opt.value = String(p.index);
    opt.textContent = `player ${p.index}`;
    underlaySelect.append(opt);
  }
  underlaySelect.addEventListener('change', async () => {
    const value = underlaySelect.value;
    underlay = value === '' ? null : await api.heatmap(Number(value));
  });

  const phaseBadge = el<HTMLSpanElement>('phase');
  const clock = el<HTMLSpanElement>('clock');

  let lastWall: number | null = null;
  const loop = (wallNow: number): void => {
    const dt = lastWall === null ? 0 : wallNow - lastWall;
    lastWall = wallNow;
    view = advancePlayhead(view, dt);
    if (!view.playing) playButton.textContent = 'Play';

    // keep the current and next chunk warm; fetches are async and cached
    void store.ensureRange(view.playheadMs, view.playheadMs + DEFAULT_CHUNK_MS);
    phases.prefetch(view.playheadMs);

    const frame = store.frameAt(view.playheadMs);
    const trailFrames = view.trailsEnabled
      ? store.framesBetween(view.playheadMs - view.trailWindowMs, view.playheadMs)
      : [];
    const scene = buildScene(frame, view, colors, trailFrames, phases.phaseAt(view.playheadMs));

    ctx.clearRect(0, 0, canvas.width, canvas.height);
    paintCourt(ctx, court, transform, underlay);
    paintScene(ctx, scene, court, transform);

    scrubber.value = String(Math.round(view.playheadMs));
    const elapsed = ((view.playheadMs - session.match_start_ms) / 1000).toFixed(1);
    clock.textContent = `${elapsed}s`;
    phaseBadge.textContent = scene.phase ?? '—';
    phaseBadge.className = scene.phase ?? '';
    requestAnimationFrame(loop);
  };
  requestAnimationFrame(loop);
}

boot().catch((err) => {
  document.body.insertAdjacentHTML(
    'afterbegin',
    `<p style="color:#b00020">failed to start: ${String(err)}</p>`,
  );
});

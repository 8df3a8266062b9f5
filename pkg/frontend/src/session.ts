// Client-side game session: selection handling, single-in-flight move
// submission, and snapshot bookkeeping.  The server is authoritative;
// this class never computes rules, it only stores the last snapshot it
// was given and the reason the server last rejected an input.

import { ApiClient, ApiError, GameSnapshot } from "./api.js";

export type SessionPhase = "idle" | "starting" | "playing" | "finished" | "error";

export interface SessionOptions {
  k: number;
  n: number;
  engine: string;
  ell?: number | null;
  humanFirst: boolean;
}

export class GameSession {
  phase: SessionPhase = "idle";
  gameId: string | null = null;
  snapshot: GameSnapshot | null = null;
  selection: number | null = null;
  busy = false;
  humanRole = "A";
  engineName = "";
  // last server rejection or transport error, verbatim
  message: string | null = null;
  lastEngineMove: [number, number] | null = null;
  lastHumanMove: [number, number] | null = null;
  private listeners: Array<() => void> = [];

  constructor(private api: ApiClient) {}

  onChange(fn: () => void): void {
    this.listeners.push(fn);
  }

  private emit(): void {
    for (const fn of this.listeners) fn();
  }

  async start(opts: SessionOptions): Promise<void> {
    this.phase = "starting";
    this.message = null;
    this.selection = null;
    this.lastEngineMove = null;
    this.lastHumanMove = null;
    this.humanRole = opts.humanFirst ? "A" : "B";
    this.engineName = opts.engine;
    this.emit();
    try {
      this.gameId = await this.api.createGame({
        k: opts.k,
        n: opts.n,
        engine: opts.engine,
        ell: opts.ell ?? null,
        human_first: opts.humanFirst,
      });
      this.snapshot = await this.api.getSnapshot(this.gameId);
      if (!opts.humanFirst && this.snapshot.edges.length > 0) {
        this.lastEngineMove = this.snapshot.edges[this.snapshot.edges.length - 1];
      }
      this.phase = this.snapshot.over ? "finished" : "playing";
    } catch (err) {
      this.phase = "error";
      this.snapshot = null;
      this.message = err instanceof ApiError ? err.message : String(err);
    }
    this.emit();
  }

  get humansTurn(): boolean {
    return (
      this.phase === "playing" &&
      !this.busy &&
      this.snapshot !== null &&
      !this.snapshot.over &&
      this.snapshot.mover === this.humanRole
    );
  }

  /** Click-to-select: first click picks a vertex, clicking it again
   * cancels, a second distinct vertex submits the edge. */
  clickVertex(v: number): "ignored" | "selected" | "cancelled" | "submitted" {
    if (!this.humansTurn) return "ignored";
    if (this.selection === null) {
      this.selection = v;
      this.emit();
      return "selected";
    }
    if (this.selection === v) {
      this.selection = null;
      this.emit();
      return "cancelled";
    }
    const u = this.selection;
    this.selection = null;
    void this.submitEdge(u, v);
    return "submitted";
  }

  async submitEdge(u: number, v: number): Promise<boolean> {
    if (this.busy || this.gameId === null || this.phase !== "playing") return false;
    this.busy = true;
    this.emit();
    try {
      const result = await this.api.postMove(this.gameId, u, v);
      if (result.accepted) {
        this.message = null;
        this.lastHumanMove = [u, v];
        this.lastEngineMove = result.engine_move ?? null;
        this.snapshot = result.snapshot;
        if (result.snapshot.over) this.phase = "finished";
      } else {
        // rejected: the rendered snapshot must not change
        this.message = result.reason ?? "rejected";
      }
      return result.accepted;
    } catch (err) {
      this.message = err instanceof ApiError ? err.message : String(err);
      return false;
    } finally {
      this.busy = false;
      this.emit();
    }
  }

  async close(): Promise<void> {
    if (this.gameId !== null) {
      try {
        await this.api.deleteGame(this.gameId);
      } catch {
        // the server may already have dropped it
      }
      this.gameId = null;
    }
  }
}

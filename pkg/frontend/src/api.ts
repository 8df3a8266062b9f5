// Typed client for the arena's HTTP API.  The transport is injectable so
// the session logic can be driven by mocks in tests and by real fetch in
// the browser or node.

export interface ComponentSnapshot {
  vertices: number[];
  type: string;
  deficit: number;
}

export interface GameSnapshot {
  edges: [number, number][];
  deficits: number[];
  components: ComponentSnapshot[];
  planar: boolean;
  condition_t: boolean;
  over: boolean;
  mover: string;
}

export interface MoveResult {
  accepted: boolean;
  reason?: string | null;
  engine_move?: [number, number] | null;
  snapshot: GameSnapshot;
}

export interface CreateGameParams {
  k: number;
  n: number;
  engine: string;
  ell?: number | null;
  human_first: boolean;
}

export interface TransportResponse {
  status: number;
  json(): Promise<unknown>;
}

export type Transport = (path: string, init?: RequestInit) => Promise<TransportResponse>;

export class ApiError extends Error {
  constructor(public status: number, message: string) {
    super(message);
  }
}

export function fetchTransport(baseUrl = ""): Transport {
  return (path, init) => fetch(baseUrl + path, init);
}

async function expectOk(resp: TransportResponse): Promise<unknown> {
  if (resp.status < 200 || resp.status >= 300) {
    let detail = `HTTP ${resp.status}`;
    try {
      const body = (await resp.json()) as { detail?: string };
      if (body && body.detail) detail = `${detail}: ${body.detail}`;
    } catch {
      // no body, keep the bare status
    }
    throw new ApiError(resp.status, detail);
  }
  return resp.json();
}

export class ApiClient {
  constructor(private transport: Transport) {}

  async createGame(params: CreateGameParams): Promise<string> {
    const body = await expectOk(
      await this.transport("/api/games", {
        method: "POST",
        headers: { "Content-Type": "application/json" },
        body: JSON.stringify(params),
      }),
    );
    return (body as { game_id: string }).game_id;
  }

  async getSnapshot(gameId: string): Promise<GameSnapshot> {
    const body = await expectOk(await this.transport(`/api/games/${gameId}`));
    return body as GameSnapshot;
  }

  async postMove(gameId: string, u: number, v: number): Promise<MoveResult> {
    const body = await expectOk(
      await this.transport(`/api/games/${gameId}/moves`, {
        method: "POST",
        headers: { "Content-Type": "application/json" },
        body: JSON.stringify({ u, v }),
      }),
    );
    return body as MoveResult;
  }

  async deleteGame(gameId: string): Promise<void> {
    await expectOk(await this.transport(`/api/games/${gameId}`, { method: "DELETE" }));
  }
}

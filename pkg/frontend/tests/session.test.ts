// Session state machine against a scripted mock transport.

import { describe, expect, it } from "vitest";

import { ApiClient, GameSnapshot, MoveResult, Transport } from "../src/api.js";
import { GameSession } from "../src/session.js";

function snap(partial: Partial<GameSnapshot> = {}): GameSnapshot {
  return {
    edges: [],
    deficits: [3, 3, 3, 3],
    components: [
      { vertices: [0], type: "1", deficit: 3 },
      { vertices: [1], type: "1", deficit: 3 },
      { vertices: [2], type: "1", deficit: 3 },
      { vertices: [3], type: "1", deficit: 3 },
    ],
    planar: true,
    condition_t: true,
    over: false,
    mover: "A",
    ...partial,
  };
}

interface Scripted {
  match: (path: string, init?: RequestInit) => boolean;
  status?: number;
  body: unknown;
}

function scriptedTransport(script: Scripted[]): Transport {
  return async (path, init) => {
    const hit = script.find((s) => s.match(path, init));
    if (!hit) throw new Error(`unscripted request: ${init?.method ?? "GET"} ${path}`);
    return {
      status: hit.status ?? 200,
      json: async () => JSON.parse(JSON.stringify(hit.body)),
    };
  };
}

function freshSession(script: Scripted[]): GameSession {
  return new GameSession(new ApiClient(scriptedTransport(script)));
}

const CREATE: Scripted = {
  match: (p, i) => p === "/api/games" && i?.method === "POST",
  body: { game_id: "g1" },
};

describe("starting a game", () => {
  it("loads the first snapshot and enables play", async () => {
    const session = freshSession([
      CREATE,
      { match: (p, i) => p === "/api/games/g1" && !i?.method, body: snap() },
    ]);
    await session.start({ k: 3, n: 4, engine: "planar", humanFirst: true });
    expect(session.phase).toBe("playing");
    expect(session.humanRole).toBe("A");
    expect(session.humansTurn).toBe(true);
  });

  it("exposes the engine's opening move when the engine starts", async () => {
    const session = freshSession([
      CREATE,
      {
        match: (p, i) => p === "/api/games/g1" && !i?.method,
        body: snap({ edges: [[0, 1]], mover: "B" }),
      },
    ]);
    await session.start({ k: 3, n: 4, engine: "planar", humanFirst: false });
    expect(session.humanRole).toBe("B");
    expect(session.lastEngineMove).toEqual([0, 1]);
    expect(session.humansTurn).toBe(true);
  });

  it("reports server errors without a stale board", async () => {
    const session = freshSession([
      { match: (p, i) => p === "/api/games" && i?.method === "POST", status: 422, body: { detail: "unknown engine 'x'" } },
    ]);
    await session.start({ k: 3, n: 4, engine: "x", humanFirst: true });
    expect(session.phase).toBe("error");
    expect(session.snapshot).toBeNull();
    expect(session.message).toContain("unknown engine");
  });
});

describe("vertex selection", () => {
  async function started(extra: Scripted[] = []): Promise<GameSession> {
    const session = freshSession([
      CREATE,
      { match: (p, i) => p === "/api/games/g1" && !i?.method, body: snap() },
      ...extra,
    ]);
    await session.start({ k: 3, n: 4, engine: "planar", humanFirst: true });
    return session;
  }

  it("selects and cancels on the same vertex", async () => {
    const session = await started();
    expect(session.clickVertex(2)).toBe("selected");
    expect(session.selection).toBe(2);
    expect(session.clickVertex(2)).toBe("cancelled");
    expect(session.selection).toBeNull();
  });

  it("submits on a second distinct vertex", async () => {
    const accepted: MoveResult = {
      accepted: true,
      engine_move: [2, 3],
      snapshot: snap({ edges: [[0, 1], [2, 3]], deficits: [2, 2, 2, 2] }),
    };
    const session = await started([
      { match: (p, i) => p === "/api/games/g1/moves" && i?.method === "POST", body: accepted },
    ]);
    session.clickVertex(0);
    expect(session.clickVertex(1)).toBe("submitted");
    await new Promise((r) => setTimeout(r, 0));
    expect(session.snapshot?.edges).toEqual([[0, 1], [2, 3]]);
    expect(session.lastEngineMove).toEqual([2, 3]);
    expect(session.message).toBeNull();
  });

  it("ignores clicks when it is not the human's turn", async () => {
    const session = freshSession([
      CREATE,
      { match: (p, i) => p === "/api/games/g1" && !i?.method, body: snap({ mover: "B" }) },
    ]);
    await session.start({ k: 3, n: 4, engine: "planar", humanFirst: true });
    expect(session.clickVertex(0)).toBe("ignored");
  });
});

describe("rejections and gating", () => {
  it("keeps the snapshot object untouched on rejection", async () => {
    const before = snap({ edges: [[0, 1]] });
    const rejection: MoveResult = {
      accepted: false,
      reason: "adjacent",
      engine_move: null,
      snapshot: snap({ edges: [[0, 1]] }),
    };
    const session = freshSession([
      CREATE,
      { match: (p, i) => p === "/api/games/g1" && !i?.method, body: before },
      { match: (p, i) => p === "/api/games/g1/moves" && i?.method === "POST", body: rejection },
    ]);
    await session.start({ k: 3, n: 4, engine: "planar", humanFirst: true });
    const rendered = session.snapshot;
    const ok = await session.submitEdge(0, 1);
    expect(ok).toBe(false);
    expect(session.message).toBe("adjacent");
    expect(session.snapshot).toBe(rendered); // same object, not just equal
  });

  it("allows only one in-flight request", async () => {
    let resolveMove: (r: MoveResult) => void = () => {};
    const pending = new Promise<MoveResult>((r) => (resolveMove = r));
    const transport: Transport = async (path, init) => {
      if (path === "/api/games" && init?.method === "POST") {
        return { status: 200, json: async () => ({ game_id: "g1" }) };
      }
      if (path === "/api/games/g1" && !init?.method) {
        return { status: 200, json: async () => snap() };
      }
      if (path === "/api/games/g1/moves") {
        return { status: 200, json: () => pending };
      }
      throw new Error(`unexpected ${path}`);
    };
    const session = new GameSession(new ApiClient(transport));
    await session.start({ k: 3, n: 4, engine: "planar", humanFirst: true });
    const first = session.submitEdge(0, 1);
    expect(session.busy).toBe(true);
    expect(session.clickVertex(2)).toBe("ignored");
    const second = await session.submitEdge(2, 3);
    expect(second).toBe(false); // gated while the first is pending
    resolveMove({ accepted: true, engine_move: null, snapshot: snap({ edges: [[0, 1]] }) });
    expect(await first).toBe(true);
  });

  it("flips to finished when the game ends", async () => {
    const finale: MoveResult = {
      accepted: true,
      engine_move: null,
      snapshot: snap({ over: true, planar: true }),
    };
    const session = freshSession([
      CREATE,
      { match: (p, i) => p === "/api/games/g1" && !i?.method, body: snap() },
      { match: (p, i) => p === "/api/games/g1/moves" && i?.method === "POST", body: finale },
    ]);
    await session.start({ k: 3, n: 4, engine: "planar", humanFirst: true });
    await session.submitEdge(0, 1);
    expect(session.phase).toBe("finished");
    expect(session.humansTurn).toBe(false);
  });
});

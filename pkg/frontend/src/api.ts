/**
 * Typed client for the session service. The UI performs no legality checks
 * of its own beyond input parsing: the service is the single validator,
 * and its verdicts are surfaced verbatim.
 */

export interface MoveRecord {
  player: string;
  by: "human" | "engine";
  value?: string;
  interval?: [string, string];
  closed?: boolean;
  open?: boolean;
}

export interface ServerView {
  id: string;
  game: "baker" | "banach-mazur" | "choquet";
  status: "awaiting-human" | "awaiting-engine" | "faulted" | "closed";
  human_role: string;
  engine: string;
  rounds_played: number;
  max_rounds: number | null;
  to_move: string;
  moves: MoveRecord[];
  fault: { by: string; reason: string } | null;
  set?: unknown;
  bounds?: { lower: string; upper: string };
  enclosure?: [string, string] | null;
  presentation?: unknown;
  ambient?: string;
  current_interval?: [string, string] | null;
}

export interface SessionConfig {
  game: string;
  human_role: string;
  engine: string;
  set?: unknown;
  presentation?: unknown;
  ambient?: string;
  max_rounds?: number;
}

export type MoveValue = string | [string, string];

export class ServiceError extends Error {
  constructor(
    readonly status: number,
    readonly code: string,
    readonly reason: string,
    readonly violatedBound: string | null = null,
  ) {
    super(reason);
  }
}

type FetchLike = (input: string, init?: RequestInit) => Promise<Response>;

async function decode(response: Response): Promise<ServerView> {
  const body = (await response.json()) as Record<string, unknown>;
  if (!response.ok) {
    throw new ServiceError(
      response.status,
      String(body["error"] ?? "error"),
      String(body["reason"] ?? response.statusText),
      (body["violated_bound"] as string | null) ?? null,
    );
  }
  return body as unknown as ServerView;
}

export class Client {
  constructor(
    private readonly base: string,
    private readonly fetchFn: FetchLike = (...args) => fetch(...args),
  ) {}

  async createSession(config: SessionConfig): Promise<ServerView> {
    const response = await this.fetchFn(`${this.base}/api/sessions`, {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify(config),
    });
    return decode(response);
  }

  async getSession(id: string): Promise<ServerView> {
    return decode(await this.fetchFn(`${this.base}/api/sessions/${id}`));
  }

  async postMove(id: string, value: MoveValue): Promise<ServerView> {
    const response = await this.fetchFn(`${this.base}/api/sessions/${id}/moves`, {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify({ value }),
    });
    return decode(response);
  }

  /**
   * postMove with one idempotent retry: when the network fails, consult the
   * session's move count to learn whether the move actually landed before
   * re-posting — re-posting a landed move would be rejected as out of turn.
   */
  async postMoveWithRetry(
    id: string,
    value: MoveValue,
    knownMoves: number,
  ): Promise<ServerView> {
    try {
      return await this.postMove(id, value);
    } catch (error) {
      if (error instanceof ServiceError) throw error;
      const current = await this.getSession(id);
      if (current.moves.length > knownMoves) return current;
      return this.postMove(id, value);
    }
  }

  async getTrace(id: string): Promise<unknown> {
    const response = await this.fetchFn(`${this.base}/api/sessions/${id}/trace`);
    const body = (await response.json()) as Record<string, unknown>;
    if (!response.ok) {
      throw new ServiceError(
        response.status,
        String(body["error"] ?? "error"),
        String(body["reason"] ?? response.statusText),
      );
    }
    return body;
  }
}

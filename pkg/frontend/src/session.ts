// Session state machine: one active seed-mutation session, an undo stack
// mirrored by the server, and a single in-flight request at a time.  All
// seed data is held exactly as the server rendered it.

import { ApiClient, ApiError, RenderedSeed } from "./api.js";

export interface SessionState {
  id: string;
  seedName: string;
  seed: RenderedSeed;
  path: number[]; // 1-based mutated slots, oldest first
}

export type Listener = (controller: SessionController) => void;

export class SessionController {
  private current: SessionState | null = null;
  private inFlight = false;
  private lastError: string | null = null;
  private listeners: Listener[] = [];

  constructor(private readonly api: ApiClient) {}

  get state(): SessionState | null {
    return this.current;
  }

  get busy(): boolean {
    return this.inFlight;
  }

  get error(): string | null {
    return this.lastError;
  }

  get canUndo(): boolean {
    return this.current !== null && this.current.path.length > 0 && !this.inFlight;
  }

  subscribe(listener: Listener): void {
    this.listeners.push(listener);
  }

  private notify(): void {
    for (const listener of this.listeners) listener(this);
  }

  private async guarded<T>(work: () => Promise<T>): Promise<T> {
    if (this.inFlight) {
      throw new ApiError(0, "a request is already in flight");
    }
    this.inFlight = true;
    this.notify();
    try {
      const result = await work();
      this.lastError = null;
      return result;
    } catch (err) {
      this.lastError = err instanceof Error ? err.message : String(err);
      throw err;
    } finally {
      this.inFlight = false;
      this.notify();
    }
  }

  async start(seedName: string): Promise<SessionState> {
    return this.guarded(async () => {
      const reply = await this.api.createSession(seedName);
      this.current = { id: reply.session, seedName, seed: reply.seed, path: [] };
      return this.current;
    });
  }

  async mutateAt(slot: number): Promise<SessionState> {
    return this.guarded(async () => {
      if (!this.current) throw new ApiError(0, "no active session");
      const reply = await this.api.mutate(this.current.id, slot);
      this.current = {
        ...this.current,
        seed: reply.seed,
        path: [...this.current.path, slot],
      };
      return this.current;
    });
  }

  async undo(): Promise<SessionState> {
    return this.guarded(async () => {
      if (!this.current) throw new ApiError(0, "no active session");
      const reply = await this.api.undo(this.current.id);
      this.current = {
        ...this.current,
        seed: reply.seed,
        path: this.current.path.slice(0, -1),
      };
      return this.current;
    });
  }

  exportPath(): string {
    if (!this.current) return "";
    const lines = [
      `seed: ${this.current.seedName}`,
      `path: ${this.current.path.join(", ") || "(empty)"}`,
      "cluster:",
      ...this.current.seed.cluster.map((text, k) => {
        const name = this.current!.seed.cluster_names?.[k];
        return name ? `  ${name} = ${text}` : `  ${text}`;
      }),
    ];
    return lines.join("\n");
  }
}

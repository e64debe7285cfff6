// Integration tests against the live backend: the controller's view must
// stay deep-equal to the server's session state after every interaction.

import { beforeAll, describe, expect, it } from "vitest";

import { ApiClient, ApiError } from "../src/api.js";
import { SessionController } from "../src/session.js";

const base = () => process.env.LPA_TEST_SERVER ?? "http://127.0.0.1:8731";

function client(): ApiClient {
  return new ApiClient(base());
}

describe("seed list", () => {
  it("exposes the built-in seeds", async () => {
    const { seeds } = await client().listSeeds();
    expect(seeds).toEqual(["a2-toy", "e4", "e5", "e6"]);
  });
});

describe("a2-toy session", () => {
  it("shows two slots with the server's exchange strings", async () => {
    const controller = new SessionController(client());
    const state = await controller.start("a2-toy");
    expect(state.seed.rank).toBe(2);
    expect(state.seed.cluster).toEqual(["x1", "x2"]);
    expect(state.seed.exchange).toEqual(["x2 + 1", "x1 + 1"]);
    expect(controller.canUndo).toBe(false);
  });

  it("path [1, 2] reaches the two-denominator variable", async () => {
    const controller = new SessionController(client());
    await controller.start("a2-toy");
    await controller.mutateAt(1);
    const state = await controller.mutateAt(2);
    expect(state.seed.cluster[1]).toBe("(x1 + x2 + 1)/(x1*x2)");
    expect(state.path).toEqual([1, 2]);
  });

  it("mutating the same slot twice restores the display", async () => {
    const controller = new SessionController(client());
    const start = await controller.start("a2-toy");
    const before = JSON.stringify(start.seed);
    await controller.mutateAt(1);
    const after = await controller.mutateAt(1);
    expect(JSON.stringify(after.seed)).toBe(before);
  });

  it("undo pops to the previous display and bottoms out", async () => {
    const controller = new SessionController(client());
    const start = await controller.start("a2-toy");
    const initial = JSON.stringify(start.seed);
    await controller.mutateAt(2);
    expect(controller.canUndo).toBe(true);
    const undone = await controller.undo();
    expect(JSON.stringify(undone.seed)).toBe(initial);
    expect(controller.canUndo).toBe(false);
    await expect(controller.undo()).rejects.toThrow();
    expect(controller.error).toContain("undo");
  });
});

describe("error handling", () => {
  it("surfaces an unknown seed without changing state", async () => {
    const controller = new SessionController(client());
    await expect(controller.start("e9")).rejects.toThrow(ApiError);
    expect(controller.error).toContain("unknown seed");
    expect(controller.state).toBeNull();
  });

  it("rejects an invalid slot and keeps the session intact", async () => {
    const controller = new SessionController(client());
    const start = await controller.start("e4");
    const snapshot = JSON.stringify(start);
    await expect(controller.mutateAt(9)).rejects.toThrow(ApiError);
    expect(controller.error).toContain("slot");
    expect(JSON.stringify(controller.state)).toBe(snapshot);
  });

  it("allows one request in flight at a time", async () => {
    const controller = new SessionController(client());
    await controller.start("e4");
    const first = controller.mutateAt(1);
    await expect(controller.mutateAt(2)).rejects.toThrow(/in flight/);
    await first;
  });
});

describe("e6 session", () => {
  let controller: SessionController;

  beforeAll(async () => {
    controller = new SessionController(client());
    await controller.start("e6");
  }, 120000);

  it("starts in orbit A with five slots", () => {
    const state = controller.state!;
    expect(state.seed.rank).toBe(5);
    expect(state.seed.orbit).toBe("A");
    expect(state.seed.cluster_names).toEqual(["x1", "x2", "x3", "x4", "y3"]);
  });

  it("mutating any slot twice restores the displayed cluster", async () => {
    for (let slot = 1; slot <= 5; slot++) {
      const before = JSON.stringify(controller.state!.seed);
      await controller.mutateAt(slot);
      await controller.mutateAt(slot);
      expect(JSON.stringify(controller.state!.seed)).toBe(before);
      await controller.undo();
      await controller.undo();
    }
  }, 120000);

  it("stays deep-equal to the server across a scripted 10-step random path", async () => {
    // Scripted pseudo-random slots (fixed seed keeps the run reproducible).
    let x = 0x2545f491;
    const nextSlot = () => {
      x ^= x << 13;
      x ^= x >>> 17;
      x ^= x << 5;
      x >>>= 0;
      return (x % 5) + 1;
    };
    const api = client();
    for (let step = 0; step < 10; step++) {
      await controller.mutateAt(nextSlot());
      const server = await api.path(controller.state!.id);
      expect(controller.state!.seed).toEqual(server.seed);
      expect(controller.state!.path).toEqual(server.path);
    }
  }, 240000);

  it("export contains the path and the final cluster", () => {
    const text = controller.exportPath();
    expect(text).toContain("seed: e6");
    expect(text).toContain(`path: ${controller.state!.path.join(", ")}`);
    for (const variable of controller.state!.seed.cluster) {
      expect(text).toContain(variable);
    }
  });
});

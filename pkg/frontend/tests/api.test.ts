// Client contract against the recorded backend: request bodies match what
// the service was driven with, responses parse into the typed payloads,
// and error payloads surface as typed exceptions.

import { describe, expect, it } from "vitest";

import { ApiClient, ApiHttpError } from "../src/api.js";
import type { FetchLike, SimulateResponse } from "../src/api.js";
import { FixtureBackend, TAB_SIM_BODIES, canonical } from "./fixtures.js";

describe("ApiClient against recorded exchanges", () => {
  it("simulate returns points, labels and a 2-dim bbox", async () => {
    const backend = new FixtureBackend();
    const client = new ApiClient("", backend.fetch);
    const sim = await client.simulate({ ...TAB_SIM_BODIES.basic });
    expect(sim.n).toBe(300);
    expect(sim.k).toBe(3);
    expect(sim.points).toHaveLength(300);
    expect(sim.points[0]).toHaveLength(2);
    expect(sim.labels).toHaveLength(300);
    expect(new Set(sim.labels)).toEqual(new Set([1, 2, 3]));
    expect(sim.bbox).toHaveLength(2);
    expect(sim.bbox[0][0]).toBeLessThan(sim.bbox[0][1]);
  });

  it("fit reports the error rate and the model document", async () => {
    const backend = new FixtureBackend();
    const client = new ApiClient("", backend.fetch);
    const sim = await client.simulate({ ...TAB_SIM_BODIES.outlier });
    const fit = await client.fit({
      dataset_id: sim.dataset_id, variant: "original", rule: 1,
    });
    expect(fit.variant).toBe("original");
    expect(fit.classes).toEqual([1, 2]);
    expect(fit.training_error).toBeGreaterThanOrEqual(0);
    expect(fit.training_error).toBeLessThanOrEqual(1);
    expect(fit.n_leaves).toBeGreaterThanOrEqual(2);
    expect(fit.model.version).toBe(1);
    expect(fit.model.root.alpha).toHaveLength(2);
    expect(typeof fit.model.root.c).toBe("number");
  });

  it("boundary grids share the dataset bbox and flatten row-major", async () => {
    const backend = new FixtureBackend();
    const client = new ApiClient("", backend.fetch);
    const sim = await client.simulate({ ...TAB_SIM_BODIES.mixture });
    const fit = await client.fit({
      dataset_id: sim.dataset_id, variant: "mod2",
      min_node_size: 10, entropy_threshold: 0.01,
    });
    const grid = await client.boundary({ model_id: fit.model_id, resolution: 61 });
    expect(grid.resolution).toBe(61);
    expect(grid.bbox).toEqual(sim.bbox);
    expect(grid.x1).toHaveLength(61);
    expect(grid.x2).toHaveLength(61);
    expect(grid.labels).toHaveLength(61 * 61);
    expect(grid.border).toHaveLength(61 * 61);
    for (const b of grid.border) expect([0, 1]).toContain(b);
  });

  it("non-200 responses raise ApiHttpError with the service's code", async () => {
    const failing: FetchLike = async () => ({
      status: 404,
      json: async () => ({ code: "unknown_id", message: "no dataset" }),
    });
    const client = new ApiClient("", failing);
    let caught: unknown;
    try {
      await client.fit({ dataset_id: "nope", variant: "original", rule: 1 });
    } catch (err) {
      caught = err;
    }
    expect(caught).toBeInstanceOf(ApiHttpError);
    expect((caught as ApiHttpError).status).toBe(404);
    expect((caught as ApiHttpError).code).toBe("unknown_id");
  });

  it("canonicalization is order-insensitive and number-format stable", () => {
    expect(canonical({ b: 1, a: [2, { d: 4, c: 3 }] }))
      .toBe(canonical({ a: [2, { c: 3, d: 4 }], b: 1 }));
    expect(canonical({ x: 5.0 })).toBe(canonical({ x: 5 }));
    expect(canonical({ x: 0.15 })).toBe('{"x":0.15}');
  });

  it("a drifted request body fails loudly instead of matching", async () => {
    const backend = new FixtureBackend();
    const client = new ApiClient("", backend.fetch);
    await expect(
      client.simulate({ ...TAB_SIM_BODIES.basic, seed: 777 }),
    ).rejects.toThrow(/no fixture/);
  });

  it("identical seed means identical scatter", async () => {
    const backend = new FixtureBackend();
    const client = new ApiClient("", backend.fetch);
    const a = await client.simulate({ ...TAB_SIM_BODIES.basic });
    const b = await client.simulate({ ...TAB_SIM_BODIES.basic });
    expect(b.points).toEqual(a.points);
    expect(b.labels).toEqual(a.labels);
  });

  it("displayed errors rise with the overlap knob (10-seed average)", async () => {
    const backend = new FixtureBackend();
    const client = new ApiClient("", backend.fetch);
    const mean = async (overlap: number) => {
      let total = 0;
      for (let seed = 1; seed <= 10; seed++) {
        const sim: SimulateResponse = await client.simulate({
          scenario: "mixture", n: 240, k: 3, seed, overlap,
        });
        const fit = await client.fit({
          dataset_id: sim.dataset_id, variant: "original", rule: 1,
        });
        total += fit.training_error;
      }
      return total / 10;
    };
    expect(await mean(0.4)).toBeGreaterThan(await mean(0.05));
  });
});

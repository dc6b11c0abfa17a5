import { describe, expect, it } from "vitest";

import { SequenceGate } from "../src/seq.js";

describe("SequenceGate", () => {
  it("accepts only the newest issued number", () => {
    const gate = new SequenceGate();
    const a = gate.issue();
    expect(gate.accept(a)).toBe(true);
    const b = gate.issue();
    expect(gate.accept(a)).toBe(false);
    expect(gate.accept(b)).toBe(true);
  });

  it("acceptance is repeatable until overtaken", () => {
    const gate = new SequenceGate();
    const a = gate.issue();
    expect(gate.accept(a)).toBe(true);
    expect(gate.accept(a)).toBe(true);
    gate.issue();
    expect(gate.accept(a)).toBe(false);
  });

  it("independent gates do not interfere", () => {
    const g1 = new SequenceGate();
    const g2 = new SequenceGate();
    const a = g1.issue();
    g2.issue();
    g2.issue();
    expect(g1.accept(a)).toBe(true);
  });
});

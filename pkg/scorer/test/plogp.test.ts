import { beforeAll, describe, expect, it } from "vitest";
import { Chem } from "../src/chem.js";
import { plogp, ringPenalty } from "../src/plogp.js";
import { sas } from "../src/sas.js";

let chem: Chem;

beforeAll(async () => {
  chem = await Chem.create();
});

function rings(smiles: string): number[] {
  const analysis = chem.analyze(smiles);
  expect(analysis, smiles).not.toBeNull();
  return analysis!.ringSizes;
}

describe("ring penalty", () => {
  it("is zero for every ring size up to 6", () => {
    expect(ringPenalty([])).toBe(0);
    expect(ringPenalty([3])).toBe(0);
    expect(ringPenalty([4])).toBe(0);
    expect(ringPenalty([5])).toBe(0);
    expect(ringPenalty([6])).toBe(0);
    expect(ringPenalty([5, 6, 6])).toBe(0);
    expect(ringPenalty(rings("CCO"))).toBe(0);
    expect(ringPenalty(rings("c1ccccc1"))).toBe(0);
    expect(ringPenalty(rings("C1CCCCC1"))).toBe(0);
    expect(ringPenalty(rings("c1ccc2ccccc2c1"))).toBe(0); // fused 6,6
    expect(ringPenalty(rings("C1CC2CCC1CC2"))).toBe(0); // bridged 6,6,6
  });

  it("counts only the excess over 6 of the largest ring", () => {
    expect(ringPenalty(rings("C1CCCCCC1"))).toBe(1);
    expect(ringPenalty(rings("C1CCCCCCC1"))).toBe(2);
    expect(ringPenalty(rings("C1CCCCCCCCCCC1"))).toBe(6);
    expect(ringPenalty([6, 9])).toBe(3);
  });
});

describe("plogp", () => {
  it("matches an independent recomputation of the standardized formula", () => {
    // constants restated here on purpose; a drift in either copy fails
    const LOGP_MEAN = 2.4570953396190123;
    const LOGP_STD = 1.434324401111988;
    const SA_MEAN = -3.0525811293166134;
    const SA_STD = 0.8335207024513095;
    const CYCLE_MEAN = -0.0485696876403053;
    const CYCLE_STD = 0.2860212110245455;

    for (const smiles of ["c1ccccc1", "CCO", "C1CCCCCCC1", "CC(=O)Oc1ccccc1C(=O)O"]) {
      const analysis = chem.analyze(smiles);
      expect(analysis, smiles).not.toBeNull();
      const sasScore = sas(analysis!);
      const largest =
        analysis!.ringSizes.length > 0 ? Math.max(...analysis!.ringSizes) : 0;
      const penalty = largest > 6 ? largest - 6 : 0;
      const want =
        (analysis!.alogp - LOGP_MEAN) / LOGP_STD +
        (-sasScore - SA_MEAN) / SA_STD +
        (-penalty - CYCLE_MEAN) / CYCLE_STD;
      const got = plogp(analysis!.alogp, sasScore, analysis!.ringSizes);
      expect(Math.abs(got - want), smiles).toBeLessThan(1e-9);
    }
  });

  it("strictly decreases when SAS rises with logP and rings fixed", () => {
    const ringSizes = [6];
    expect(plogp(2.0, 3.0, ringSizes)).toBeGreaterThan(
      plogp(2.0, 3.5, ringSizes),
    );
    expect(plogp(2.0, 3.5, ringSizes)).toBeGreaterThan(
      plogp(2.0, 7.0, ringSizes),
    );
  });

  it("strictly decreases as the largest ring grows past 6", () => {
    expect(plogp(2.0, 3.0, [6])).toBeGreaterThan(plogp(2.0, 3.0, [7]));
    expect(plogp(2.0, 3.0, [7])).toBeGreaterThan(plogp(2.0, 3.0, [8]));
    expect(plogp(2.0, 3.0, [6])).toBe(plogp(2.0, 3.0, [3, 5, 6]));
  });
});

import { beforeAll, describe, expect, it } from "vitest";
import { Chem } from "../src/chem.js";
import {
  ADS_PARAMS,
  QED_KEYS,
  QED_WEIGHTS,
  desirability,
  qed,
  type AdsParams,
  type QedDescriptors,
} from "../src/qed.js";
import { CORPUS_50 } from "./fixtures.js";

let chem: Chem;

beforeAll(async () => {
  chem = await Chem.create();
});

function bundle(smiles: string): QedDescriptors {
  const a = chem.analyze(smiles);
  expect(a, smiles).not.toBeNull();
  return {
    MW: a!.mw,
    ALOGP: a!.alogp,
    HBA: a!.hba,
    HBD: a!.hbd,
    PSA: a!.psa,
    ROTB: a!.rotb,
    AROM: a!.arom,
    ALERTS: a!.alerts,
  };
}

// Independent recomputation of the desirability model: sigmoid identity
// instead of raw exponentials, weighted product instead of exp/log.
function sigmoid(t: number): number {
  return 1 / (1 + Math.exp(-t));
}

function desirabilityIndependent(x: number, p: AdsParams): number {
  const s1 = sigmoid((x - p.c + p.d / 2) / p.e);
  const s2 = sigmoid((x - p.c - p.d / 2) / p.f);
  return (p.a + p.b * s1 * (1 - s2)) / p.dmax;
}

function qedIndependent(desc: QedDescriptors): number {
  let product = 1;
  let weightSum = 0;
  for (const key of QED_KEYS) {
    const d = Math.max(
      desirabilityIndependent(desc[key], ADS_PARAMS[key]),
      1e-10,
    );
    product *= Math.pow(d, QED_WEIGHTS[key]);
    weightSum += QED_WEIGHTS[key];
  }
  return Math.pow(product, 1 / weightSum);
}

describe("desirability", () => {
  it("matches the sigmoid form of the same curve", () => {
    for (const key of QED_KEYS) {
      for (const x of [-2, 0, 0.5, 1, 3, 10, 50, 300, 800]) {
        expect(desirability(x, ADS_PARAMS[key])).toBeCloseTo(
          desirabilityIndependent(x, ADS_PARAMS[key]),
          12,
        );
      }
    }
  });

  it("prefers drug-like molecular weight", () => {
    const p = ADS_PARAMS.MW;
    expect(desirability(300, p)).toBeGreaterThan(desirability(800, p));
    expect(desirability(300, p)).toBeGreaterThan(desirability(20, p));
  });
});

describe("qed", () => {
  it("agrees with an independent recomputation within 1e-6", () => {
    for (const smiles of CORPUS_50) {
      const desc = bundle(smiles);
      const got = qed(desc);
      const want = qedIndependent(desc);
      expect(Math.abs(got - want), smiles).toBeLessThan(1e-6);
    }
  });

  it("stays in (0, 1)", () => {
    for (const smiles of CORPUS_50) {
      const value = qed(bundle(smiles));
      expect(value).toBeGreaterThan(0);
      expect(value).toBeLessThan(1);
    }
  });

  it("is deterministic", () => {
    const first = qed(bundle("CC(=O)Oc1ccccc1C(=O)O"));
    const second = qed(bundle("CC(=O)Oc1ccccc1C(=O)O"));
    expect(first).toBe(second);
  });
});

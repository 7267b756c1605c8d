import type { Chem } from "./chem.js";
import { mockScore, MOCK_LETTERS } from "./mock.js";
import { scoreWithModel, type PropertyModel } from "./models.js";
import { plogp } from "./plogp.js";
import { qed } from "./qed.js";
import { sas } from "./sas.js";
import { MoleculeError, type PropertyScorer } from "./types.js";

const ALL_LETTERS = ["B", "D", "H", "M", "P", "Q", "S"];
const MODEL_LETTERS = new Set(["B", "D", "H", "M"]);

/**
 * Real property scores. P, Q and S are computed from descriptors;
 * B, D, H, M need a loaded classifier and error per request otherwise.
 */
export class FullScorer implements PropertyScorer {
  readonly props = [...ALL_LETTERS];

  constructor(
    private readonly chem: Chem,
    private readonly models: Map<string, PropertyModel>,
  ) {}

  scoreAll(smiles: string, props: string[]): Record<string, number> {
    const analysis = this.chem.analyze(smiles);
    if (analysis === null) {
      throw new MoleculeError(`cannot parse SMILES: ${smiles}`);
    }
    const sasScore = sas(analysis);
    const out: Record<string, number> = {};
    for (const prop of props) {
      if (prop === "Q") {
        out[prop] = qed({
          MW: analysis.mw,
          ALOGP: analysis.alogp,
          HBA: analysis.hba,
          HBD: analysis.hbd,
          PSA: analysis.psa,
          ROTB: analysis.rotb,
          AROM: analysis.arom,
          ALERTS: analysis.alerts,
        });
      } else if (prop === "S") {
        out[prop] = sasScore;
      } else if (prop === "P") {
        out[prop] = plogp(analysis.alogp, sasScore, analysis.ringSizes);
      } else if (MODEL_LETTERS.has(prop)) {
        out[prop] = this.modelScore(prop, smiles);
      } else {
        throw new MoleculeError(`unknown property '${prop}'`);
      }
    }
    return out;
  }

  private modelScore(prop: string, smiles: string): number {
    const model = this.models.get(prop);
    if (model === undefined) {
      throw new MoleculeError(`no model loaded for property '${prop}'`);
    }
    const bits = this.chem.morganBits(smiles, model.radius, model.nBits);
    if (bits === null) {
      throw new MoleculeError(`cannot parse SMILES: ${smiles}`);
    }
    return scoreWithModel(model, bits);
  }
}

/** Hash-based scores, a pure function of (canonical SMILES, letter). */
export class MockScorer implements PropertyScorer {
  readonly props = [...MOCK_LETTERS];

  constructor(private readonly chem: Chem) {}

  scoreAll(smiles: string, props: string[]): Record<string, number> {
    const canonical = this.chem.canonical(smiles);
    if (canonical === null) {
      throw new MoleculeError(`cannot parse SMILES: ${smiles}`);
    }
    const out: Record<string, number> = {};
    for (const prop of props) {
      if (!MOCK_LETTERS.includes(prop)) {
        throw new MoleculeError(`unknown property '${prop}'`);
      }
      out[prop] = mockScore(canonical, prop);
    }
    return out;
  }
}

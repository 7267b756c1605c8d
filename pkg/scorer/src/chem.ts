/**
 * Thin wrapper over the RDKit WASM build: one parse per molecule, all
 * downstream numbers extracted eagerly so the JSMol can be freed.
 */

import { createRequire } from "node:module";
import { dirname, join } from "node:path";
import type { JSMol, RDKitLoader, RDKitModule } from "@rdkit/rdkit";

const require = createRequire(import.meta.url);

// Hydrogen-bond acceptor patterns of the published drug-likeness
// desirability model; counted as total substructure matches.
const ACCEPTOR_SMARTS = [
  "[oH0;X2]",
  "[OH1;X2;v2]",
  "[OH0;X2;v2]",
  "[OH0;X1;v2]",
  "[O-;X1]",
  "[SH0;X2;v2]",
  "[SH0;X1;v2]",
  "[S-;X1]",
  "[nH0;X2]",
  "[NH0;X1;v3]",
  "[$([N;+0;X3;v3]);!$(N[C,S]=O)]",
];

export interface MolAnalysis {
  canonicalSmiles: string;
  // drug-likeness inputs
  mw: number;
  alogp: number;
  hba: number;
  hbd: number;
  psa: number;
  rotb: number;
  arom: number;
  alerts: number; // no structural-alert catalog ships with the WASM build
  // synthetic-accessibility inputs
  heavyAtoms: number;
  heteroatoms: number;
  spiroAtoms: number;
  bridgeheadAtoms: number;
  stereoCenters: number;
  ringSizes: number[];
}

export class Chem {
  private constructor(
    private readonly rdkit: RDKitModule,
    private readonly acceptorQueries: JSMol[],
  ) {}

  static async create(): Promise<Chem> {
    const loader = require("@rdkit/rdkit") as RDKitLoader;
    const distDir = dirname(require.resolve("@rdkit/rdkit"));
    const rdkit = await loader({
      locateFile: ((file: string) => join(distDir, file)) as never,
    });
    const queries = ACCEPTOR_SMARTS.map((s) => {
      const q = rdkit.get_qmol(s);
      if (q === null) {
        throw new Error(`acceptor pattern failed to compile: ${s}`);
      }
      return q;
    });
    return new Chem(rdkit, queries);
  }

  /** Canonical SMILES, or null when the input does not parse. */
  canonical(smiles: string): string | null {
    const mol = this.parse(smiles);
    if (mol === null) {
      return null;
    }
    try {
      return mol.get_smiles();
    } finally {
      mol.delete();
    }
  }

  /** Everything the property calculators need, or null on parse failure. */
  analyze(smiles: string): MolAnalysis | null {
    const mol = this.parse(smiles);
    if (mol === null) {
      return null;
    }
    try {
      const d = JSON.parse(mol.get_descriptors()) as Record<string, number>;
      return {
        canonicalSmiles: mol.get_smiles(),
        mw: d.amw,
        alogp: d.CrippenClogP,
        hba: this.countAcceptors(mol),
        hbd: d.NumHBD,
        psa: d.tpsa,
        rotb: d.NumRotatableBonds,
        arom: d.NumAromaticRings,
        alerts: 0,
        heavyAtoms: d.NumHeavyAtoms,
        heteroatoms: d.NumHeteroatoms,
        spiroAtoms: d.NumSpiroAtoms,
        bridgeheadAtoms: d.NumBridgeheadAtoms,
        stereoCenters:
          d.NumAtomStereoCenters + d.NumUnspecifiedAtomStereoCenters,
        ringSizes: this.ringSizes(mol),
      };
    } finally {
      mol.delete();
    }
  }

  /** Morgan fingerprint as a '0'/'1' string; null on parse failure. */
  morganBits(smiles: string, radius: number, nBits: number): string | null {
    const mol = this.parse(smiles);
    if (mol === null) {
      return null;
    }
    try {
      return mol.get_morgan_fp(JSON.stringify({ radius, nBits }));
    } finally {
      mol.delete();
    }
  }

  private parse(smiles: string): JSMol | null {
    if (typeof smiles !== "string" || smiles.length === 0) {
      return null;
    }
    return this.rdkit.get_mol(smiles);
  }

  private countAcceptors(mol: JSMol): number {
    let total = 0;
    for (const query of this.acceptorQueries) {
      const matches = JSON.parse(mol.get_substruct_matches(query));
      if (Array.isArray(matches)) {
        total += matches.length;
      }
    }
    return total;
  }

  private ringSizes(mol: JSMol): number[] {
    const doc = JSON.parse(mol.get_json());
    const molecule = doc.molecules?.[0];
    const extensions: Array<{ name?: string; atomRings?: number[][] }> =
      molecule?.extensions ?? [];
    for (const ext of extensions) {
      if (ext.name === "rdkitRepresentation" && Array.isArray(ext.atomRings)) {
        return ext.atomRings.map((ring) => ring.length);
      }
    }
    return [];
  }
}

/**
 * Synthetic-accessibility estimate on the conventional 1 (easy) to 10
 * (hard) scale.
 *
 * The published score is fragment-frequency knowledge plus structural
 * complexity penalties. The frequency database is not distributable
 * here, so the fragment term is a bounded proxy (heteroatom density and
 * unusual ring sizes); the complexity penalties (size, stereo centers,
 * spiro and bridgehead atoms, macrocycles) and the final rescaling
 * follow the published form. Values are comparable within this scorer,
 * not to any external implementation.
 */

export interface SasFeatures {
  heavyAtoms: number;
  heteroatoms: number;
  spiroAtoms: number;
  bridgeheadAtoms: number;
  stereoCenters: number;
  ringSizes: number[];
}

function fragmentProxy(f: SasFeatures): number {
  if (f.heavyAtoms === 0) {
    return 1.0;
  }
  const hetFraction = f.heteroatoms / f.heavyAtoms;
  const oddRings = f.ringSizes.filter((n) => n !== 5 && n !== 6).length;
  const raw = 1.0 - 1.8 * hetFraction - 0.25 * oddRings;
  return Math.min(1.0, Math.max(-2.0, raw));
}

export function sas(f: SasFeatures): number {
  const n = Math.max(f.heavyAtoms, 1);
  const sizePenalty = Math.pow(n, 1.005) - n;
  const stereoPenalty = Math.log10(f.stereoCenters + 1);
  const spiroPenalty = Math.log10(f.spiroAtoms + 1);
  const bridgePenalty = Math.log10(f.bridgeheadAtoms + 1);
  const macroPenalty = f.ringSizes.some((size) => size > 8)
    ? Math.log10(2)
    : 0;
  const complexity =
    -sizePenalty - stereoPenalty - spiroPenalty - bridgePenalty - macroPenalty;

  const raw = fragmentProxy(f) + complexity;

  // rescale from the raw range (-4, 2.5) onto (1, 10), soft top end
  let score = 11 - ((raw - -4.0 + 1) / (2.5 - -4.0 + 1)) * 9;
  if (score > 8) {
    score = 8 + Math.log(score + 1 - 9);
  }
  if (score > 10) {
    return 10;
  }
  if (score < 1) {
    return 1;
  }
  return score;
}

/**
 * Quantitative drug-likeness from eight descriptors.
 *
 * Each descriptor is mapped through an asymmetric double sigmoid
 * desirability function and the results are combined as a weighted
 * geometric mean. Parameters and weights are the published fitted
 * values of the reference desirability model. The structural-alert
 * count is an input like any other; this package always feeds it 0
 * because no alert catalog ships with the WASM toolkit build.
 */

export interface QedDescriptors {
  MW: number;
  ALOGP: number;
  HBA: number;
  HBD: number;
  PSA: number;
  ROTB: number;
  AROM: number;
  ALERTS: number;
}

export type QedKey = keyof QedDescriptors;

export const QED_KEYS: QedKey[] = [
  "MW",
  "ALOGP",
  "HBA",
  "HBD",
  "PSA",
  "ROTB",
  "AROM",
  "ALERTS",
];

export interface AdsParams {
  a: number;
  b: number;
  c: number;
  d: number;
  e: number;
  f: number;
  dmax: number;
}

// prettier-ignore
export const ADS_PARAMS: Record<QedKey, AdsParams> = {
  MW:     { a: 2.817065973, b: 392.5754953, c: 290.7489764, d: 2.419764353, e: 49.22325677, f: 65.37051707, dmax: 104.9805561 },
  ALOGP:  { a: 3.172690585, b: 137.8624751, c: 2.534937431, d: 4.581497897, e: 0.822739154, f: 0.576295591, dmax: 131.3186604 },
  HBA:    { a: 2.948620388, b: 160.4605972, c: 3.615294657, d: 4.435986202, e: 0.290141953, f: 1.300669958, dmax: 148.7763046 },
  HBD:    { a: 1.618662227, b: 1010.051101, c: 0.985094388, d: 0.000000001, e: 0.713820843, f: 0.920922555, dmax: 258.1632616 },
  PSA:    { a: 1.876861559, b: 125.2232657, c: 62.90773554, d: 87.83366614, e: 12.01999824, f: 28.51324732, dmax: 104.5686167 },
  ROTB:   { a: 0.010000000, b: 272.4121427, c: 2.558379970, d: 1.565547684, e: 1.271567166, f: 2.758063707, dmax: 105.4420403 },
  AROM:   { a: 3.217788970, b: 957.7374108, c: 2.274627939, d: 0.000000001, e: 1.317690384, f: 0.375760881, dmax: 312.3372610 },
  ALERTS: { a: 0.010000000, b: 1199.094025, c: -0.09002883, d: 0.000000001, e: 0.185904477, f: 0.875193782, dmax: 417.7253140 },
};

export const QED_WEIGHTS: Record<QedKey, number> = {
  MW: 0.66,
  ALOGP: 0.46,
  HBA: 0.05,
  HBD: 0.61,
  PSA: 0.06,
  ROTB: 0.65,
  AROM: 0.48,
  ALERTS: 0.95,
};

export function desirability(x: number, p: AdsParams): number {
  const rise = 1 + Math.exp(-(x - p.c + p.d / 2) / p.e);
  const fall = 1 + Math.exp(-(x - p.c - p.d / 2) / p.f);
  const t = p.a + (p.b / rise) * (1 - 1 / fall);
  return t / p.dmax;
}

export function qed(desc: QedDescriptors): number {
  let weightedLogSum = 0;
  let weightSum = 0;
  for (const key of QED_KEYS) {
    const d = Math.max(desirability(desc[key], ADS_PARAMS[key]), 1e-10);
    weightedLogSum += QED_WEIGHTS[key] * Math.log(d);
    weightSum += QED_WEIGHTS[key];
  }
  return Math.exp(weightedLogSum / weightSum);
}

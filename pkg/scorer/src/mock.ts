/**
 * Deterministic stand-in scores for CI: a stable hash of the canonical
 * SMILES and the property letter, mapped into that property's range.
 * No chemistry beyond canonicalization; identical across runs and
 * platforms.
 */

import { createHash } from "node:crypto";

const UNIT_DENOM = 2 ** 48;

function hashUnit(canonicalSmiles: string, letter: string): number {
  const digest = createHash("sha256")
    .update(`${canonicalSmiles}\n${letter}`)
    .digest("hex");
  return parseInt(digest.slice(0, 12), 16) / UNIT_DENOM;
}

export const MOCK_LETTERS = ["B", "D", "H", "M", "P", "Q", "S"];

export function mockScore(canonicalSmiles: string, letter: string): number {
  const u = hashUnit(canonicalSmiles, letter);
  switch (letter) {
    case "P":
      return -4 + 10 * u;
    case "S":
      return 1 + 9 * u;
    default:
      return u;
  }
}

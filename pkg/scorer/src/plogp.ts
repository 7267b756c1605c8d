/**
 * Penalized octanol-water partition coefficient: logP minus synthetic
 * accessibility minus a large-ring penalty, each term standardized.
 *
 * The means and standard deviations are the frozen constants of the
 * molecule-generation baseline this score originates from (computed
 * over its ZINC training set, with SAS and ring penalty entering
 * negated, which the signs below preserve).
 */

export const LOGP_MEAN = 2.4570953396190123;
export const LOGP_STD = 1.434324401111988;
export const SA_MEAN = -3.0525811293166134;
export const SA_STD = 0.8335207024513095;
export const CYCLE_MEAN = -0.0485696876403053;
export const CYCLE_STD = 0.2860212110245455;

/** Ring penalty: size of the largest ring beyond 6, zero otherwise. */
export function ringPenalty(ringSizes: number[]): number {
  const largest = ringSizes.length > 0 ? Math.max(...ringSizes) : 0;
  return Math.max(largest - 6, 0);
}

export function plogp(
  logP: number,
  sasScore: number,
  ringSizes: number[],
): number {
  const logPTerm = (logP - LOGP_MEAN) / LOGP_STD;
  const saTerm = (-sasScore - SA_MEAN) / SA_STD;
  const cycleTerm = (-ringPenalty(ringSizes) - CYCLE_MEAN) / CYCLE_STD;
  return logPTerm + saTerm + cycleTerm;
}

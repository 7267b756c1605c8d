export interface HandshakeMessage {
  hello: "scorer";
  version: 1;
  props: string[];
}

export interface ScoreRequest {
  id: number;
  smiles: string;
  props: string[];
}

export interface ScoreResponse {
  id: number;
  scores: Record<string, number>;
}

export interface ErrorResponse {
  id: number;
  error: string;
}

export type Response = ScoreResponse | ErrorResponse;

/** Per-molecule failure: becomes an error response, never kills the loop. */
export class MoleculeError extends Error {}

export interface PropertyScorer {
  /** Letters advertised in the handshake. */
  readonly props: string[];
  /** Scores one molecule for the requested letters; throws MoleculeError. */
  scoreAll(smiles: string, props: string[]): Record<string, number>;
}

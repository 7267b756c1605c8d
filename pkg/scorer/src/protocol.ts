/**
 * JSON Lines request loop. The scorer speaks first with a handshake,
 * then answers every request line with exactly one response line
 * carrying the same id. Molecule-level failures become error
 * responses; lines that cannot be attributed to a request id are
 * reported on stderr and skipped, because a response without the
 * right id would corrupt the stream for the client.
 */

import readline from "node:readline";
import type {
  HandshakeMessage,
  PropertyScorer,
  Response,
  ScoreRequest,
} from "./types.js";
import { MoleculeError } from "./types.js";

export const PROTOCOL_VERSION = 1;

function writeLine(output: NodeJS.WritableStream, payload: unknown): void {
  output.write(`${JSON.stringify(payload)}\n`);
}

function parseRequest(line: string): ScoreRequest | string | null {
  let obj: unknown;
  try {
    obj = JSON.parse(line);
  } catch {
    return `not JSON: ${line}`;
  }
  const req = obj as Partial<ScoreRequest>;
  if (typeof req !== "object" || req === null || !Number.isInteger(req.id)) {
    return `no integer id: ${line}`;
  }
  return req as ScoreRequest;
}

function answer(scorer: PropertyScorer, req: ScoreRequest): Response {
  if (typeof req.smiles !== "string") {
    return { id: req.id, error: "request has no smiles string" };
  }
  if (
    !Array.isArray(req.props) ||
    !req.props.every((p) => typeof p === "string")
  ) {
    return { id: req.id, error: "request has no props list" };
  }
  try {
    return { id: req.id, scores: scorer.scoreAll(req.smiles, req.props) };
  } catch (err) {
    if (err instanceof MoleculeError) {
      return { id: req.id, error: err.message };
    }
    throw err;
  }
}

export async function serve(
  scorer: PropertyScorer,
  input: NodeJS.ReadableStream,
  output: NodeJS.WritableStream,
): Promise<void> {
  const handshake: HandshakeMessage = {
    hello: "scorer",
    version: PROTOCOL_VERSION,
    props: [...scorer.props],
  };
  writeLine(output, handshake);

  const rl = readline.createInterface({
    input,
    crlfDelay: Number.POSITIVE_INFINITY,
  });
  for await (const line of rl) {
    if (!line.trim()) {
      continue;
    }
    const req = parseRequest(line);
    if (req === null) {
      continue;
    }
    if (typeof req === "string") {
      process.stderr.write(`skipping request line, ${req}\n`);
      continue;
    }
    writeLine(output, answer(scorer, req));
  }
}

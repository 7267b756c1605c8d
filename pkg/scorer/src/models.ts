/**
 * Optional pretrained classifiers for the model-backed properties
 * (BBB permeability, DRD2 inhibition, intestinal adsorption,
 * mutagenicity): logistic regression over Morgan fingerprint bits,
 * stored one model per JSON file in --model-dir. Letters without a
 * model file stay unavailable and requests for them get per-request
 * errors; this package never fabricates a property value.
 */

import { readFileSync, readdirSync } from "node:fs";
import { join } from "node:path";

export interface PropertyModel {
  property: string;
  radius: number;
  nBits: number;
  bias: number;
  /** Sparse weights as [bitIndex, weight] pairs. */
  weights: [number, number][];
}

export function loadModels(dir: string): Map<string, PropertyModel> {
  const models = new Map<string, PropertyModel>();
  for (const name of readdirSync(dir).sort()) {
    if (!name.endsWith(".json")) {
      continue;
    }
    const path = join(dir, name);
    const model = validate(JSON.parse(readFileSync(path, "utf-8")), path);
    if (models.has(model.property)) {
      throw new Error(`duplicate model for property '${model.property}'`);
    }
    models.set(model.property, model);
  }
  return models;
}

function validate(obj: unknown, path: string): PropertyModel {
  const m = obj as Partial<PropertyModel>;
  if (
    typeof m !== "object" ||
    m === null ||
    typeof m.property !== "string" ||
    m.property.length !== 1 ||
    !Number.isInteger(m.radius) ||
    !Number.isInteger(m.nBits) ||
    (m.nBits as number) <= 0 ||
    typeof m.bias !== "number" ||
    !Array.isArray(m.weights) ||
    !m.weights.every(
      (w) =>
        Array.isArray(w) &&
        w.length === 2 &&
        Number.isInteger(w[0]) &&
        w[0] >= 0 &&
        w[0] < (m.nBits as number) &&
        typeof w[1] === "number",
    )
  ) {
    throw new Error(`malformed model file: ${path}`);
  }
  return m as PropertyModel;
}

export function scoreWithModel(model: PropertyModel, fpBits: string): number {
  let z = model.bias;
  for (const [index, weight] of model.weights) {
    if (fpBits.charAt(index) === "1") {
      z += weight;
    }
  }
  return 1 / (1 + Math.exp(-z));
}

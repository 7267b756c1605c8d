import { parseArgs } from "node:util";
import { Chem } from "./chem.js";
import { loadModels } from "./models.js";
import { serve } from "./protocol.js";
import { FullScorer, MockScorer } from "./scoring.js";
import type { PropertyScorer } from "./types.js";

async function main(): Promise<void> {
  const { values } = parseArgs({
    options: {
      mode: { type: "string", default: "full" },
      "model-dir": { type: "string" },
    },
  });
  if (values.mode !== "full" && values.mode !== "mock") {
    process.stderr.write(`unknown --mode: ${values.mode}\n`);
    process.exit(2);
  }

  // exit quietly when the client closes the pipe mid-write
  process.stdout.on("error", (err: NodeJS.ErrnoException) => {
    if (err.code === "EPIPE") {
      process.exit(0);
    }
    throw err;
  });

  const chem = await Chem.create();
  let scorer: PropertyScorer;
  if (values.mode === "mock") {
    scorer = new MockScorer(chem);
  } else {
    const models =
      values["model-dir"] === undefined
        ? new Map()
        : loadModels(values["model-dir"]);
    scorer = new FullScorer(chem, models);
  }
  await serve(scorer, process.stdin, process.stdout);
}

main().catch((err) => {
  process.stderr.write(`fatal: ${err}\n`);
  process.exit(1);
});

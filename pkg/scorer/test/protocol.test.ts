import { spawn, type ChildProcessWithoutNullStreams } from "node:child_process";
import { mkdtempSync, writeFileSync } from "node:fs";
import { tmpdir } from "node:os";
import { join } from "node:path";
import readline from "node:readline";
import { afterEach, describe, expect, it } from "vitest";

const MAIN = new URL("../dist/main.js", import.meta.url).pathname;

/** Line-oriented test client; lines are queued so reads never race writes. */
class ScorerClient {
  private lines: string[] = [];
  private waiters: Array<(line: string) => void> = [];
  private closed = false;

  constructor(readonly proc: ChildProcessWithoutNullStreams) {
    const rl = readline.createInterface({ input: proc.stdout });
    rl.on("line", (line) => {
      const waiter = this.waiters.shift();
      if (waiter) {
        waiter(line);
      } else {
        this.lines.push(line);
      }
    });
    rl.on("close", () => {
      this.closed = true;
      for (const waiter of this.waiters.splice(0)) {
        waiter("");
      }
    });
  }

  static start(args: string[]): ScorerClient {
    return new ScorerClient(spawn(process.execPath, [MAIN, ...args]));
  }

  sendRaw(line: string): void {
    this.proc.stdin.write(`${line}\n`);
  }

  send(obj: unknown): void {
    this.sendRaw(JSON.stringify(obj));
  }

  async nextLine(): Promise<string> {
    const queued = this.lines.shift();
    if (queued !== undefined) {
      return queued;
    }
    if (this.closed) {
      throw new Error("scorer stdout closed");
    }
    return new Promise((resolve) => this.waiters.push(resolve));
  }

  async next(): Promise<any> {
    return JSON.parse(await this.nextLine());
  }

  stop(): void {
    this.proc.kill();
  }
}

const clients: ScorerClient[] = [];

function start(args: string[]): ScorerClient {
  const client = ScorerClient.start(args);
  clients.push(client);
  return client;
}

afterEach(() => {
  for (const client of clients.splice(0)) {
    client.stop();
  }
});

const VALID = ["CCO", "c1ccccc1", "CC(=O)Oc1ccccc1C(=O)O", "CCN", "C1CCCCC1"];
const MALFORMED = ["not-a-molecule", "C(C", "", "C1CC"];

describe("handshake", () => {
  it("is the first line, even with requests already queued", async () => {
    const client = start(["--mode", "mock"]);
    // write before the process can possibly have answered anything
    client.send({ id: 7, smiles: "CCO", props: ["Q"] });
    const first = await client.next();
    expect(first).toEqual({
      hello: "scorer",
      version: 1,
      props: ["B", "D", "H", "M", "P", "Q", "S"],
    });
    const second = await client.next();
    expect(second.id).toBe(7);
    expect(second.scores.Q).toBeTypeOf("number");
  });
});

describe("pipelined requests", () => {
  it("answers 1000 interleaved requests one-to-one by id", async () => {
    const client = start(["--mode", "mock"]);
    await client.next(); // handshake

    const malformedIds = new Set<number>();
    const batch: string[] = [];
    for (let id = 0; id < 1000; id++) {
      let smiles: string;
      if (id % 97 === 0) {
        smiles = MALFORMED[id % MALFORMED.length];
        malformedIds.add(id);
      } else {
        smiles = VALID[id % VALID.length];
      }
      batch.push(JSON.stringify({ id, smiles, props: ["B", "P", "S"] }));
    }
    client.sendRaw(batch.join("\n"));

    const seen = new Set<number>();
    for (let k = 0; k < 1000; k++) {
      const msg = await client.next();
      expect(Number.isInteger(msg.id)).toBe(true);
      expect(msg.id).toBeGreaterThanOrEqual(0);
      expect(msg.id).toBeLessThan(1000);
      expect(seen.has(msg.id)).toBe(false);
      seen.add(msg.id);
      if (malformedIds.has(msg.id)) {
        expect(msg.error).toBeTypeOf("string");
        expect(msg.scores).toBeUndefined();
      } else {
        expect(msg.scores).toBeTypeOf("object");
        expect(Object.keys(msg.scores).sort()).toEqual(["B", "P", "S"]);
      }
    }
    expect(seen.size).toBe(1000);
  }, 60_000);
});

describe("malformed input", () => {
  it("returns error objects for unparseable SMILES", async () => {
    const client = start(["--mode", "mock"]);
    await client.next();
    for (const [k, smiles] of MALFORMED.entries()) {
      client.send({ id: k, smiles, props: ["Q"] });
      const msg = await client.next();
      expect(msg.id).toBe(k);
      expect(msg.error).toBeTypeOf("string");
    }
  });

  it("skips lines it cannot attribute to a request id", async () => {
    const client = start(["--mode", "mock"]);
    await client.next();
    client.sendRaw("this is not json");
    client.send({ smiles: "CCO", props: ["Q"] }); // no id
    client.send({ id: 5, smiles: "CCO", props: ["Q"] });
    const msg = await client.next();
    expect(msg.id).toBe(5);
    expect(msg.scores.Q).toBeTypeOf("number");
  });

  it("errors per request on wrong field types, keeps serving", async () => {
    const client = start(["--mode", "mock"]);
    await client.next();
    client.send({ id: 1, smiles: 42, props: ["Q"] });
    client.send({ id: 2, smiles: "CCO", props: "Q" });
    client.send({ id: 3, smiles: "CCO", props: ["Z"] });
    client.send({ id: 4, smiles: "CCO", props: ["Q"] });
    expect((await client.next()).error).toContain("smiles");
    expect((await client.next()).error).toContain("props");
    expect((await client.next()).error).toContain("Z");
    expect((await client.next()).scores.Q).toBeTypeOf("number");
  });
});

describe("mock mode", () => {
  it("is a pure function of the molecule, not its spelling", async () => {
    const client = start(["--mode", "mock"]);
    await client.next();
    const props = ["B", "D", "H", "M", "P", "Q", "S"];
    client.send({ id: 0, smiles: "CCO", props });
    client.send({ id: 1, smiles: "OCC", props });
    client.send({ id: 2, smiles: "CCO", props });
    const a = await client.next();
    const b = await client.next();
    const c = await client.next();
    expect(a.scores).toEqual(b.scores);
    expect(a.scores).toEqual(c.scores);
  });

  it("stays identical across process restarts", async () => {
    const results: Record<string, number>[] = [];
    for (let round = 0; round < 2; round++) {
      const client = start(["--mode", "mock"]);
      await client.next();
      client.send({ id: 0, smiles: "CC(=O)O", props: ["B", "P", "S"] });
      results.push((await client.next()).scores);
      client.stop();
    }
    expect(results[0]).toEqual(results[1]);
  });

  it("keeps every letter inside its documented range", async () => {
    const client = start(["--mode", "mock"]);
    await client.next();
    const props = ["B", "D", "H", "M", "P", "Q", "S"];
    for (const [k, smiles] of VALID.entries()) {
      client.send({ id: k, smiles, props });
    }
    for (let k = 0; k < VALID.length; k++) {
      const { scores } = await client.next();
      for (const letter of ["B", "D", "H", "M", "Q"]) {
        expect(scores[letter]).toBeGreaterThanOrEqual(0);
        expect(scores[letter]).toBeLessThanOrEqual(1);
      }
      expect(scores.S).toBeGreaterThanOrEqual(1);
      expect(scores.S).toBeLessThanOrEqual(10);
      expect(scores.P).toBeGreaterThanOrEqual(-4);
      expect(scores.P).toBeLessThanOrEqual(6);
    }
  });
});

describe("full mode", () => {
  it("computes P, Q, S and errors per request on model-backed letters", async () => {
    const client = start(["--mode", "full"]);
    await client.next();
    client.send({ id: 0, smiles: "CCO", props: ["P", "Q", "S"] });
    client.send({ id: 1, smiles: "CCO", props: ["B"] });
    client.send({ id: 2, smiles: "CCO", props: ["Q"] });
    const ok = await client.next();
    expect(ok.scores.Q).toBeGreaterThan(0);
    expect(ok.scores.Q).toBeLessThan(1);
    expect(ok.scores.S).toBeGreaterThanOrEqual(1);
    expect(ok.scores.S).toBeLessThanOrEqual(10);
    expect(ok.scores.P).toBeTypeOf("number");
    const noModel = await client.next();
    expect(noModel.error).toContain("B");
    const again = await client.next();
    expect(again.scores.Q).toBe(ok.scores.Q);
  });

  it("serves model-backed letters when a model dir is given", async () => {
    const dir = mkdtempSync(join(tmpdir(), "scorer-models-"));
    writeFileSync(
      join(dir, "B.json"),
      JSON.stringify({
        property: "B",
        radius: 2,
        nBits: 2048,
        bias: -0.25,
        weights: [
          [0, 0.5],
          [807, 1.25],
          [2047, -0.75],
        ],
      }),
    );
    const client = start(["--mode", "full", "--model-dir", dir]);
    await client.next();
    client.send({ id: 0, smiles: "CCO", props: ["B"] });
    client.send({ id: 1, smiles: "CCO", props: ["D"] });
    const scored = await client.next();
    expect(scored.scores.B).toBeGreaterThan(0);
    expect(scored.scores.B).toBeLessThan(1);
    const missing = await client.next();
    expect(missing.error).toContain("D");
  });
});

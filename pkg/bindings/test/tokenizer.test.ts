import { execFileSync } from "node:child_process";
import { mkdtempSync, readFileSync } from "node:fs";
import { tmpdir } from "node:os";
import { dirname, join } from "node:path";
import { fileURLToPath } from "node:url";
import { beforeAll, describe, expect, it } from "vitest";

import { Tokenizer, VercholError } from "../src/index.js";

const here = dirname(fileURLToPath(import.meta.url));
const repo = join(here, "..", "..");
const TA_PACK = join(repo, "packs", "ta-sample");
const TR_PACK = join(repo, "packs", "tr");
const TR_CORPUS = join(repo, "tests", "fixtures", "corpus_tr.txt");
const WORDS = readFileSync(join(here, "fixtures", "words_ta_1000.txt"), "utf-8")
  .split("\n")
  .filter((w) => w.length > 0);

function cli(args: string[], input: string): string {
  return execFileSync("python3", ["-m", "verchol", ...args], {
    input,
    encoding: "utf-8",
    maxBuffer: 64 * 1024 * 1024,
  });
}

let trVocab: string;

beforeAll(() => {
  const dir = mkdtempSync(join(tmpdir(), "verchol-bindings-"));
  trVocab = join(dir, "tr.vocab");
  cli(["build-vocab", "--pack", TR_PACK, "--corpus", TR_CORPUS,
       "--target-size", "6000", "--output", trVocab], "");
});

describe("construction", () => {
  it("fails on a missing pack with the core's message", () => {
    expect(() => new Tokenizer({ packDir: join(repo, "no-such-pack") }))
      .toThrowError(/pack incomplete/);
  });

  it("succeeds on a valid pack", () => {
    expect(() => new Tokenizer({ packDir: TR_PACK })).not.toThrow();
  });
});

describe("tokenize", () => {
  it("returns annotated tokens matching the reference segmentation", () => {
    const tok = new Tokenizer({ packDir: TR_PACK });
    expect(tok.tokenize("evlerinden")).toEqual([
      { surface: "ev", tier: 1, category: "root" },
      { surface: "ler", tier: 1, category: "affix" },
      { surface: "in", tier: 1, category: "affix" },
      { surface: "den", tier: 1, category: "affix" },
    ]);
  });

  it("returns [] for empty input", () => {
    const tok = new Tokenizer({ packDir: TR_PACK });
    expect(tok.tokenize("")).toEqual([]);
  });

  it("token surfaces concatenate back to the input", () => {
    const tok = new Tokenizer({ packDir: TA_PACK });
    const text = "படித்துக்கொண்டிருக்கிறேன்";
    const tokens = tok.tokenize(text);
    expect(tokens.map((t) => t.surface).join("")).toBe(text);
    expect(tokens).toHaveLength(5);
  });

  it("rejects multi-line input", () => {
    const tok = new Tokenizer({ packDir: TR_PACK });
    expect(() => tok.tokenize("a\nb")).toThrowError(VercholError);
  });
});

describe("CLI parity on the 1000-word golden corpus", () => {
  it("tokenize output is bit-identical to `tokenize --annotate`", () => {
    const tok = new Tokenizer({ packDir: TA_PACK });
    const bound = tok.tokenizeLinesRaw(WORDS);
    const direct = cli(["tokenize", "--pack", TA_PACK, "--annotate"],
                       WORDS.join("\n") + "\n");
    expect(WORDS).toHaveLength(1000);
    expect(bound.join("\n") + "\n").toBe(direct);
  });

  it("encode output is bit-identical to the CLI for fixture words", () => {
    const tok = new Tokenizer({ packDir: TR_PACK, vocabPath: trVocab });
    const sample = ["evlerinden", "evler", "okul", "araba"];
    for (const word of sample) {
      const direct = cli(
        ["encode", "--pack", TR_PACK, "--vocab", trVocab], word + "\n");
      expect(tok.encode(word).join(" ") + "\n").toBe(direct);
    }
  });
});

describe("encode / decode", () => {
  it("roundtrips fixture text with zero unknowns", () => {
    const tok = new Tokenizer({ packDir: TR_PACK, vocabPath: trVocab });
    for (const text of ["evlerden okul ev!", "ev evler, 12 evlerinden."]) {
      expect(tok.decode(tok.encode(text))).toBe(text);
    }
  });

  it("encodes empty text to []", () => {
    const tok = new Tokenizer({ packDir: TR_PACK, vocabPath: trVocab });
    expect(tok.encode("")).toEqual([]);
    expect(tok.decode([])).toBe("");
  });

  it("requires a vocabulary", () => {
    const tok = new Tokenizer({ packDir: TR_PACK });
    expect(() => tok.encode("ev")).toThrowError(/requires a vocabulary/);
    expect(() => tok.decode([1])).toThrowError(/requires a vocabulary/);
  });

  it("propagates core errors for invalid ids", () => {
    const tok = new Tokenizer({ packDir: TR_PACK, vocabPath: trVocab });
    expect(() => tok.decode([10_000_000])).toThrowError(/invalid token id/);
    expect(() => tok.decode([-1])).toThrowError(VercholError);
  });
});

/**
 * Node.js bindings for the verchol tokenizer.
 *
 * A façade over the `verchol` command-line interface: every method shells
 * out to `python3 -m verchol`, so no tokenization logic is duplicated here
 * and outputs are bit-identical to the CLI's. A tokenizer instance is
 * immutable after construction and safe to share between callers.
 */
import { spawnSync } from "node:child_process";

export interface AnnotatedToken {
  surface: string;
  tier: number;
  category: string;
}

export interface TokenizerOptions {
  /** Language pack directory. */
  packDir: string;
  /** Optional vocabulary file (required for encode/decode). */
  vocabPath?: string;
  /** Maximum affixes per decomposition (CLI --max-affix-chain). */
  maxAffixChain?: number;
  /** Python interpreter to spawn (default "python3"). */
  python?: string;
}

export class VercholError extends Error {}

function stripPrefix(message: string): string {
  return message.startsWith("error: ") ? message.slice("error: ".length) : message;
}

export class Tokenizer {
  private readonly options: Required<Omit<TokenizerOptions, "vocabPath">> &
    Pick<TokenizerOptions, "vocabPath">;

  constructor(options: TokenizerOptions) {
    this.options = {
      python: "python3",
      maxAffixChain: 6,
      ...options,
    };
    // Fail construction on an invalid pack, mirroring the core's behavior.
    this.run(["validate-pack", "--pack", this.options.packDir], "");
  }

  private run(args: string[], input: string): string {
    const proc = spawnSync(this.options.python, ["-m", "verchol", ...args], {
      input,
      encoding: "utf-8",
      maxBuffer: 64 * 1024 * 1024,
    });
    if (proc.error) {
      throw new VercholError(`failed to spawn ${this.options.python}: ${proc.error.message}`);
    }
    if (proc.status !== 0) {
      const detail = (proc.stderr || proc.stdout).trim();
      throw new VercholError(stripPrefix(detail) || `verchol exited with status ${proc.status}`);
    }
    return proc.stdout;
  }

  private lineArgs(command: string): string[] {
    const args = [command, "--pack", this.options.packDir,
                  "--max-affix-chain", String(this.options.maxAffixChain)];
    if (this.options.vocabPath) {
      args.push("--vocab", this.options.vocabPath);
    }
    return args;
  }

  private requireSingleLine(text: string): void {
    if (text.includes("\n")) {
      throw new VercholError("text must not contain newlines; call once per line");
    }
  }

  /** Raw `tokenize --annotate` output lines for a batch of input lines. */
  tokenizeLinesRaw(lines: string[]): string[] {
    const out = this.run([...this.lineArgs("tokenize"), "--annotate"],
                         lines.join("\n") + "\n");
    const rows = out.split("\n");
    rows.pop(); // trailing newline
    if (rows.length !== lines.length) {
      throw new VercholError(
        `expected ${lines.length} output lines, got ${rows.length}`);
    }
    return rows;
  }

  /** Segment one line of text into annotated (surface, tier, category) tokens. */
  tokenize(text: string): AnnotatedToken[] {
    this.requireSingleLine(text);
    const row = this.tokenizeLinesRaw([text])[0];
    if (row === "") {
      return [];
    }
    return row.split("\t").map((field) => {
      // surface/T<tier>/<category>; the surface itself may contain "/"
      const parts = field.split("/");
      const category = parts.pop()!;
      const tierField = parts.pop()!;
      if (!/^T[0-3]$/.test(tierField)) {
        throw new VercholError(`malformed token field: ${field}`);
      }
      return { surface: parts.join("/"), tier: Number(tierField.slice(1)), category };
    });
  }

  /** Encode one line of text to token ids (requires a vocabulary). */
  encode(text: string): number[] {
    this.requireSingleLine(text);
    if (!this.options.vocabPath) {
      throw new VercholError("encode requires a vocabulary (vocabPath)");
    }
    const out = this.run(this.lineArgs("encode"), text + "\n").split("\n")[0];
    return out === "" ? [] : out.split(" ").map(Number);
  }

  /** Decode token ids back to text (requires a vocabulary). */
  decode(ids: number[]): string {
    if (!this.options.vocabPath) {
      throw new VercholError("decode requires a vocabulary (vocabPath)");
    }
    if (!ids.every((id) => Number.isInteger(id) && id >= 0)) {
      throw new VercholError("token ids must be non-negative integers");
    }
    return this.run(this.lineArgs("decode"), ids.join(" ") + "\n").split("\n")[0];
  }
}

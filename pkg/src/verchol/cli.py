"""Command-line entry point for the whole pipeline.

Exit codes: 0 success, 1 usage error, 2 data error.  All I/O is UTF-8 and
streaming: tokenize/detokenize/encode/decode/stats read standard input (or a
file) line by line.
"""
from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path
from typing import Iterable, Optional

from . import bpe as bpe_mod
from . import corpus as corpus_mod
from .evaluate import (MorphologicalAdapter, BpeAdapter, ExternAdapter,
                       TokenizerAdapter, evaluate, format_report_table,
                       throughput_bench)
from .errors import VercholError
from .pack import load_language_pack, validate_pack
from .tokenizer import Separator, Tokenizer, TokenizerConfig, detokenize
from .vocab import VocabBuildConfig, build_vocabulary, empty_vocabulary, load_vocabulary, save_vocabulary

PACK_DIR_ENV = "VERCHOL_PACK_DIR"


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> None:  # exit 1 on usage errors, not argparse's 2
        self.print_usage(sys.stderr)
        print(f"error: {message}", file=sys.stderr)
        raise SystemExit(1)


def _escape_token(surface: str) -> str:
    return surface.replace("\\", "\\\\").replace("\t", "\\t")


def _unescape_token(text: str) -> str:
    out: list[str] = []
    i = 0
    while i < len(text):
        if text[i] == "\\" and i + 1 < len(text):
            out.append({"\\": "\\", "t": "\t"}.get(text[i + 1], text[i + 1]))
            i += 2
        else:
            out.append(text[i])
            i += 1
    return "".join(out)


def _load_tokenizer(pack_dir: str, vocab_path: Optional[str],
                    max_affix_chain: int = 6) -> Tokenizer:
    pack = load_language_pack(pack_dir)
    report = validate_pack(pack)
    if not report.ok:
        raise VercholError("pack validation failed:\n" + "\n".join(report.violations))
    if vocab_path:
        vocab = load_vocabulary(vocab_path)
    else:
        vocab = empty_vocabulary(pack.language_id, pack.normalization)
    return Tokenizer(pack, vocab, TokenizerConfig(max_affix_chain=max_affix_chain))


def _iter_input(path: Optional[str]) -> Iterable[str]:
    if path and path != "-":
        with open(path, encoding="utf-8") as fh:
            yield from fh
    else:
        yield from sys.stdin


def _cmd_validate_pack(args: argparse.Namespace) -> int:
    pack = load_language_pack(args.pack)
    report = validate_pack(pack)
    if report.ok:
        print(f"pack {pack.language_id}: ok ({len(pack.roots)} roots, "
              f"{len(pack.affixes)} affixes, {len(pack.verb_chains)} verb chains)")
        return 0
    for violation in report.violations:
        print(violation)
    return 2


def _cmd_build_vocab(args: argparse.Namespace) -> int:
    pack = load_language_pack(args.pack)
    counts = corpus_mod.count_corpus_file(args.corpus, pack.normalization, threads=args.threads)
    cfg = VocabBuildConfig(
        target_size=args.target_size,
        min_freq_phase2=args.min_freq_phase2,
        min_freq_phase3=args.min_freq_phase3,
        max_generated_affixes=args.max_generated_affixes,
    )
    vocab = build_vocabulary(pack, counts, cfg)
    save_vocabulary(vocab, args.output)
    print(f"wrote {len(vocab)} entries to {args.output}")
    return 0


def _cmd_tokenize(args: argparse.Namespace) -> int:
    tok = _load_tokenizer(args.pack, args.vocab, args.max_affix_chain)
    for raw in _iter_input(args.input):
        line = raw.rstrip("\n")
        fields: list[str] = []
        for piece in tok.tokenize_text(line):
            if isinstance(piece, Separator):
                if args.annotate:
                    fields.append(f"{piece.surface}/T0/whitespace")
                else:
                    fields.append(_escape_token(piece.surface))
            else:
                for token in piece.tokens:
                    if args.annotate:
                        fields.append(f"{token.surface}/T{token.tier}/{token.category}")
                    else:
                        fields.append(_escape_token(token.surface))
        print("\t".join(fields))
    return 0


def _cmd_detokenize(args: argparse.Namespace) -> int:
    for raw in _iter_input(args.input):
        line = raw.rstrip("\n")
        tokens = [_unescape_token(f) for f in line.split("\t")] if line else []
        print("".join(tokens))
    return 0


def _cmd_encode(args: argparse.Namespace) -> int:
    tok = _load_tokenizer(args.pack, args.vocab, args.max_affix_chain)
    for raw in _iter_input(args.input):
        print(" ".join(str(i) for i in tok.encode(raw.rstrip("\n"))))
    return 0


def _cmd_decode(args: argparse.Namespace) -> int:
    tok = _load_tokenizer(args.pack, args.vocab, args.max_affix_chain)
    for raw in _iter_input(args.input):
        line = raw.strip()
        ids = [int(f) for f in line.split()] if line else []
        print(tok.decode(ids))
    return 0


def _cmd_train_bpe(args: argparse.Namespace) -> int:
    counts = corpus_mod.count_corpus_file(args.corpus, threads=args.threads)
    model = bpe_mod.train_bpe(counts, args.vocab_size)
    bpe_mod.save_bpe_model(model, args.output)
    print(f"wrote {len(model.merges)} merges to {args.output}")
    return 0


def _write_report(lines: list[str], path: Optional[str]) -> None:
    if path:
        Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")


def _cmd_stats(args: argparse.Namespace) -> int:
    counts = corpus_mod.count_corpus_file(args.corpus, threads=args.threads)
    report = corpus_mod.corpus_stats(counts)
    print(f"total word occurrences\t{report.total_occurrences}")
    print(f"unique word types\t{report.unique_types}")
    for label, _low, _high, n in report.strata:
        print(f"{label}\t{n}")
    print(f"hapax rate\t{report.hapax_rate:.4f}")
    print(f"avg word length (graphemes)\t{report.avg_word_length_graphemes:.2f}")
    machine = [
        f"total_occurrences\t{report.total_occurrences}",
        f"unique_types\t{report.unique_types}",
        *[f"stratum\t{label}\t{n}" for label, _l, _h, n in report.strata],
        f"hapax_count\t{report.hapax_count}",
        f"hapax_rate\t{report.hapax_rate!r}",
        f"avg_word_length_graphemes\t{report.avg_word_length_graphemes!r}",
    ]
    _write_report(machine, args.report)
    return 0


def _make_adapter(spec: str, max_affix_chain: int) -> TokenizerAdapter:
    kind, _, rest = spec.partition(":")
    if kind == "morpho":
        pack_dir, _, vocab_path = rest.partition(":")
        return MorphologicalAdapter(
            _load_tokenizer(pack_dir, vocab_path or None, max_affix_chain),
            label=f"morpho:{Path(pack_dir).name}")
    if kind == "bpe":
        model = bpe_mod.load_bpe_model(rest)
        return BpeAdapter(model, label=f"bpe:{Path(rest).name}")
    if kind == "extern":
        return ExternAdapter(rest)
    raise VercholError(f"unknown tokenizer spec: {spec!r} (use morpho:, bpe: or extern:)")


def _read_words(path: str) -> list[str]:
    words = []
    for line in corpus_mod.iter_corpus_lines(path):
        word = line.strip()
        if word:
            words.append(word)
    return words


def _cmd_eval(args: argparse.Namespace) -> int:
    words = _read_words(args.words)
    weights = None
    if args.weighted:
        if not args.corpus:
            raise VercholError("--weighted requires --corpus")
        weights = corpus_mod.count_corpus_file(args.corpus).counts
    reports = []
    machine: list[str] = []
    for spec in args.tokenizer:
        adapter = _make_adapter(spec, args.max_affix_chain)
        report = evaluate(adapter, words, weights=weights)
        reports.append(report)
        machine.extend(report.machine_lines())
    print(format_report_table(reports))
    _write_report(machine, args.report)
    return 0


def _cmd_bench(args: argparse.Namespace) -> int:
    words = _read_words(args.words)
    adapter = _make_adapter(args.tokenizer[0], args.max_affix_chain)
    rate = throughput_bench(adapter, words, repetitions=args.repetitions)
    print(f"{adapter.label}\t{len(words)} words\t{rate:.1f} words/sec")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="verchol",
                     description="Morphological tokenizer framework for agglutinative languages")
    sub = parser.add_subparsers(dest="command", required=True)
    default_pack = os.environ.get(PACK_DIR_ENV)

    def add_pack(p: argparse.ArgumentParser, required: bool = True) -> None:
        p.add_argument("--pack", default=default_pack, required=required and not default_pack,
                       help=f"language pack directory (default: ${PACK_DIR_ENV})")

    def add_common(p: argparse.ArgumentParser) -> None:
        p.add_argument("--input", "-i", default=None, help="input file (default: stdin)")
        p.add_argument("--max-affix-chain", type=int, default=6)

    p = sub.add_parser("validate-pack", help="check a language pack's invariants")
    add_pack(p)
    p.set_defaults(func=_cmd_validate_pack)

    p = sub.add_parser("build-vocab", help="three-phase vocabulary construction")
    add_pack(p)
    p.add_argument("--corpus", required=True)
    p.add_argument("--target-size", type=int, required=True)
    p.add_argument("--min-freq-phase2", type=int, default=3)
    p.add_argument("--min-freq-phase3", type=int, default=3)
    p.add_argument("--max-generated-affixes", type=int, default=3)
    p.add_argument("--threads", type=int, default=1)
    p.add_argument("--output", "-o", required=True)
    p.set_defaults(func=_cmd_build_vocab)

    p = sub.add_parser("tokenize", help="segment text (one line in, one line of tokens out)")
    add_pack(p)
    p.add_argument("--vocab", default=None)
    p.add_argument("--annotate", action="store_true", help="print surface/Tn/category per token")
    add_common(p)
    p.set_defaults(func=_cmd_tokenize)

    p = sub.add_parser("detokenize", help="reverse of tokenize (exact reconstruction)")
    p.add_argument("--input", "-i", default=None)
    p.set_defaults(func=_cmd_detokenize)

    p = sub.add_parser("encode", help="text to token ids")
    add_pack(p)
    p.add_argument("--vocab", required=True)
    add_common(p)
    p.set_defaults(func=_cmd_encode)

    p = sub.add_parser("decode", help="token ids to text")
    add_pack(p)
    p.add_argument("--vocab", required=True)
    add_common(p)
    p.set_defaults(func=_cmd_decode)

    p = sub.add_parser("train-bpe", help="train the BPE baseline")
    p.add_argument("--corpus", required=True)
    p.add_argument("--vocab-size", type=int, required=True)
    p.add_argument("--threads", type=int, default=1)
    p.add_argument("--output", "-o", required=True)
    p.set_defaults(func=_cmd_train_bpe)

    p = sub.add_parser("stats", help="streaming corpus statistics")
    p.add_argument("--corpus", required=True)
    p.add_argument("--threads", type=int, default=1)
    p.add_argument("--report", default=None, help="write machine-readable key<TAB>value lines")
    p.set_defaults(func=_cmd_stats)

    p = sub.add_parser("eval", help="fertility comparison across tokenizers")
    p.add_argument("--words", required=True, help="evaluation word list, one per line")
    p.add_argument("--tokenizer", action="append", required=True,
                   help="morpho:PACK[:VOCAB] | bpe:MODEL | extern:COMMAND (repeatable)")
    p.add_argument("--weighted", action="store_true")
    p.add_argument("--corpus", default=None)
    p.add_argument("--max-affix-chain", type=int, default=6)
    p.add_argument("--report", default=None)
    p.set_defaults(func=_cmd_eval)

    p = sub.add_parser("bench", help="throughput benchmark")
    p.add_argument("--words", required=True)
    p.add_argument("--tokenizer", action="append", required=True)
    p.add_argument("--repetitions", type=int, default=5)
    p.add_argument("--max-affix-chain", type=int, default=6)
    p.set_defaults(func=_cmd_bench)

    return parser


def run(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except VercholError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()

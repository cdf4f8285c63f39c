"""Command-line entry point wiring the toolkit into batch workflows.

Subcommands: romanize, noise, corpus build, corpus stats, bpe
train/encode/decode, lm train, derom, eval. Every run echoes its
effective configuration to stderr; outputs are written via a temp file
and rename so failed runs leave nothing partial behind. Exit codes:
0 success, 1 validation error, 2 I/O error.
"""

from __future__ import annotations

import argparse
import os
import sys
import tempfile

from . import backtranslit, corpus, metrics, noise, subword
from .graphemes import TranslitError, bundled_mapping_path, load_mapping
from .romanize import RomanizerConfig, romanize_lines

__all__ = ["main", "run"]

EXIT_OK = 0
EXIT_VALIDATION = 1
EXIT_IO = 2

LANG_SCRIPTS = {"bn": "bengali", "hi": "devanagari"}


def _write_atomic(path: str, content: str) -> None:
    out_dir = os.path.dirname(os.path.abspath(path))
    fd, tmp_path = tempfile.mkstemp(dir=out_dir, prefix=".translit-", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as f:
            f.write(content)
        os.replace(tmp_path, path)
    except BaseException:
        if os.path.exists(tmp_path):
            os.unlink(tmp_path)
        raise


def _read_text(path: str | None) -> str:
    if path is None or path == "-":
        return sys.stdin.read()
    with open(path, encoding="utf-8") as f:
        return f.read()


def _read_lines(path: str) -> list[str]:
    lines = _read_text(path).split("\n")
    if lines and lines[-1] == "":
        lines.pop()
    return lines


def _emit(path: str | None, content: str) -> None:
    if path is None or path == "-":
        sys.stdout.write(content)
    else:
        _write_atomic(path, content)


def _load_config_file(path: str) -> dict[str, str]:
    values: dict[str, str] = {}
    with open(path, encoding="utf-8") as f:
        for line_no, raw in enumerate(f, 1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            if "=" not in line:
                raise TranslitError(f"{path}:{line_no}: expected key=value, got {line!r}")
            key, _, value = line.partition("=")
            values[key.strip().replace("-", "_")] = value.strip()
    return values


def _romanizer(lang: str, mapping: str | None, sentence_case: bool = False) -> RomanizerConfig:
    if lang not in LANG_SCRIPTS:
        raise TranslitError(f"unknown language {lang!r} (expected bn or hi)")
    path = mapping if mapping else bundled_mapping_path(LANG_SCRIPTS[lang])
    spec, table = load_mapping(path)
    return RomanizerConfig(spec, table, sentence_case=sentence_case)


def _echo_config(args: argparse.Namespace) -> None:
    skip = {"func", "config"}
    pairs = sorted(
        (key, value) for key, value in vars(args).items() if key not in skip and value is not None
    )
    rendered = " ".join(f"{key}={value}" for key, value in pairs)
    print(f"# translit {args.command} {rendered}", file=sys.stderr)


def _cmd_romanize(args) -> int:
    cfg = _romanizer(args.lang, args.mapping, args.sentence_case)
    lines = _read_lines(args.input) if args.input else _read_text(None).split("\n")
    if args.input is None and lines and lines[-1] == "":
        lines.pop()
    results = romanize_lines(lines, cfg, workers=args.threads)
    unmapped = sum(r.unmapped_tokens for r in results)
    if unmapped:
        print(f"# unmapped tokens passed through: {unmapped}", file=sys.stderr)
    _emit(args.output, "".join(r.text + "\n" for r in results))
    return EXIT_OK


def _cmd_noise(args) -> int:
    profile = noise.load_profile(args.profile) if args.profile else noise.NoiseProfile()
    if args.seed is not None:
        fields = {rule_id: getattr(profile, rule_id) for rule_id in noise.RULE_IDS}
        profile = noise.NoiseProfile(seed=args.seed, **fields)
    text = _read_text(args.input)
    _emit(args.output, noise.apply_noise(text, profile))
    return EXIT_OK


def _cmd_corpus_build(args) -> int:
    cfg = _romanizer(args.lang, args.mapping, args.sentence_case)
    report = corpus.build_corpus(
        inputs=args.input,
        cfg=cfg,
        mode=args.mode,
        out_path=args.output,
        lang=args.lang,
        source=args.source,
        workers=args.threads,
    )
    discards = ", ".join(f"{reason}={count}" for reason, count in sorted(report.discarded.items()))
    print(
        f"# pairs={report.pairs_written} discarded={report.discarded_total}"
        + (f" ({discards})" if discards else "")
        + f" unmapped_skipped={report.unmapped_skipped}",
        file=sys.stderr,
    )
    return EXIT_OK


def _cmd_corpus_stats(args) -> int:
    lines: list[str] = []
    for path in args.input:
        lines.extend(_read_lines(path))
    stats = corpus.compute_stats(lines)
    _emit(args.output, corpus.render_stats(stats))
    return EXIT_OK


def _cmd_bpe_train(args) -> int:
    lines: list[str] = []
    for path in args.input:
        lines.extend(_read_lines(path))
    vocab = subword.train_bpe(lines, args.target_size)
    subword.save_vocab(vocab, args.output)
    if vocab.shortfall:
        print(f"# vocabulary shortfall: {vocab.shortfall} (corpus exhausted)", file=sys.stderr)
    print(f"# tokens={vocab.size} merges={len(vocab.merges)}", file=sys.stderr)
    return EXIT_OK


def _cmd_bpe_encode(args) -> int:
    vocab = subword.load_vocab(args.vocab)
    out_lines = [
        " ".join(str(i) for i in subword.encode(line, args.lang, vocab))
        for line in _read_lines(args.input)
    ]
    _emit(args.output, "".join(line + "\n" for line in out_lines))
    return EXIT_OK


def _cmd_bpe_decode(args) -> int:
    vocab = subword.load_vocab(args.vocab)
    out_lines = []
    for line in _read_lines(args.input):
        ids = [int(tok) for tok in line.split()] if line.strip() else []
        out_lines.append(subword.decode(ids, vocab))
    _emit(args.output, "".join(line + "\n" for line in out_lines))
    return EXIT_OK


def _cmd_lm_train(args) -> int:
    lines: list[str] = []
    for path in args.input:
        lines.extend(_read_lines(path))
    model = backtranslit.train_lm(lines, order=args.order, k=args.smoothing_k)
    backtranslit.save_lm(model, args.output)
    print(f"# order={model.order} alphabet={len(model.alphabet)} contexts={len(model.counts)}", file=sys.stderr)
    return EXIT_OK


def _cmd_derom(args) -> int:
    if args.lang not in LANG_SCRIPTS:
        raise TranslitError(f"unknown language {args.lang!r} (expected bn or hi)")
    path = args.mapping if args.mapping else bundled_mapping_path(LANG_SCRIPTS[args.lang])
    spec, table = load_mapping(path)
    index = backtranslit.build_reverse_index(spec, table)
    model = backtranslit.load_lm(args.lm)
    fallbacks = 0
    out_lines = []
    for line in _read_lines(args.input):
        result = backtranslit.derom_text(line, index, model, beam=args.beam)
        fallbacks += result.fallback_words
        out_lines.append(result.text)
    if fallbacks:
        print(f"# words passed through without candidates: {fallbacks}", file=sys.stderr)
    _emit(args.output, "".join(line + "\n" for line in out_lines))
    return EXIT_OK


def _cmd_eval(args) -> int:
    hyps = _read_lines(args.hyp)
    refs = _read_lines(args.ref)
    report = metrics.evaluate_report(hyps, refs)
    content = report.render()
    if args.cer_by_length:
        buckets = metrics.cer_by_length(hyps, refs, bucket_width=args.cer_by_length)
        content += f"cer_by_length_width={args.cer_by_length}\n"
        for bucket, mean_cer in buckets:
            content += f"cer_bucket_{bucket}={mean_cer:.2f}\n"
    _emit(args.output, content)
    return EXIT_OK


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="translit",
        description="Build, perturb, and evaluate Romanized/native transliteration corpora.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser, threads: bool = False) -> None:
        p.add_argument("--config", help="key=value file supplying defaults for unset flags")
        if threads:
            p.add_argument("--threads", type=int, default=1,
                           help="worker processes; never changes output bytes")

    p = sub.add_parser("romanize", help="native text -> Roman text")
    p.add_argument("--lang", required=True, choices=("bn", "hi"))
    p.add_argument("--mapping", help="mapping TSV (default: bundled table)")
    p.add_argument("--sentence-case", action="store_true", dest="sentence_case")
    p.add_argument("-i", "--input", help="input file (default: stdin)")
    p.add_argument("-o", "--output", help="output file (default: stdout)")
    common(p, threads=True)
    p.set_defaults(func=_cmd_romanize)

    p = sub.add_parser("noise", help="apply informal-spelling noise to Roman text")
    p.add_argument("--profile", help="noise profile file (key=value)")
    p.add_argument("--seed", type=int, help="override the profile seed")
    p.add_argument("-i", "--input", help="input file (default: stdin)")
    p.add_argument("-o", "--output", help="output file (default: stdout)")
    common(p)
    p.set_defaults(func=_cmd_noise)

    corpus_parser = sub.add_parser("corpus", help="corpus pipeline")
    corpus_sub = corpus_parser.add_subparsers(dest="subcommand", required=True)

    p = corpus_sub.add_parser("build", help="clean + romanize into aligned CSV")
    p.add_argument("--lang", required=True, choices=("bn", "hi"))
    p.add_argument("--mapping")
    p.add_argument("--mode", required=True, choices=corpus.CLEAN_MODES)
    p.add_argument("--sentence-case", action="store_true", dest="sentence_case")
    p.add_argument("--source", help="source tag for all rows (default: input basename)")
    p.add_argument("-i", "--input", required=True, nargs="+")
    p.add_argument("-o", "--output", required=True)
    common(p, threads=True)
    p.set_defaults(func=_cmd_corpus_build)

    p = corpus_sub.add_parser("stats", help="dataset statistics report")
    p.add_argument("-i", "--input", required=True, nargs="+")
    p.add_argument("-o", "--output")
    common(p)
    p.set_defaults(func=_cmd_corpus_stats)

    bpe_parser = sub.add_parser("bpe", help="shared subword vocabulary")
    bpe_sub = bpe_parser.add_subparsers(dest="subcommand", required=True)

    p = bpe_sub.add_parser("train")
    p.add_argument("--target-size", type=int, default=32000, dest="target_size")
    p.add_argument("-i", "--input", required=True, nargs="+")
    p.add_argument("-o", "--output", required=True)
    common(p)
    p.set_defaults(func=_cmd_bpe_train)

    p = bpe_sub.add_parser("encode")
    p.add_argument("--vocab", required=True)
    p.add_argument("--lang", required=True, choices=("bn", "hi"))
    p.add_argument("-i", "--input", required=True)
    p.add_argument("-o", "--output")
    common(p)
    p.set_defaults(func=_cmd_bpe_encode)

    p = bpe_sub.add_parser("decode")
    p.add_argument("--vocab", required=True)
    p.add_argument("-i", "--input", required=True)
    p.add_argument("-o", "--output")
    common(p)
    p.set_defaults(func=_cmd_bpe_decode)

    lm_parser = sub.add_parser("lm", help="character n-gram language model")
    lm_sub = lm_parser.add_subparsers(dest="subcommand", required=True)

    p = lm_sub.add_parser("train")
    p.add_argument("--order", type=int, default=5)
    p.add_argument("--smoothing-k", type=float, default=1.0, dest="smoothing_k")
    p.add_argument("-i", "--input", required=True, nargs="+")
    p.add_argument("-o", "--output", required=True)
    common(p)
    p.set_defaults(func=_cmd_lm_train)

    p = sub.add_parser("derom", help="Roman text -> native text")
    p.add_argument("--lang", required=True, choices=("bn", "hi"))
    p.add_argument("--mapping")
    p.add_argument("--lm", required=True, help="model file from `lm train`")
    p.add_argument("--beam", type=int, default=8)
    p.add_argument("-i", "--input", required=True)
    p.add_argument("-o", "--output")
    common(p)
    p.set_defaults(func=_cmd_derom)

    p = sub.add_parser("eval", help="score hypothesis file against reference file")
    p.add_argument("--hyp", required=True)
    p.add_argument("--ref", required=True)
    p.add_argument("--cer-by-length", type=int, dest="cer_by_length",
                   help="also report mean CER per word-count bucket of this width")
    p.add_argument("-o", "--output")
    common(p)
    p.set_defaults(func=_cmd_eval)

    return parser


def _apply_config_file(args: argparse.Namespace, parser: argparse.ArgumentParser) -> None:
    if not getattr(args, "config", None):
        return
    values = _load_config_file(args.config)
    for key, value in values.items():
        if not hasattr(args, key):
            raise TranslitError(f"{args.config}: unknown config key {key!r}")
        current = getattr(args, key)
        # Flags given on the command line win; config fills unset ones.
        if current is None:
            if isinstance(value, str) and value.isdigit():
                setattr(args, key, int(value))
            else:
                setattr(args, key, value)


def run(argv: list[str]) -> int:
    """Parse argv and execute; returns the process exit status."""
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_VALIDATION if exc.code not in (0, None) else EXIT_OK
    try:
        _apply_config_file(args, parser)
        _echo_config(args)
        return args.func(args)
    except (TranslitError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return EXIT_IO


def main() -> None:
    sys.exit(run(sys.argv[1:]))

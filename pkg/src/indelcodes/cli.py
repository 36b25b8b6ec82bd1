"""Command-line interface.

Exit status: 0 on success, 1 when a check fails (sync violation, wrong
round-trip message), 2 for invalid input or configuration, 3 when decoding
fails.
"""

from __future__ import annotations

import argparse
import os
import random
import sys
from fractions import Fraction
from typing import Optional, Sequence

from .bounds import find_confusable_pair, half_singleton_bound, parse_code
from .channel import (
    STRATEGIES,
    IndelPattern,
    adversarial_pattern,
    apply_pattern,
    format_pattern,
    parse_pattern,
    random_pattern,
)
from .experiment import (
    ConfigError,
    ExperimentConfig,
    parse_config_text,
    run_experiment,
    summaries_to_csv,
)
from .galois import make_field
from .halflinear import VARIANTS, HalfLinearCode, encode_hl, trace_hl
from .innercode import DecodingError, make_inner_code
from .linearcode import LinearIndelCode, encode_lin, trace_lin
from .syncseq import (
    SyncGenerationError,
    SyncSequence,
    VerificationMode,
    as_fraction,
    default_mode,
    format_sync,
    gen_self_matching,
    parse_sync,
    verify_self_matching,
)

EXIT_CHECK = 1
EXIT_CONFIG = 2
EXIT_DECODE = 3
SEED_ENV = "INDELCODES_SEED"


class CliError(Exception):
    pass


def default_seed() -> int:
    raw = os.environ.get(SEED_ENV)
    if raw is None:
        return 0
    try:
        return int(raw)
    except ValueError:
        raise CliError(f"{SEED_ENV} must be an integer, got {raw!r}") from None


# --- file helpers ----------------------------------------------------------

def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def _write(path: Optional[str], text: str) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)


def _ints(text: str) -> list[int]:
    return [int(t) for t in text.split()]


def format_word(word: Sequence, pairs: bool) -> str:
    if pairs:
        return "".join(f"{a} {b}\n" for a, b in word)
    return " ".join(map(str, word)) + "\n"


def parse_word(text: str, pairs: bool) -> list:
    if not pairs:
        return _ints(text)
    out = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        tok = line.split()
        if not tok:
            continue
        if len(tok) != 2:
            raise CliError(f"line {lineno}: expected a pair 'a b'")
        out.append((int(tok[0]), int(tok[1])))
    return out


# --- code description files ------------------------------------------------

class CodeFile:
    """A half-linear code plus padding period (``ell = 0``: no padding)."""

    def __init__(self, base: HalfLinearCode, ell: int):
        self.base = base
        self.ell = ell
        self.linear = LinearIndelCode(base, ell) if ell else None

    @property
    def pairs(self) -> bool:
        return self.linear is None

    def encode(self, msg: Sequence[int]) -> list:
        return encode_hl(self.base, msg) if self.linear is None else encode_lin(self.linear, msg)

    def trace(self, received: Sequence, variant: str):
        if self.linear is None:
            return trace_hl(self.base, received, variant)
        return trace_lin(self.linear, received, variant)[1]

    def format(self) -> str:
        f = self.base.field
        sync = self.base.sync
        lines = [
            f"p={f.p}", f"m={f.m}", f"n={self.base.n}", f"k={self.base.k}",
            f"ell={self.ell}", f"tau={sync.tau}", f"sync_mode={sync.mode}",
            "sync=" + " ".join(map(str, sync.symbols)),
        ]
        return "\n".join(lines) + "\n"


def parse_code_file(text: str) -> CodeFile:
    kv = parse_config_text(text)
    try:
        p, m, n, k = (int(kv[key]) for key in ("p", "m", "n", "k"))
        ell = int(kv.get("ell", "0"))
        tau = Fraction(kv["tau"])
        mode = VerificationMode.parse(kv.get("sync_mode", "unverified"))
        symbols = _ints(kv["sync"])
    except KeyError as exc:
        raise CliError(f"code file is missing {exc.args[0]!r}") from None
    f = make_field(p, m)
    base = HalfLinearCode(make_inner_code(f, n, k), SyncSequence(tuple(symbols), tau, mode))
    return CodeFile(base, ell)


# --- subcommands -----------------------------------------------------------

def cmd_gen_sync(args) -> int:
    f = make_field(args.p, args.m)
    seed = default_seed() if args.seed is None else args.seed
    mode = VerificationMode.parse(args.mode) if args.mode else default_mode(args.n, seed)
    seq = gen_self_matching(f, args.n, as_fraction(args.tau), seed=seed, mode=mode,
                            max_restarts=args.restarts)
    _write(args.out, format_sync(seq))
    return 0


def cmd_verify_sync(args) -> int:
    seq = parse_sync(_read(args.file))
    tau = as_fraction(args.tau) if args.tau else seq.tau
    if args.mode:
        mode = VerificationMode.parse(args.mode)
    elif seq.mode.kind == "unverified":
        mode = default_mode(len(seq))
    else:
        mode = seq.mode
    bad = verify_self_matching(seq.symbols, tau, mode)
    if bad is None:
        print(f"ok: {tau}-self-matching ({mode})")
        return 0
    print(f"violation at (i, j, k) = {bad}")
    return EXIT_CHECK


def cmd_make_code(args) -> int:
    f = make_field(args.p, args.m)
    inner = make_inner_code(f, args.n, args.k)
    if args.sync:
        sync = parse_sync(_read(args.sync))
    else:
        seed = default_seed() if args.sync_seed is None else args.sync_seed
        mode = VerificationMode.parse(args.sync_mode) if args.sync_mode else default_mode(args.n, seed)
        sync = gen_self_matching(f, args.n, as_fraction(args.tau), seed=seed, mode=mode)
    code = CodeFile(HalfLinearCode(inner, sync), args.ell)
    _write(args.out, code.format())
    return 0


def _message(args, code: CodeFile) -> list[int]:
    k, q = code.base.k, code.base.field.q
    if args.message:
        msg = _ints(_read(args.message))
    elif args.zero:
        msg = [0] * k
    else:
        seed = default_seed() if args.random_message is None else args.random_message
        rng = random.Random(seed)
        msg = [rng.randrange(q) for _ in range(k)]
    if len(msg) != k:
        raise CliError(f"message has {len(msg)} symbols, code needs k = {k}")
    return msg


def cmd_encode(args) -> int:
    code = parse_code_file(_read(args.code))
    _write(args.out, format_word(code.encode(_message(args, code)), code.pairs))
    return 0


def _pattern(args, code: CodeFile, word: Sequence) -> IndelPattern:
    seed = default_seed() if args.seed is None else args.seed
    if args.pattern:
        return parse_pattern(_read(args.pattern))
    if args.strategy and args.strategy != "random":
        if code.linear is None:
            raise CliError(f"strategy {args.strategy} needs a padded code (ell > 0)")
        return adversarial_pattern(word, code.linear, args.strategy, args.budget, seed)
    return random_pattern(len(word), args.D, args.I, seed, q=code.base.field.q, pairs=code.pairs)


def cmd_corrupt(args) -> int:
    code = parse_code_file(_read(args.code))
    word = parse_word(_read(args.input), code.pairs)
    pattern = _pattern(args, code, word)
    if args.save_pattern:
        _write(args.save_pattern, format_pattern(pattern))
    _write(args.out, format_word(apply_pattern(word, pattern), code.pairs))
    return 0


def cmd_decode(args) -> int:
    code = parse_code_file(_read(args.code))
    received = parse_word(_read(args.input), code.pairs)
    tr = code.trace(received, args.variant)
    if tr.message is None:
        print(f"decoding failed: {tr.error}", file=sys.stderr)
        return EXIT_DECODE
    _write(args.out, " ".join(map(str, tr.message)) + "\n")
    return 0


def cmd_roundtrip(args) -> int:
    code = parse_code_file(_read(args.code))
    msg = _message(args, code)
    word = code.encode(msg)
    pattern = _pattern(args, code, word)
    tr = code.trace(apply_pattern(word, pattern), args.variant)
    status = f"indels={pattern.cost} (D={pattern.deletions}, I={pattern.insertions}) " \
             f"erasures={tr.report.erasures}"
    if tr.message is None:
        print(f"failure: {status}: {tr.error}")
        return EXIT_DECODE
    if tr.message != msg:
        print(f"wrong message: {status}")
        return EXIT_CHECK
    print(f"success: {status}")
    return 0


def cmd_experiment(args) -> int:
    items: dict[str, str] = {}
    if args.config:
        items.update(parse_config_text(_read(args.config)))
    for kv in args.set or []:
        if "=" not in kv:
            raise CliError(f"--set expects key=value, got {kv!r}")
        key, value = kv.split("=", 1)
        items[key.strip()] = value.strip()
    if "seed" not in items:
        items["seed"] = str(default_seed())
    cfg = ExperimentConfig.from_mapping(items)
    cfg.validate()
    summaries = run_experiment(cfg, jobs=args.jobs)
    _write(args.out, summaries_to_csv(cfg, summaries, timing=args.timing))
    return 0


def cmd_bound(args) -> int:
    if args.n is not None:
        print(f"{float(half_singleton_bound(args.n, as_fraction(args.delta))):g}")
    if args.code:
        code = parse_code(_read(args.code))
        w = find_confusable_pair(code)
        print(f"rate {code.rate} (k_E={code.k_E}, ell_ext={code.ell_ext}, n={code.n})")
        if w is None:
            print("no confusable pair: corrects one deletion")
        else:
            form = "prefix-sum" if w.prefix_form else "window"
            print(f"confusable ({form}): u={w.u} u'={w.u_prime}")
            print("x = " + " ".join(map(str, w.x)))
            print("c = " + " ".join(map(str, w.c)))
    if args.n is None and not args.code:
        raise CliError("bound needs --n/--delta or --code")
    return 0


# --- parser ----------------------------------------------------------------

def _add_message_args(p: argparse.ArgumentParser) -> None:
    g = p.add_mutually_exclusive_group()
    g.add_argument("--message", help="file with k message symbols")
    g.add_argument("--random-message", type=int, metavar="SEED", help="uniform random message")
    g.add_argument("--zero", action="store_true", help="all-zero message")


def _add_channel_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--pattern", help="edit script file ('D pos' / 'I pos value' lines)")
    p.add_argument("--D", type=int, default=0, help="random deletions")
    p.add_argument("--I", type=int, default=0, help="random insertions")
    p.add_argument("--strategy", choices=("random",) + STRATEGIES, default="random")
    p.add_argument("--budget", type=int, default=1, help="indel budget for crafted strategies")
    p.add_argument("--seed", type=int, help=f"channel seed (default ${SEED_ENV} or 0)")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="indelcodes", description="Linear and half-linear indel codes.")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen-sync", help="generate a self-matching sync sequence")
    p.add_argument("--p", type=int, default=2)
    p.add_argument("--m", type=int, default=8)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--tau", default="1/2")
    p.add_argument("--seed", type=int)
    p.add_argument("--mode", help="exhaustive or sampled:COUNT:SEED (default by length)")
    p.add_argument("--restarts", type=int, default=1000)
    p.add_argument("--out")
    p.set_defaults(func=cmd_gen_sync)

    p = sub.add_parser("verify-sync", help="check a sync sequence file")
    p.add_argument("file")
    p.add_argument("--tau")
    p.add_argument("--mode")
    p.set_defaults(func=cmd_verify_sync)

    p = sub.add_parser("make-code", help="write a code description file")
    p.add_argument("--p", type=int, default=2)
    p.add_argument("--m", type=int, default=8)
    p.add_argument("--n", type=int, default=240)
    p.add_argument("--k", type=int, default=120)
    p.add_argument("--ell", type=int, default=4, help="padding period; 0 for the half-linear code")
    p.add_argument("--tau", default="1/2")
    p.add_argument("--sync", help="use this sync file instead of generating one")
    p.add_argument("--sync-seed", type=int)
    p.add_argument("--sync-mode")
    p.add_argument("--out")
    p.set_defaults(func=cmd_make_code)

    p = sub.add_parser("encode", help="encode a message")
    p.add_argument("--code", required=True)
    _add_message_args(p)
    p.add_argument("--out")
    p.set_defaults(func=cmd_encode)

    p = sub.add_parser("corrupt", help="apply an indel pattern to a word")
    p.add_argument("--code", required=True)
    p.add_argument("--input", required=True)
    _add_channel_args(p)
    p.add_argument("--save-pattern")
    p.add_argument("--out")
    p.set_defaults(func=cmd_corrupt)

    p = sub.add_parser("decode", help="decode a received word")
    p.add_argument("--code", required=True)
    p.add_argument("--input", required=True)
    p.add_argument("--variant", choices=VARIANTS, default="improved")
    p.add_argument("--out")
    p.set_defaults(func=cmd_decode)

    p = sub.add_parser("roundtrip", help="encode, corrupt and decode one message")
    p.add_argument("--code", required=True)
    _add_message_args(p)
    _add_channel_args(p)
    p.add_argument("--variant", choices=VARIANTS, default="improved")
    p.set_defaults(func=cmd_roundtrip)

    p = sub.add_parser("experiment", help="run a seeded sweep and print CSV")
    p.add_argument("--config", help="key=value config file")
    p.add_argument("--set", action="append", metavar="KEY=VALUE", help="override a config key")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--timing", action="store_true", help="fill mean_runtime_ms (not reproducible)")
    p.add_argument("--out")
    p.set_defaults(func=cmd_experiment)

    p = sub.add_parser("bound", help="half-Singleton bound and confusability search")
    p.add_argument("--n", type=int)
    p.add_argument("--delta", default="0")
    p.add_argument("--code", help="subfield-linear code file")
    p.set_defaults(func=cmd_bound)
    return ap


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except DecodingError as exc:
        print(f"decoding failed: {exc}", file=sys.stderr)
        return EXIT_DECODE
    except SyncGenerationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CHECK
    except (CliError, ConfigError, ValueError, IndexError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())

"""Command-line front end.

Every command parses its arguments, calls into the library and formats the
result.  Exit status is 0 on success, 1 on a validation error or when a
sweep finds a counterexample, and 2 on a usage error.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from fractions import Fraction
from multiprocessing import Pool

from . import bijections as bij
from .chains import search_extensions
from .encodings import Encoding, EncodingError, decode, format_encoding, narrow_composition, require_valid
from .poset import (
    Composition,
    InvalidComposition,
    ParityError,
    build_circular_fence,
    build_fence,
    build_gate,
    compositions_up_to,
)
from .ranks import (
    CapExceeded,
    classify,
    fence_rank_sequence,
    verify_circular_symmetry,
    verify_conjecture_fbuni,
    verify_log_concave,
    verify_partial_symmetry,
    verify_restricted_bijection,
    verify_theorem_heavy,
)
from .rowmotion import check_mesic

SWEEP_MODES = ("heavy", "fbsym", "fbuni", "partial-symmetry", "logconcave")
MAPS = ("phi", "phi-inv", "Phi", "Phi-inv", "phi-bar", "Phi-bar", "phi-bar-inv", "Phi-bar-inv")


@dataclass
class RunConfig:
    command: str
    args: argparse.Namespace


def _composition(text: str) -> Composition:
    try:
        return Composition.parse(text)
    except InvalidComposition as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _sequence(text: str) -> tuple[int, ...]:
    text = text.strip()
    if not text:
        return ()
    try:
        return tuple(int(t) for t in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"malformed sequence {text!r}") from None


def _positive(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError("must be positive")
    return v


def _dump(doc) -> str:
    return json.dumps(doc, sort_keys=True)


# ----------------------------------------------------------------------------
# commands


def _poset(args):
    if getattr(args, "delta", None) is not None:
        return build_gate(args.delta)
    if args.beta is None:
        raise InvalidComposition("--beta or --delta is required")
    return build_circular_fence(args.beta) if args.circular else build_fence(args.beta)


def cmd_build(args, out) -> int:
    poset = _poset(args)
    if args.json:
        out.write(poset.dumps() + "\n")
    else:
        out.write(poset.to_edge_list())
    return 0


def cmd_rank(args, out) -> int:
    r = fence_rank_sequence(args.beta, circular=args.circular)
    c = classify(r)
    doc = {"beta": list(args.beta.parts), "circular": args.circular, "r": list(r),
           "classification": c.to_json()}
    if args.k is not None:
        doc["k"] = args.k
        doc["r_k"] = r[args.k] if 0 <= args.k <= r.n else 0
    if args.restricted:
        doc["restricted_counts"] = verify_restricted_bijection(args.beta).details["counts"]
    if args.json:
        out.write(_dump(doc) + "\n")
        return 0
    out.write("r = " + ",".join(map(str, r)) + "\n")
    if args.k is not None:
        out.write(f"r_{args.k} = {doc['r_k']}\n")
    if args.restricted:
        out.write("restricted = " + ",".join(map(str, doc["restricted_counts"])) + "\n")
    _write_flags(c, out)
    return 0


def _write_flags(c, out):
    for name, value in c.to_json().items():
        if name == "witnesses":
            continue
        extra = "" if value else f"  (index {c.witnesses[name]})"
        out.write(f"{name:20s} {'yes' if value else 'no'}{extra}\n")


def cmd_classify(args, out) -> int:
    seq = args.seq if args.seq else tuple(fence_rank_sequence(args.beta, circular=args.circular))
    c = classify(seq)
    if args.json:
        out.write(_dump({"sequence": list(seq), "classification": c.to_json()}) + "\n")
    else:
        _write_flags(c, out)
    return 0


def _encoding_for(args) -> Encoding:
    name = args.map
    inverse = name.endswith("-inv")
    side = "filter" if inverse else "ideal"
    top = args.b if inverse else args.a
    bottom = args.e if inverse else args.d
    if bottom is None:
        raise EncodingError(f"{'--e' if inverse else '--d'} is required for {name}")
    if name.startswith("phi-bar"):
        if args.delta is None:
            raise EncodingError("--delta is required for phi-bar")
        return Encoding("circular", side, (0,) * len(bottom), bottom, narrow_composition(args.delta))
    if name.startswith("phi"):
        if args.delta is None:
            raise EncodingError("--delta is required for phi")
        return Encoding("gate", side, (), bottom, args.delta)
    if args.beta is None:
        raise EncodingError(f"--beta is required for {name}")
    family = "circular" if name.startswith("Phi-bar") else "fence"
    return Encoding(family, side, top or (), bottom, args.beta)


_FUNCS = {
    "phi": bij.phi,
    "phi-inv": bij.phi_inverse,
    "Phi": bij.Phi,
    "Phi-inv": bij.Phi_inverse,
    "phi-bar": bij.phi_bar,
    "phi-bar-inv": bij.phi_bar_inverse,
    "Phi-bar": bij.Phi_bar,
    "Phi-bar-inv": bij.Phi_bar_inverse,
}


def cmd_bijection(args, out) -> int:
    enc = _encoding_for(args)
    if args.restricted:
        require_valid(enc, restricted=True)
    trace: list = []
    result = _FUNCS[args.map](enc, trace)
    if args.json:
        doc = {
            "map": args.map,
            "input": enc.to_json(),
            "output": result.to_json(),
            "input_subset": sorted(decode(enc)),
            "output_subset": sorted(decode(result)),
        }
        if args.trace:
            doc["trace"] = [{"step": t.step, "top": list(t.top), "bottom": list(t.bottom)} for t in trace]
        out.write(_dump(doc) + "\n")
        return 0
    bare = args.map.startswith("phi-bar")
    out.write(_show(enc, bare) + "\n")
    if args.trace:
        for t in trace:
            shown = enc.replace(top=t.top or enc.top, bottom=t.bottom) if enc.family != "gate" else None
            if shown is not None and t.top:
                body = "\n".join("    " + line for line in _plain(shown).splitlines())
            else:
                body = "    ⟨" + ",".join(map(str, t.bottom)) + "⟩"
            out.write(f"  {t.step}:\n{body}\n")
    out.write("↦\n" + _show(result, bare) + "\n")
    out.write("subset " + _subset(decode(enc)) + " ↦ " + _subset(decode(result)) + "\n")
    return 0


def _show(enc: Encoding, bare: bool) -> str:
    if bare:  # narrow circular fences are written by their bottom row alone
        left, right = ("⌊", "⌋") if enc.side == "ideal" else ("⌈", "⌉")
        return left + ",".join(map(str, enc.bottom)) + right
    return format_encoding(enc)


def _plain(enc: Encoding) -> str:
    return format_encoding(enc).replace("⌊", "⟨").replace("⌋", "⟩").replace("⌈", "⟨").replace("⌉", "⟩")


def _subset(s) -> str:
    return "{" + ",".join(f"x{x}" for x in sorted(s)) + "}"


_CHECKS = {
    "heavy": (None, [verify_theorem_heavy]),
    "fbsym": ("even", [verify_circular_symmetry]),
    "fbuni": ("even", [verify_conjecture_fbuni]),
    "partial-symmetry": ("odd", [verify_partial_symmetry, verify_restricted_bijection]),
    "logconcave": (None, [verify_log_concave]),
}


def _sweep_one(item):
    mode, beta = item
    lines = []
    for check in _CHECKS[mode][1]:
        finding = check(beta)
        lines.append((finding.ok, _dump(finding.to_json())))
    if mode == "logconcave" and len(beta) % 2 == 0:
        finding = verify_log_concave(beta, circular=True)
        lines.append((finding.ok, _dump(finding.to_json())))
    return lines


def cmd_sweep(args, out) -> int:
    mode = args.mode_flag or args.mode
    if mode is None:
        raise EncodingError("a sweep mode is required")
    parity = _CHECKS[mode][0]
    betas = list(compositions_up_to(args.max_total, parity))
    if args.resume_after is not None:
        key = args.resume_after.parts
        if key not in betas:
            raise EncodingError(f"--resume-after {args.resume_after} is not in this sweep")
        betas = betas[betas.index(key) + 1:]
    items = [(mode, b) for b in betas]
    ok = True
    if args.jobs > 1:
        with Pool(args.jobs) as pool:
            results = pool.imap(_sweep_one, items, chunksize=4)
            for lines in results:
                for good, line in lines:
                    ok &= good
                    out.write(line + "\n")
    else:
        for item in items:
            for good, line in _sweep_one(item):
                ok &= good
                out.write(line + "\n")
    return 0 if ok else 1


def cmd_chains(args, out) -> int:
    poset = build_fence(args.beta)
    result = search_extensions(poset, args.search, budget=args.budget)
    doc = {"beta": list(args.beta.parts), **result.to_json()}
    out.write(_dump(doc) + "\n")
    return 0 if result.found else 1


def cmd_rowmotion(args, out) -> int:
    poset = _poset(args)
    report = check_mesic(poset, c=args.c)
    doc = {"beta": list(args.beta.parts) if args.beta else None, "n": poset.n, **report.to_json()}
    if args.json:
        out.write(_dump(doc) + "\n")
    else:
        for o in doc["orbits"]:
            out.write(f"length {o['length']:4d}  total {o['total']:6d}  average {o['average']}\n")
        if args.check_mesic:
            verdict = "mesic" if report.passed else "not mesic"
            out.write(f"{verdict} with c = {report.c}\n")
    return 0 if report.passed or not args.check_mesic else 1


# ----------------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="fencelat", description="Fences, circular fences and their ideal lattices.")
    sub = parser.add_subparsers(dest="command", required=True)

    def shape(p, delta=False):
        p.add_argument("--beta", type=_composition)
        p.add_argument("--circular", action="store_true")
        if delta:
            p.add_argument("--delta", type=_composition, help="gate composition")
        p.add_argument("--json", action="store_true")

    p = sub.add_parser("build", help="cover relations of a fence, circular fence or gate")
    shape(p, delta=True)

    p = sub.add_parser("rank", help="rank sequence and its shape")
    p.add_argument("--beta", type=_composition, required=True)
    p.add_argument("--circular", action="store_true")
    p.add_argument("--k", type=int)
    p.add_argument("--restricted", action="store_true", help="also count restricted ideals by size")
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("classify", help="shape properties of a sequence")
    p.add_argument("--seq", type=_sequence)
    p.add_argument("--beta", type=_composition)
    p.add_argument("--circular", action="store_true")
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("bijection", help="apply one of the ideal/filter maps")
    p.add_argument("map", choices=MAPS)
    p.add_argument("--beta", type=_composition)
    p.add_argument("--delta", type=_composition)
    for name in ("a", "d", "b", "e"):
        p.add_argument(f"--{name}", type=_sequence)
    p.add_argument("--restricted", action="store_true", help="require a restricted input")
    p.add_argument("--trace", action="store_true")
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("sweep", help="NDJSON findings over all compositions up to a total")
    p.add_argument("mode", nargs="?", choices=SWEEP_MODES)
    p.add_argument("--mode", dest="mode_flag", choices=SWEEP_MODES)
    p.add_argument("--max-total", type=_positive, default=12)
    p.add_argument("--jobs", type=_positive, default=1)
    p.add_argument("--resume-after", type=_composition)

    p = sub.add_parser("chains", help="search linear extensions for a lexicographic SCD/TCD/BCD")
    p.add_argument("--beta", type=_composition, required=True)
    p.add_argument("--search", choices=("scd", "tcd", "bcd", "auto"), default="auto")
    p.add_argument("--budget", type=_positive, default=10**6)

    p = sub.add_parser("rowmotion", help="rowmotion orbits and their average ideal size")
    shape(p)
    p.add_argument("--check-mesic", action="store_true")
    p.add_argument("--c", type=Fraction, default=None)
    return parser


COMMANDS = {
    "build": cmd_build,
    "rank": cmd_rank,
    "classify": cmd_classify,
    "bijection": cmd_bijection,
    "sweep": cmd_sweep,
    "chains": cmd_chains,
    "rowmotion": cmd_rowmotion,
}


def run(config: RunConfig, out=None) -> int:
    out = out or sys.stdout
    try:
        return COMMANDS[config.command](config.args, out)
    except (InvalidComposition, ParityError, EncodingError, CapExceeded, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "classify" and not args.seq and args.beta is None:
        build_parser().error("classify needs --seq or --beta")
    try:
        return run(RunConfig(args.command, args))
    except BrokenPipeError:  # e.g. piped into head
        sys.stderr.close()
        return 0


if __name__ == "__main__":
    sys.exit(main())

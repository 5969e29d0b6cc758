"""Command-line front end.

Exit codes: 0 success or verified, 1 verification mismatch, 2 invalid input.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys

from . import __version__
from .band import Mode
from .cyclic import extract_cyclic
from .errors import InvalidInput, NumericalError
from .instances import (
    DEFAULT_HIGH,
    DEFAULT_LOW,
    encode_scalar,
    generate,
    instance_from_dict,
    instance_to_dict,
    parse_matrix,
)
from .oracle import DEFAULT_MAX_DIM, ZERO_TOL
from .spectrum import base_index, block_product, structured_eigenvalues
from .split import split
from .tn import MAX_DIM, MINOR_TOL, oscillatory_check
from .verify import DEFAULT_TOL, SWEEP_COLUMNS, SweepSpec, run_sweep, verify_instance

EXIT_OK, EXIT_MISMATCH, EXIT_INVALID = 0, 1, 2


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INVALID, f"{self.prog}: error: {message}\n")


def _read_json(path: str):
    try:
        if path == "-":
            return json.load(sys.stdin)
        with open(path) as fh:
            return json.load(fh)
    except OSError as exc:
        raise InvalidInput(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise InvalidInput(f"malformed JSON in {path}: {exc}") from exc


def _emit(doc) -> None:
    json.dump(doc, sys.stdout, indent=2)
    sys.stdout.write("\n")


def _range(text: str) -> tuple[int, int]:
    try:
        lo, _, hi = text.partition(":")
        return int(lo), int(hi or lo)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected LO:HI, got {text!r}") from None


def cmd_analyze(args) -> int:
    bm = instance_from_dict(_read_json(args.input))
    _emit(structured_eigenvalues(bm, zero_tol=args.zero_tol).to_dict())
    return EXIT_OK


def cmd_verify(args) -> int:
    bm = instance_from_dict(_read_json(args.input))
    rep = verify_instance(bm, tol=args.tol, zero_tol=args.zero_tol, max_n=args.max_n)
    _emit(rep.to_dict())
    return EXIT_OK if rep.passed else EXIT_MISMATCH


def _block_doc(blk) -> dict:
    return {
        "rows": blk.rows,
        "cols": blk.cols,
        "orientation": blk.orientation.value,
        "main": [encode_scalar(x) for x in blk.main],
        "off": [encode_scalar(x) for x in blk.off],
    }


def cmd_decompose(args) -> int:
    bm = instance_from_dict(_read_json(args.input))
    dec = split(bm)
    doc = {
        "n": bm.n,
        "b": bm.b,
        "k": bm.k,
        "g": dec.g,
        "perm": list(dec.perm.sigma),
        "block_sizes": list(dec.block_sizes),
        "blocks": [instance_to_dict(blk) for blk in dec.blocks],
    }
    if args.cyclic:
        cyc_docs = []
        for t, blk in enumerate(dec.blocks, start=1):
            if blk.lower.size == 0 or blk.upper.size == 0:
                cyc_docs.append({"block": t, "skipped": "empty band"})
                continue
            cyc = extract_cyclic(blk)
            idx = cyc.index_data
            cyc_docs.append({
                "block": t,
                "p": idx.p,
                "perm": list(cyc.perm.sigma),
                "gammas": list(idx.gammas),
                "zs": list(idx.zs),
                "sizes": list(idx.sizes),
                "blocks": [dict(label=i, **_block_doc(c)) for i, c in enumerate(cyc.blocks, 1)],
            })
        doc["cyclic"] = cyc_docs
    _emit(doc)
    return EXIT_OK


def cmd_check_tn(args) -> int:
    doc = _read_json(args.input)
    if isinstance(doc, dict) and "matrix" in doc:
        rep = oscillatory_check(parse_matrix(doc["matrix"]), tol=args.minor_tol,
                                max_dim=args.max_dim)
        _emit(rep.to_dict())
        return EXIT_OK if rep.oscillatory else EXIT_MISMATCH
    bm = instance_from_dict(doc)
    out, ok = [], True
    for t, blk in enumerate(split(bm).blocks, start=1):
        if blk.n < blk.b + blk.k:
            out.append({"block": t, "skipped": "m = 0"})
            continue
        cyc = extract_cyclic(blk)
        j = base_index(cyc)
        rep = oscillatory_check(block_product(cyc, j), tol=args.minor_tol, max_dim=args.max_dim)
        ok = ok and rep.oscillatory
        out.append({"block": t, "j": j, "m": cyc.index_data.m, "report": rep.to_dict()})
    _emit(out)
    return EXIT_OK if ok else EXIT_MISMATCH


def _sweep_spec(args) -> SweepSpec:
    doc = _read_json(args.input) if args.input else {}
    if not isinstance(doc, dict):
        raise InvalidInput("sweep spec must be a JSON object")

    def pick(key, flag):
        return doc.get(key, flag)

    try:
        return SweepSpec(
            n_range=tuple(pick("n", args.n)),
            b_range=tuple(pick("b", args.b)),
            k_range=tuple(pick("k", args.k)),
            mode=Mode(pick("mode", args.mode)),
            seed=int(pick("seed", args.seed)),
            low=float(pick("low", args.low)),
            high=float(pick("high", args.high)),
            tol=float(pick("tol", args.tol)),
            zero_tol=float(pick("zero_tol", args.zero_tol)),
            max_n=int(pick("max_n", args.max_n)),
        )
    except (TypeError, ValueError) as exc:
        raise InvalidInput(f"bad sweep spec: {exc}") from exc


def cmd_sweep(args) -> int:
    spec = _sweep_spec(args)
    if spec.mode is Mode.POSITIVE and not 0 < spec.low <= spec.high:
        raise InvalidInput("positive mode needs 0 < low <= high")
    rows = run_sweep(spec, jobs=args.jobs)
    if args.csv:
        writer = csv.DictWriter(sys.stdout, fieldnames=SWEEP_COLUMNS, lineterminator="\n")
        writer.writeheader()
        writer.writerows(rows)
    else:
        _emit({"cells": len(rows), "failures": sum(not r["passed"] for r in rows), "rows": rows})
    return EXIT_OK if all(r["passed"] for r in rows) else EXIT_MISMATCH


def cmd_generate(args) -> int:
    if args.input:
        doc = _read_json(args.input)
        if not isinstance(doc, dict) or "seed" not in doc:
            raise InvalidInput("generator spec needs n, b, k and seed")
        bm = instance_from_dict(doc)
    else:
        if args.n is None or args.b is None or args.k is None:
            raise InvalidInput("generate needs --n, --b and --k (or --input)")
        bm = generate(args.n, args.b, args.k, args.mode, args.seed, args.low, args.high)
    _emit(instance_to_dict(bm))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="twoband", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name, func, help_text, input_required=True):
        p = sub.add_parser(name, help=help_text)
        p.set_defaults(func=func)
        p.add_argument("--input", "-i", default="-" if input_required else None,
                       help="instance JSON file, or - for stdin")
        return p

    p = add("analyze", cmd_analyze, "structured spectrum report")
    p.add_argument("--zero-tol", type=float, default=ZERO_TOL)

    p = add("verify", cmd_verify, "check the structured spectrum against the oracle")
    p.add_argument("--tol", type=float, default=DEFAULT_TOL,
                   help="relative tolerance, scaled by max(1, spectral radius)")
    p.add_argument("--zero-tol", type=float, default=ZERO_TOL)
    p.add_argument("--max-n", type=int, default=DEFAULT_MAX_DIM)

    p = add("decompose", cmd_decompose, "gcd split and (with --cyclic) the cyclic block form")
    p.add_argument("--cyclic", action="store_true")

    p = add("check-tn", cmd_check_tn, "oscillatory certificate for D_j or a given matrix")
    p.add_argument("--tol", dest="minor_tol", type=float, default=MINOR_TOL)
    p.add_argument("--max-dim", type=int, default=MAX_DIM)

    p = add("sweep", cmd_sweep, "verify seeded instances over a grid of (n, b, k)",
            input_required=False)
    p.add_argument("--n", type=_range, default=(1, 20), metavar="LO:HI")
    p.add_argument("--b", type=_range, default=(1, 6), metavar="LO:HI")
    p.add_argument("--k", type=_range, default=(1, 6), metavar="LO:HI")
    p.add_argument("--mode", default="positive", choices=[m.value for m in Mode])
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--low", type=float, default=DEFAULT_LOW)
    p.add_argument("--high", type=float, default=DEFAULT_HIGH)
    p.add_argument("--tol", type=float, default=DEFAULT_TOL)
    p.add_argument("--zero-tol", type=float, default=ZERO_TOL)
    p.add_argument("--max-n", type=int, default=DEFAULT_MAX_DIM)
    p.add_argument("--jobs", type=int, default=1)
    fmt = p.add_mutually_exclusive_group()
    fmt.add_argument("--json", action="store_true", default=True)
    fmt.add_argument("--csv", action="store_true")

    p = add("generate", cmd_generate, "random instance JSON", input_required=False)
    p.add_argument("--n", type=int)
    p.add_argument("--b", type=int)
    p.add_argument("--k", type=int)
    p.add_argument("--mode", default="positive", choices=[m.value for m in Mode])
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--low", type=float, default=DEFAULT_LOW)
    p.add_argument("--high", type=float, default=DEFAULT_HIGH)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except InvalidInput as exc:
        print(f"twoband: invalid input: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except NumericalError as exc:
        print(f"twoband: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_MISMATCH


if __name__ == "__main__":
    sys.exit(main())

"""Command line interface.

Exit codes: 0 agreement up to the length used, 1 distinguished,
2 usage or input error, 3 cycle budget exceeded.
"""

from __future__ import annotations

import argparse
import sys

from . import fileformat as ff
from .cycles import DEFAULT_BUDGET
from .decision import (
    DEFAULT_ATOL,
    DEFAULT_MAX_LEN,
    DEFAULT_RTOL,
    BoundFunction,
    compute_signature,
    cycle_length_bound,
    decide_isometry,
)
from .errors import BudgetExceeded, RepresentationError
from .quiver import Quiver, complete_quiver, loop_quiver, min_r, parallel_quiver, star_quiver
from .reduction import build_mq
from .representation import (
    FieldMode,
    StarMode,
    random_isometry_family,
    random_representation,
    transform,
)

EXIT_AGREE = 0
EXIT_DISTINGUISHED = 1
EXIT_INPUT = 2
EXIT_BUDGET = 3

# every package error except BudgetExceeded derives from ValueError
_INPUT_ERRORS = (OSError, ValueError, KeyError, TypeError)


def _star(args) -> StarMode:
    return StarMode(args.star)


def _emit(doc) -> None:
    sys.stdout.write(ff.dumps(doc) + "\n")


def cmd_check(args) -> int:
    a = ff.load_representation(args.a)
    b = ff.load_representation(args.b)
    if not a.quiver.same_shape(b.quiver):
        raise RepresentationError("the two files describe different quivers")
    length = BoundFunction(args.bound) if args.bound else (args.max_len or DEFAULT_MAX_LEN)
    verdict = decide_isometry(
        a, b, _star(args), length, args.rtol, args.atol, args.budget,
        certify_transpose=args.certify_transpose,
    )
    _emit(verdict.to_dict())
    return EXIT_AGREE if verdict.agrees else EXIT_DISTINGUISHED


def cmd_signature(args) -> int:
    rep = ff.load_representation(args.path)
    sig = compute_signature(rep, _star(args), args.max_len, args.budget)
    if args.format == "json":
        _emit(sig.to_dict())
    else:
        for c, v, s in zip(sig.cycles, sig.traces, sig.scales):
            sys.stdout.write(f"{c}\t{float(v.real)!r}\t{float(v.imag)!r}\t{float(s)!r}\n")
    return 0


def cmd_reduce(args) -> int:
    rep = ff.load_representation(args.path)
    mq = build_mq(rep)
    _emit({"matrix": ff.matrix_to_json(mq.matrix), "grid": mq.sidecar()})
    return 0


def cmd_bound(args) -> int:
    rep = ff.load_representation(args.path)
    b = BoundFunction(args.phi)
    r = min_r(rep.quiver)
    _emit({
        "r": r,
        "n": (r + 2) * sum(rep.dims),
        "phi": b.value,
        "bound": cycle_length_bound(rep.quiver, rep.dims, b),
    })
    return 0


def preset_quiver(text: str) -> Quiver:
    """``loop``, ``kloops:k``, ``parallel:k``, ``star:k`` or ``complete:t``."""
    name, _, arg = text.partition(":")
    if name == "loop" and not arg:
        return loop_quiver(1)
    builders = {"kloops": loop_quiver, "parallel": parallel_quiver,
                "star": star_quiver, "complete": complete_quiver}
    if name not in builders or not arg.isdigit():
        raise ValueError(f"unknown preset {text!r}")
    return builders[name](int(arg))


def _parse_dims(text: str) -> list[int]:
    try:
        dims = [int(x) for x in text.split(",")]
    except ValueError:
        raise ValueError(f"--dims must be comma-separated integers, got {text!r}") from None
    if any(d < 0 for d in dims):
        raise ValueError("--dims must be nonnegative")
    return dims


def cmd_gen(args) -> int:
    if args.quiver:
        with open(args.quiver, encoding="utf-8") as fh:
            q = Quiver.from_dict(ff.loads(fh.read()))
    else:
        q = preset_quiver(args.preset)
    dims = _parse_dims(args.dims)
    if len(dims) != q.vertex_count:
        raise RepresentationError(f"--dims has {len(dims)} entries, quiver has {q.vertex_count} vertices")
    rep = random_representation(q, dims, args.seed, FieldMode(args.field))
    _emit(ff.representation_to_dict(rep))
    return 0


def cmd_transform(args) -> int:
    rep = ff.load_representation(args.path)
    fam = random_isometry_family(rep.dims, args.seed, _star(args), rep.field)
    out = transform(rep, fam)
    _emit(ff.representation_to_dict(out))
    if args.emit_family:
        with open(args.emit_family, "w", encoding="utf-8") as fh:
            fh.write(ff.dumps(ff.family_to_dict(fam)) + "\n")
    return 0


def _positive_int(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError("must be a positive integer")
    return v


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="quiveriso",
        description="Decide isometry of quiver representations by cycle traces.",
    )
    sub = p.add_subparsers(dest="command", required=True)

    def star_opt(sp):
        sp.add_argument("--star", choices=[m.value for m in StarMode], default="adjoint",
                        help="adjoint: conjugate transpose (unitary); transpose: complex orthogonal")

    sp = sub.add_parser("check", help="compare two representation files")
    sp.add_argument("a")
    sp.add_argument("b")
    star_opt(sp)
    g = sp.add_mutually_exclusive_group()
    g.add_argument("--max-len", type=_positive_int, help=f"cycle length (default {DEFAULT_MAX_LEN})")
    g.add_argument("--bound", choices=[b.value for b in BoundFunction],
                   help="use the full sufficient length from this bound")
    sp.add_argument("--rtol", type=float, default=DEFAULT_RTOL)
    sp.add_argument("--atol", type=float, default=DEFAULT_ATOL)
    sp.add_argument("--budget", type=float, default=DEFAULT_BUDGET)
    sp.add_argument("--certify-transpose", action="store_true",
                    help="certify transpose-mode agreement at the 2n^2 length")
    sp.set_defaults(func=cmd_check)

    sp = sub.add_parser("signature", help="list traces of all cycles")
    sp.add_argument("path")
    star_opt(sp)
    sp.add_argument("--max-len", type=_positive_int, default=DEFAULT_MAX_LEN)
    sp.add_argument("--format", choices=["text", "json"], default="text")
    sp.add_argument("--budget", type=float, default=DEFAULT_BUDGET)
    sp.set_defaults(func=cmd_signature)

    sp = sub.add_parser("reduce", help="print the reduction matrix with its block grid")
    sp.add_argument("path")
    sp.set_defaults(func=cmd_reduce)

    sp = sub.add_parser("bound", help="print r, n and the sufficient cycle length")
    sp.add_argument("path")
    sp.add_argument("--phi", choices=[b.value for b in BoundFunction], default="pappacena")
    sp.set_defaults(func=cmd_bound)

    sp = sub.add_parser("gen", help="generate a random representation file")
    g = sp.add_mutually_exclusive_group(required=True)
    g.add_argument("--quiver", help="quiver JSON file")
    g.add_argument("--preset", help="loop | kloops:k | parallel:k | star:k | complete:t")
    sp.add_argument("--dims", required=True, help="comma-separated dimensions")
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--field", choices=[f.value for f in FieldMode], default="complex")
    sp.set_defaults(func=cmd_gen)

    sp = sub.add_parser("transform", help="apply a random isometry family")
    sp.add_argument("path")
    sp.add_argument("--seed", type=int, default=0)
    star_opt(sp)
    sp.add_argument("--emit-family", metavar="PATH", help="also write the family used")
    sp.set_defaults(func=cmd_transform)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except BudgetExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except _INPUT_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())

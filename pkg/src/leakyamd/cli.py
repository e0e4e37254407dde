"""Command-line front end.

Exit codes: 0 success or all checks passed, 1 usage or parameter error,
2 decoder output REJECT, 3 enumeration cap exceeded, 4 a certification ran
to completion but failed its bound.

Sampled randomness (encoder ``r``, ``i``, ``j`` and dealer randomness) comes
from ``numpy.random.PCG64`` seeded with ``--seed``, so equal seeds give equal
output.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
import time
from fractions import Fraction

import numpy as np

from . import adversary, bounds
from .adversary import DEFAULT_CAP, EnumerationCapExceeded
from .amd import REJECT, AmdParams, amd_decode, amd_encode
from .lvamd import (LvStrongInstance, LvWeakInstance, lv_strong_decode, lv_strong_encode,
                    lv_weak_decode, lv_weak_encode)
from .rampsss import (RampScheme, RobustRampScheme, ShareVector, ramp_recover, ramp_share,
                      rr_recover, rr_share)
from .wiretap2 import Wt2Instance, wt2_decode, wt2_encode

PRNG_NAME = "numpy.random.PCG64"
FAMILIES = ("amd", "wt2", "lv-strong", "lv-weak", "ramp", "robust-ramp")

EXIT_OK, EXIT_USAGE, EXIT_REJECT, EXIT_CAP, EXIT_FAIL = 0, 1, 2, 3, 4


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _vector(text: str) -> list[int]:
    try:
        return [int(v) for v in text.split(",") if v.strip() != ""]
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a comma-separated integer vector: {text!r}") from None


def _fraction(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}") from None


def _fmt_vec(v) -> str:
    return ",".join(str(int(x)) for x in v)


def _fs(x) -> str:
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def _need(args, *names):
    missing = [n for n in names if getattr(args, n) is None]
    if missing:
        flags = ", ".join("--" + n for n in missing)
        raise UsageError(f"family {args.family} needs {flags}")


def build_instance(args):
    f = args.family
    if f == "amd":
        _need(args, "q", "d")
        return AmdParams(args.q, args.d)
    if f == "wt2":
        _need(args, "q", "n", "k")
        return Wt2Instance.build(args.q, args.n, args.k)
    if f == "lv-strong":
        _need(args, "q", "k", "n")
        return LvStrongInstance.build(args.q, args.k, args.n)
    if f == "lv-weak":
        _need(args, "q", "k")
        return LvWeakInstance.build(args.q, args.k, args.psi)
    if f == "ramp":
        _need(args, "q", "t", "r", "N")
        return RampScheme(args.q, args.t, args.r, args.N)
    _need(args, "q", "t", "r", "N", "k")
    return RobustRampScheme.build(args.q, args.t, args.r, args.N, args.k, placement=args.placement)


def config_echo(args) -> dict:
    keys = ("command", "family", "q", "k", "n", "d", "t", "r", "N", "rho", "psi", "seed", "cap",
            "corrupt", "size", "placement")
    out = {}
    for key in keys:
        v = getattr(args, key, None)
        if v is not None:
            out[key] = _fs(v) if isinstance(v, Fraction) else v
    return out


def summary(inst) -> dict:
    if isinstance(inst, AmdParams):
        return {"delta": _fs(inst.delta), "M": inst.message_count, "G": inst.group_order}
    if isinstance(inst, Wt2Instance):
        return {"rho": _fs(inst.rho), "G": inst.G.tolist(), "G_tilde": inst.G_tilde.tolist(),
                "H": inst.H.tolist()}
    if isinstance(inst, LvStrongInstance):
        out = summary(inst.wt2)
        out.update(delta=_fs(inst.delta), rho=_fs(inst.rho), read_budget=inst.read_budget,
                   M=inst.message_count, G_order=inst.group_order)
        return out
    if isinstance(inst, LvWeakInstance):
        return {"delta": _fs(inst.delta), "beta": inst.beta, "exponents": inst.G.tolist(),
                "psi": _fs(inst.psi), "M": inst.message_count, "G_order": inst.group_order}
    if isinstance(inst, RampScheme):
        return {"share_matrix": inst.share_matrix.tolist(), "secret_points": list(inst.secret_points),
                "random_points": list(inst.random_points)}
    out = summary(inst.code)
    out.update(summary(inst.ramp), corruption_budget=inst.corruption_budget,
               views_masked=inst.views_masked)
    return out


def _rng(args) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(args.seed))


# -- encode / decode ---------------------------------------------------------


def cmd_encode(args, out) -> int:
    inst = build_instance(args)
    _need(args, "msg")
    rng = _rng(args)
    q = args.q
    if args.family == "amd":
        r = args.r if args.r is not None else int(rng.integers(q))
        word = amd_encode(args.msg, r, inst)
    elif args.family == "wt2":
        rand = args.rand if args.rand is not None else rng.integers(q, size=inst.randomness_length)
        word = wt2_encode(args.msg, rand, inst)
    elif args.family == "lv-strong":
        i = args.i if args.i is not None else int(rng.integers(q))
        j = args.j if args.j is not None else rng.integers(q, size=inst.n - inst.n_inner)
        word = lv_strong_encode(args.msg, i, j, inst)
    elif args.family == "lv-weak":
        word = lv_weak_encode(args.msg, inst)
    else:
        raise UsageError("use the share subcommand for ramp families")
    print(_fmt_vec(word), file=out)
    return EXIT_OK


def cmd_decode(args, out) -> int:
    inst = build_instance(args)
    _need(args, "word")
    decoders = {"amd": amd_decode, "wt2": wt2_decode, "lv-strong": lv_strong_decode,
                "lv-weak": lv_weak_decode}
    if args.family not in decoders:
        raise UsageError("use the recover subcommand for ramp families")
    res = decoders[args.family](args.word, inst)
    if res is REJECT:
        print("REJECT", file=out)
        return EXIT_REJECT
    print(_fmt_vec(res), file=out)
    return EXIT_OK


# -- secret sharing ----------------------------------------------------------


def _ramp_of(inst):
    return inst if isinstance(inst, RampScheme) else inst.ramp


def cmd_share(args, out) -> int:
    if args.family not in ("ramp", "robust-ramp"):
        raise UsageError("share needs --family ramp or robust-ramp")
    inst = build_instance(args)
    _need(args, "msg")
    rng = _rng(args)
    ramp = _ramp_of(inst)
    if args.family == "robust-ramp":
        code = inst.code
        i = args.i if args.i is not None else int(rng.integers(ramp.q))
        j = args.j if args.j is not None else rng.integers(ramp.q, size=code.n - code.n_inner)
        rand = args.rand if args.rand is not None else rng.integers(ramp.q, size=ramp.t)
        shares = rr_share(args.msg, i, j, rand, inst)
    else:
        rand = args.rand if args.rand is not None else rng.integers(ramp.q, size=ramp.t)
        shares = ramp_share(args.msg, rand, inst)
    text = shares.to_lines()
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        out.write(text)
    return EXIT_OK


def cmd_recover(args, out) -> int:
    if args.family not in ("ramp", "robust-ramp"):
        raise UsageError("recover needs --family ramp or robust-ramp")
    inst = build_instance(args)
    _need(args, "shares")
    ramp = _ramp_of(inst)
    text = sys.stdin.read() if args.shares == "-" else open(args.shares).read()
    shares = ShareVector.from_lines(text, ramp.q, ramp.N)
    if args.subset is not None:
        subset = args.subset
    else:
        subset = [i for i in range(1, ramp.N + 1) if shares[i] is not None]
    if args.family == "ramp":
        res = ramp_recover(shares, subset, inst)
    else:
        res = rr_recover(shares, subset, inst)
    if res is REJECT:
        print("REJECT", file=out)
        return EXIT_REJECT
    print(_fmt_vec(res), file=out)
    return EXIT_OK


# -- reports -----------------------------------------------------------------


def bound_rows(inst, delta) -> list[bounds.BoundReport]:
    """Applicable bound checks for ``inst`` with ``delta`` substituted."""
    if isinstance(inst, AmdParams):
        return [bounds.strong_amd_row(inst.message_count, inst.group_order, delta),
                bounds.weak_amd_row(inst.message_count, inst.group_order, delta)]
    if isinstance(inst, LvStrongInstance):
        return [
            bounds.strong_rho_row(inst.message_count, inst.group_order, inst.rho, delta),
            bounds.strong_rho_bound_check(inst.n, inst.k, inst.rho, delta, inst.q),
            bounds.rate_check(inst.k, inst.n, inst.rho),
        ]
    if isinstance(inst, LvWeakInstance):
        rho = Fraction(inst.k - 1, inst.k + 1)
        return [
            bounds.weak_rho_row(inst.message_count, inst.group_order, rho, delta),
            bounds.weak_rho_bound_check(inst.n, inst.k, rho, delta, inst.q),
        ]
    if isinstance(inst, Wt2Instance):
        return [bounds.rate_check(inst.k_msg, inst.n, inst.rho)]
    if isinstance(inst, RobustRampScheme):
        return bound_rows(inst.code, delta)
    return []


def _emit(report: dict, args, out, table: list[dict] | None = None):
    if args.format == "csv" and table is not None:
        buf = io.StringIO()
        w = csv.DictWriter(buf, fieldnames=list(table[0]) if table else ["empty"], lineterminator="\n")
        w.writeheader()
        w.writerows(table)
        out.write(buf.getvalue())
    else:
        json.dump(report, out, indent=2, sort_keys=True)
        out.write("\n")


def _report(args, inst, t0, **body) -> dict:
    rep = {"config": config_echo(args), "prng": PRNG_NAME, "construction": summary(inst)}
    rep.update(body)
    rep["wall_clock_seconds"] = round(time.perf_counter() - t0, 6)
    return rep


def cmd_attack(args, out) -> int:
    t0 = time.perf_counter()
    inst = build_instance(args)
    cap = args.cap
    if isinstance(inst, AmdParams):
        att = adversary.empirical_delta(inst, 0, inst.delta, name="amd", cap=cap)
    elif isinstance(inst, LvStrongInstance):
        att = adversary.empirical_delta_strong(inst, cap=cap)
    elif isinstance(inst, LvWeakInstance):
        att = adversary.empirical_delta_weak(inst, args.rho, cap=cap)
    elif isinstance(inst, RobustRampScheme):
        corrupt = inst.corruption_budget if args.corrupt is None else args.corrupt
        att = adversary.rr_robustness_attack(inst, corrupt, cap=cap)
    else:
        raise UsageError(f"no tampering attack for family {args.family}; try secrecy-check")
    rows = bound_rows(inst, att.worst if att.worst > 0 else inst.delta)
    ok = att.passed and all(b.satisfied for b in rows)
    rep = _report(args, inst, t0, attack=att.to_dict(), bounds=[b.to_dict() for b in rows], **{"pass": ok})
    table = [
        {"message": "uniform" if r.message is None else _fmt_vec(r.message),
         "read_set": _fmt_vec(r.read_set), "success": _fs(r.success)}
        for r in att.rows
    ]
    _emit(rep, args, out, table)
    return EXIT_OK if ok else EXIT_FAIL


def cmd_secrecy(args, out) -> int:
    t0 = time.perf_counter()
    inst = build_instance(args)
    if isinstance(inst, Wt2Instance):
        size = inst.n - inst.k_msg if args.size is None else args.size
        sd = adversary.wt2_secrecy_check(inst, size, cap=args.cap)
    elif isinstance(inst, RampScheme):
        size = inst.t if args.size is None else args.size
        adversary._check_cap(inst.q ** (inst.secret_length + inst.t), args.cap, "privacy check")
        sd = adversary.ramp_privacy_check(inst, size)
    elif isinstance(inst, RobustRampScheme):
        size = inst.ramp.t if args.size is None else args.size
        sd = adversary.rr_privacy_check(inst, size)
    else:
        raise UsageError("secrecy-check needs --family wt2, ramp or robust-ramp")
    rep = _report(args, inst, t0, secrecy={"view_size": size, "max_sd": _fs(sd)}, **{"pass": sd == 0})
    _emit(rep, args, out, [{"view_size": size, "max_sd": _fs(sd)}])
    return EXIT_OK if sd == 0 else EXIT_FAIL


def _raw_bounds(args) -> list[bounds.BoundReport]:
    c = args.check
    if c in ("strong-rho", "weak-rho"):
        for name in ("n", "k", "q"):
            if getattr(args, name) is None:
                raise UsageError(f"--check {c} needs --n, --k, --q, --rho, --delta")
        if args.delta is None:
            raise UsageError(f"--check {c} needs --delta")
        rho = args.rho or Fraction(0)
        fn = bounds.strong_rho_bound_check if c == "strong-rho" else bounds.weak_rho_bound_check
        return [fn(args.n, args.k, rho, args.delta, args.q)]
    if c in ("strong-amd", "weak-amd"):
        if None in (args.M, args.G, args.delta):
            raise UsageError(f"--check {c} needs --M, --G, --delta")
        fn = bounds.strong_amd_row if c == "strong-amd" else bounds.weak_amd_row
        return [fn(args.M, args.G, args.delta)]
    if c == "llr-table":
        if None in (args.M, args.G, args.delta, args.alpha):
            raise UsageError("--check llr-table needs --M, --G, --delta, --alpha")
        strong, weak = bounds.llr_table_bounds(args.M, args.delta, args.alpha)
        inputs = {"M": args.M, "G": args.G, "delta": args.delta, "alpha": args.alpha}
        return [bounds.BoundReport("strong LLR-AMD", inputs, strong, args.G),
                bounds.BoundReport("weak LLR-AMD", inputs, weak, args.G)]
    if c == "rate":
        if None in (args.k, args.n):
            raise UsageError("--check rate needs --k, --n, --rho")
        return [bounds.rate_check(args.k, args.n, args.rho or Fraction(0))]
    raise UsageError(f"unknown check {c}")


def cmd_bounds(args, out) -> int:
    t0 = time.perf_counter()
    if args.check:
        rows = _raw_bounds(args)
        summ = {}
    else:
        if args.family is None:
            raise UsageError("bounds needs --family or --check")
        inst = build_instance(args)
        delta = args.delta if args.delta is not None else getattr(inst, "delta", None)
        rows = bound_rows(inst, delta)
        summ = summary(inst)
    ok = all(b.satisfied for b in rows)
    rep = {"config": config_echo(args), "construction": summ, "bounds": [b.to_dict() for b in rows],
           "log_base": 2, "pass": ok, "wall_clock_seconds": round(time.perf_counter() - t0, 6)}
    table = [{"name": b.name, "lhs": bounds._show(b.lhs), "rhs": bounds._show(b.rhs),
              "satisfied": b.satisfied} for b in rows]
    _emit(rep, args, out, table)
    return EXIT_OK if ok else EXIT_FAIL


# -- parser ------------------------------------------------------------------


def make_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    g = common.add_argument_group("instance")
    g.add_argument("--family", choices=FAMILIES)
    for name in ("q", "k", "n", "d", "t", "N"):
        g.add_argument(f"--{name}", type=int)
    g.add_argument("--r", type=int,
                   help="ramp reconstruction threshold; for --family amd, the encoder randomness")
    g.add_argument("--rho", type=_fraction)
    g.add_argument("--psi", type=_fraction, default=Fraction(3, 2))
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--cap", type=int, default=DEFAULT_CAP)
    g.add_argument("--format", choices=("json", "csv"), default="json")
    g.add_argument("--placement", choices=("masked", "default"), default="masked",
                   help="robust-ramp evaluation-point layout")

    p = _Parser(prog="leakyamd", description="AMD codes for leaky storage.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("encode", parents=[common])
    s.add_argument("--msg", type=_vector)
    s.add_argument("--rand", type=_vector, help="wiretap randomness")
    s.add_argument("--i", type=int, help="AMD randomness of the strong LV code")
    s.add_argument("--j", type=_vector, help="wiretap randomness of the strong LV code")
    s.set_defaults(func=cmd_encode)

    s = sub.add_parser("decode", parents=[common])
    s.add_argument("--word", type=_vector)
    s.set_defaults(func=cmd_decode)

    s = sub.add_parser("share", parents=[common])
    s.add_argument("--msg", type=_vector)
    s.add_argument("--rand", type=_vector, help="dealer randomness (t values)")
    s.add_argument("--i", type=int)
    s.add_argument("--j", type=_vector)
    s.add_argument("--out")
    s.set_defaults(func=cmd_share)

    s = sub.add_parser("recover", parents=[common])
    s.add_argument("--shares", help="share file, '-' for stdin")
    s.add_argument("--subset", type=_vector, help="1-based slots; default every present slot")
    s.set_defaults(func=cmd_recover)

    s = sub.add_parser("attack", parents=[common])
    s.add_argument("--corrupt", type=int, help="corrupted shares (robust-ramp)")
    s.set_defaults(func=cmd_attack)

    s = sub.add_parser("secrecy-check", parents=[common])
    s.add_argument("--size", type=int, help="view size; default the privacy threshold")
    s.set_defaults(func=cmd_secrecy)

    s = sub.add_parser("bounds", parents=[common])
    s.add_argument("--check", choices=("strong-rho", "weak-rho", "strong-amd", "weak-amd",
                                       "llr-table", "rate"))
    s.add_argument("--delta", type=_fraction)
    s.add_argument("--M", type=int)
    s.add_argument("--G", type=int)
    s.add_argument("--alpha", type=_fraction)
    s.set_defaults(func=cmd_bounds)
    return p


def main(argv=None, out=None) -> int:
    out = sys.stdout if out is None else out
    args = make_parser().parse_args(argv)
    try:
        return args.func(args, out)
    except EnumerationCapExceeded as e:
        print(f"leakyamd: {e}", file=sys.stderr)
        return EXIT_CAP
    except (UsageError, ValueError, OSError) as e:
        print(f"leakyamd: {e}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())

"""Command-line front end.

Exit codes: 0 success, 1 invalid parameters, 2 verification failure,
3 capacity exceeded.  The resolved configuration of every run is echoed to
stderr as a ``# config:`` line so stdout stays byte-reproducible.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import secrets
import sys
from typing import Sequence

from . import bounds, core, enumeration, numtheory, search
from .errors import MetacyclicError, VerificationError

FORMATS = ("table", "csv", "json-lines")


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def hex_pack(coeffs: Sequence[int], q: int) -> str:
    """Fixed-width hex digits per coefficient, ascending powers."""
    width = max(1, (len(f"{q - 1:x}")))
    return "".join(f"{c:0{width}x}" for c in coeffs)


def hex_unpack(text: str, q: int) -> list[int]:
    width = max(1, (len(f"{q - 1:x}")))
    return [int(text[i : i + width], 16) for i in range(0, len(text), width)]


def emit(rows: list[dict], fmt: str, out=None) -> None:
    out = out or sys.stdout
    if not rows:
        return
    cols = list(rows[0])
    if fmt == "json-lines":
        for row in rows:
            out.write(json.dumps(row) + "\n")
    elif fmt == "csv":
        buf = io.StringIO()
        writer = csv.DictWriter(buf, fieldnames=cols, lineterminator="\n")
        writer.writeheader()
        writer.writerows(rows)
        out.write(buf.getvalue())
    else:
        cells = [[str(row[c]) for c in cols] for row in rows]
        widths = [max(len(c), *(len(r[i]) for r in cells)) for i, c in enumerate(cols)]
        out.write("  ".join(c.rjust(w) for c, w in zip(cols, widths)).rstrip() + "\n")
        for r in cells:
            out.write("  ".join(v.rjust(w) for v, w in zip(r, widths)).rstrip() + "\n")


def _params(args) -> core.GroupParams:
    return core.params_from_qms(args.q, args.m, args.s, args.r, args.regime)


# -- subcommands ---------------------------------------------------------------------


def cmd_artin_primes(args) -> int:
    res = numtheory.artin_primes(args.q, args.s, args.count, args.limit)
    if args.format == "table":
        for m in res.primes:
            print(m)
    else:
        rows = [{"m": m, "ord": numtheory.mult_order(args.q, m), "m_mod_s": m % args.s} for m in res.primes]
        emit(rows, args.format)
    if res.exhausted:
        print(f"# limit {args.limit} reached after {len(res.primes)} primes", file=sys.stderr)
    return 0


def cmd_admissible(args) -> int:
    v = numtheory.admissibility(args.a, args.s)
    row = {
        "a": args.a,
        "s": args.s,
        "h": v.base.h,
        "d": v.base.d,
        "delta": v.base.delta,
        "admissible": v.admissible,
        "reasons": ";".join(v.reasons),
    }
    emit([row], args.format)
    return 0 if v.admissible else 1


def cmd_params_check(args) -> int:
    bad = core.check_params(args.q, args.m, args.s, args.r, args.regime)
    emit([{"q": args.q, "m": args.m, "s": args.s, "r": args.r, "regime": args.regime,
           "valid": not bad, "violations": ";".join(bad)}], args.format)
    return 0 if not bad else 1


def cmd_omega(args) -> int:
    params = _params(args)
    count = enumeration.omega(params)
    if args.format == "table":
        print(count.value)
    else:
        emit([{"q": params.q, "m": params.m, "s": params.s, "omega": count.value,
               "s_prime": count.s_prime, "t": count.t}], args.format)
    return 0


def cmd_enumerate(args) -> int:
    params = _params(args)
    codes = enumeration.enumerate_codes(params, args.method)
    rows = []
    for i, code in enumerate(codes):
        d = bounds.min_distance(code, args.guard, args.threads).d_min if args.distance else ""
        inv = core.is_invariant(code)
        if args.format == "json-lines":
            row = core.to_descriptor(code)
            row.update({"index": i, "d_min": d if args.distance else None, "invariant": inv})
        else:
            row = {"index": i, "a1_hex": hex_pack(code.a1.coeffs, params.q), "d_min": d, "invariant": inv}
        rows.append(row)
    emit(rows, args.format)
    print(f"# codes={len(codes)} distinct_row_spaces={enumeration.distinct_row_spaces(codes)}", file=sys.stderr)
    return 0 if all(r["invariant"] for r in rows) else 2


def cmd_distance(args) -> int:
    code = core.load_descriptor(args.file)
    res = bounds.min_distance(code, args.guard, args.threads)
    row = core.to_descriptor(code) if args.format == "json-lines" else {}
    row.update({"n": code.length, "k": code.dimension, "d_min": res.d_min,
                "witness": "".join(hex_pack([c], code.params.q) for c in res.witness.to_vector())})
    emit([row], args.format)
    return 0


def cmd_verify(args) -> int:
    try:
        code = core.load_descriptor(args.file)
    except VerificationError as exc:
        emit([{"file": args.file, "norm": "norm condition" not in exc.violations,
               "chain": "chain condition" not in exc.violations, "invariant": False,
               "proportional": False, "two_sided": False, "violations": ";".join(exc.violations)}], args.format)
        return 2
    inv = core.is_invariant_matrix(code.generator, code.params)
    prop = core.proportionality_holds(code)
    two = core.two_sided_check(code)
    violations = [name for name, ok in (("invariance", inv), ("proportionality", prop)) if not ok]
    row = core.to_descriptor(code) if args.format == "json-lines" else {"file": args.file}
    row.update({"norm": True, "chain": True, "invariant": inv, "proportional": prop,
                "two_sided": two.two_sided, "violations": ";".join(violations)})
    emit([row], args.format)
    return 0 if not violations else 2


def cmd_bound(args) -> int:
    if args.m is not None:
        params = _params(args)
        rep = bounds.guaranteed_distance(params)
        rows = [{"d": r.d, "V": r.volume, "qV": r.q_volume, "omega": rep.omega,
                 "verdict": "ok" if r.satisfied else "fail"} for r in rep.table]
        emit(rows, args.format)
        print(f"# guaranteed_d={rep.guaranteed_d} entropic_d={rep.entropic_d} "
              f"delta_star={rep.delta_star:.12f} capped_at_m={rep.capped_at_m}",
              file=sys.stdout if args.format == "table" else sys.stderr)
        return 0
    primes = numtheory.artin_primes(args.q, args.s, args.count, args.limit).primes
    rows = []
    for m in primes:
        rep = bounds.guaranteed_distance(core.params_from_qms(args.q, m, args.s))
        rows.append({"m": m, "n": rep.n, "omega": rep.omega, "guaranteed_d": rep.guaranteed_d,
                     "entropic_d": rep.entropic_d, "relative": f"{rep.guaranteed_d / rep.n:.6f}",
                     "delta_star": f"{rep.delta_star:.6f}"})
    emit(rows, args.format)
    return 0


def cmd_search(args) -> int:
    params = _params(args)
    seed = args.seed
    if seed is None:
        seed = secrets.randbits(63)
        print(f"# generated seed {seed}", file=sys.stderr)
    rep = search.expurgated_search(params, args.trials, args.target_d, seed, args.threads, args.guard)
    if args.format == "json-lines":
        print(json.dumps(rep.to_dict()))
    else:
        summary = rep.to_dict()["summary"]
        row = {"q": params.q, "m": params.m, "s": params.s, "r": params.r,
               "a1_hex": hex_pack(rep.best.a1.coeffs, params.q)}
        row.update({k: v for k, v in summary.items() if k != "witness"})
        emit([row], args.format)
    return 0


def cmd_cover_check(args) -> int:
    params = _params(args)
    rep = search.cover_multiplicity(params, weight_filter=not args.no_weight_filter, bound=args.bound)
    emit([{"q": params.q, "m": params.m, "s": params.s, "r": params.r, "codes": rep.codes,
           "vectors": rep.vectors, "max_multiplicity": rep.max_multiplicity,
           "within_q": rep.within_bound,
           "histogram": ";".join(f"{k}:{v}" for k, v in rep.histogram.items())}], args.format)
    return 0 if rep.within_bound or args.no_weight_filter else 2


def cmd_density(args) -> int:
    est = numtheory.empirical_density(args.a, args.s, args.limit)
    emit([{"a": args.a, "s": args.s, "limit": args.limit, "artin": est.artin_count,
           "progression": est.progression_count, "fraction": str(est.fraction),
           "value": f"{float(est.fraction):.6f}"}], args.format)
    return 0


# -- parser ----------------------------------------------------------------------------


def _add_params(p, need_m: bool = True, need_r: bool = True) -> None:
    p.add_argument("--q", type=int, required=True, help="field size (prime)")
    p.add_argument("--m", type=int, required=need_m, default=None, help="cyclic part order (prime)")
    p.add_argument("--s", type=int, required=True, help="order of y, s > 1")
    if need_r:
        p.add_argument("--r", type=int, default=None,
                       help="twist exponent, r^s = 1 mod m (default: smallest r of order s)")
        p.add_argument("--regime", choices=core.REGIMES, default=core.COUNTING,
                       help="hypothesis level (default: %(default)s)")


def _add_common(p, threads: bool = False) -> None:
    p.add_argument("--format", choices=FORMATS, default="table", help="output format (default: %(default)s)")
    if threads:
        p.add_argument("--threads", type=int, default=1, help="worker processes (default: %(default)s)")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="metacyclic", description="Metacyclic group codes over prime fields.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("artin-primes", help="primes m = 1 mod s with q primitive mod m")
    p.add_argument("--q", "--a", dest="q", type=int, required=True, help="base (the field size q)")
    p.add_argument("--s", type=int, required=True, help="progression modulus")
    p.add_argument("--count", type=int, default=10, help="number of primes (default: %(default)s)")
    p.add_argument("--limit", type=int, default=numtheory.DEFAULT_LIMIT,
                   help="largest prime examined (default: 2^31)")
    _add_common(p)
    p.set_defaults(func=cmd_artin_primes)

    p = sub.add_parser("admissible", help="Artin admissibility of (a, s)")
    p.add_argument("--a", type=int, required=True, help="nonzero integer base")
    p.add_argument("--s", type=int, required=True, help="progression modulus, s >= 1")
    _add_common(p)
    p.set_defaults(func=cmd_admissible)

    p = sub.add_parser("params-check", help="validate (q, m, s, r)")
    p.add_argument("--q", type=int, required=True, help="field size (prime)")
    p.add_argument("--m", type=int, required=True, help="cyclic part order (prime)")
    p.add_argument("--s", type=int, required=True, help="order of y")
    p.add_argument("--r", type=int, required=True, help="twist exponent")
    p.add_argument("--regime", choices=core.REGIMES, default=core.COUNTING,
                   help="hypothesis level (default: %(default)s)")
    _add_common(p)
    p.set_defaults(func=cmd_params_check)

    p = sub.add_parser("omega", help="closed-form number of codes")
    _add_params(p)
    _add_common(p)
    p.set_defaults(func=cmd_omega)

    p = sub.add_parser("enumerate", help="list every admissible a_1")
    _add_params(p)
    p.add_argument("--method", choices=("auto", "bruteforce", "crt"), default="auto",
                   help="enumeration route (default: %(default)s)")
    p.add_argument("--distance", action="store_true", help="also compute each code's minimum distance")
    p.add_argument("--guard", type=int, default=bounds.DISTANCE_GUARD,
                   help="max information words per distance computation (default: 2^26)")
    _add_common(p, threads=True)
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("distance", help="exact minimum distance of a code descriptor")
    p.add_argument("file", help="code descriptor (JSON)")
    p.add_argument("--guard", type=int, default=bounds.DISTANCE_GUARD,
                   help="max information words, q^m (default: 2^26)")
    _add_common(p, threads=True)
    p.set_defaults(func=cmd_distance)

    p = sub.add_parser("verify", help="norm, chain, invariance and two-sided checks")
    p.add_argument("file", help="code descriptor (JSON)")
    _add_common(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("bound", help="guaranteed distance from counting vs ball volumes")
    _add_params(p, need_m=False)
    p.add_argument("--count", type=int, default=5, help="sweep length over Artin primes when --m is omitted")
    p.add_argument("--limit", type=int, default=numtheory.DEFAULT_LIMIT, help="sweep prime limit (default: 2^31)")
    _add_common(p)
    p.set_defaults(func=cmd_bound)

    p = sub.add_parser("search", help="seeded random search for a code of large distance")
    _add_params(p)
    p.add_argument("--trials", type=int, default=100, help="number of sampled codes (default: %(default)s)")
    p.add_argument("--target-d", type=int, default=1, help="distance to reach (default: %(default)s)")
    p.add_argument("--seed", type=int, default=None, help="64-bit seed; generated and printed when omitted")
    p.add_argument("--guard", type=int, default=bounds.DISTANCE_GUARD,
                   help="max information words per distance computation (default: 2^26)")
    _add_common(p, threads=True)
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("cover-check", help="max number of codes sharing a low-weight codeword")
    _add_params(p)
    p.add_argument("--no-weight-filter", action="store_true", help="count codewords of every weight")
    p.add_argument("--bound", type=int, default=search.COVER_BOUND,
                   help="max codewords examined, codes x q^m (default: 2^26)")
    _add_common(p)
    p.set_defaults(func=cmd_cover_check)

    p = sub.add_parser("density", help="empirical share of Artin primes")
    p.add_argument("--a", type=int, required=True, help="base")
    p.add_argument("--s", type=int, required=True, help="progression modulus")
    p.add_argument("--limit", type=int, default=10**5, help="prime bound (default: %(default)s)")
    _add_common(p)
    p.set_defaults(func=cmd_density)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    config = {k: v for k, v in vars(args).items() if k != "func"}
    print(f"# config: {json.dumps(config, sort_keys=True)}", file=sys.stderr)
    try:
        return args.func(args)
    except MetacyclicError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.exit_code


if __name__ == "__main__":
    sys.exit(main())

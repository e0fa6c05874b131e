"""shiftcert command line: exact hyponormality certificates for weighted shift families."""

import argparse
import json
import os
import sys
import time
from fractions import Fraction

from . import __version__
from .certificate import Certificate, fmt, to_jsonable
from .khypo import DEFAULT_N, k_hyponormal_test, k_hypo_threshold, threshold_text
from .shifts import FamilyParseError, load_family, default_family, parse_rational, print_family

EXIT_USAGE = 64
ORACLE_TOL = Fraction(1, 10 ** 40)
GAP_ANCHOR = Fraction(667, 990)


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def _rational(text):
    try:
        return parse_rational(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def build_parser():
    p = _Parser(prog="shiftcert", description="Exact certificates for weighted shift hyponormality.")
    p.add_argument("--version", action="version", version=f"shiftcert {__version__}")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def cmd(name, help_, x=False, k=False, n_max=None, seed=False, precision=False):
        sp = sub.add_parser(name, help=help_)
        sp.add_argument("--family", metavar="FILE", help="family file (text or JSON); default: built-in family")
        if x:
            sp.add_argument("--x", type=_rational, required=True, metavar="P/Q")
        if k:
            sp.add_argument("--k", type=int, required=True)
        if n_max is not None:
            sp.add_argument("--n-max", type=int, default=n_max)
        if seed:
            sp.add_argument("--seed", type=int, default=42)
        if precision:
            sp.add_argument("--precision", type=int, default=256, metavar="BITS")
        fmt_group = sp.add_mutually_exclusive_group()
        fmt_group.add_argument("--json", dest="as_json", action="store_true")
        fmt_group.add_argument("--text", dest="as_json", action="store_false")
        sp.add_argument("--timing", action="store_true", help="include wall time (output no longer reproducible)")
        return sp

    cmd("check-hypo", "hyponormality (nondecreasing weights)", x=True, n_max=DEFAULT_N)
    cmd("check-khypo", "k-hyponormality via Hankel moment matrices", x=True, k=True, n_max=DEFAULT_N)
    cmd("threshold", "exact k-hyponormality threshold of the family", k=True)
    cmd("check-4hypo", "quartic hyponormality block test", x=True, n_max=12)
    cmd("quartic-certify", "augmented-block quartic certificate", x=True, n_max=12, seed=True)
    cmd("quartic-threshold", "coefficientwise threshold of the augmented block")
    cmd("gap", "interval: quartically hyponormal but not 3-hyponormal", seed=True)
    sp = cmd("oracle", "compare direct and block-sum quartic forms", x=True, seed=True, precision=True)
    sp.add_argument("--trials", type=int, default=100)
    sp = cmd("quad-scan", "W + sW^2 truncated hyponormality on an s grid", x=True, n_max=20)
    sp.add_argument("--s", type=_rational, action="append", metavar="P/Q", help="extra s values")
    return p


def _family(args):
    if args.family is None:
        return default_family()
    return load_family(args.family)


def _seed(args):
    env = os.environ.get("SHIFTCERT_SEED")
    if env is not None:
        try:
            return int(env)
        except ValueError:
            raise UsageError(f"SHIFTCERT_SEED must be an integer, got {env!r}") from None
    return getattr(args, "seed", None)


def _verdict_result(cert: Certificate):
    return cert.verdict.exit_code, cert.to_dict()


def _run_command(args, fam, seed):
    from . import oracles, quartic

    c = args.command
    if c == "check-hypo":
        from .shifts import hyponormal_check
        return _verdict_result(hyponormal_check(fam.at(args.x), args.n_max))
    if c == "check-khypo":
        return _verdict_result(k_hyponormal_test(fam.at(args.x), args.k, args.n_max))
    if c == "threshold":
        value, rep = k_hypo_threshold(fam, args.k, with_report=True)
        return 0, {"answer": threshold_text(value), "threshold": value, "binding_minor": rep["binding_minor"]}
    if c == "check-4hypo":
        return _verdict_result(quartic.four_hyponormal_test(fam.at(args.x), max(args.n_max, 5)))
    if c == "quartic-certify":
        return _verdict_result(quartic.quartic_certificate(fam, args.x, seed=seed, N=max(args.n_max, 5)))
    if c == "quartic-threshold":
        report, value = quartic.quartic_threshold(fam)
        binding = report.binding_entries()
        return 0, {"answer": threshold_text(value), "threshold": value,
                   "binding": [{"minor": e.minor, "exponent": list(e.exponent), "coefficient": e.coefficient}
                               for e in binding],
                   "constant_terms_positive": report.constant_terms_positive, "report": report.to_dict()}
    if c == "gap":
        lo, hi, rep = quartic.gap_interval(fam, seed=seed, anchor=GAP_ANCHOR if GAP_ANCHOR in fam.x_domain else None)
        code = 0 if rep["confirmed"] else 2
        return code, {"answer": f"({fmt(lo)}, {fmt(hi)}]", "lo": lo, "hi": hi, **rep}
    if c == "oracle":
        if args.precision < 128:
            raise UsageError("--precision must be at least 128")
        rows = oracles.oracle_trials(fam.at(args.x), trials=args.trials, seed=seed, precision=args.precision)
        worst = max(r["relative_difference"] for r in rows)
        worst_imag = max(r["imag"] for r in rows)
        ok = worst <= _mpf(ORACLE_TOL) and worst_imag <= _mpf(ORACLE_TOL)
        return (0 if ok else 1), {"answer": "agree" if ok else "disagree", "trials": len(rows),
                                  "max_relative_difference": _sci(worst), "max_imag": _sci(worst_imag),
                                  "min_scaled_value": _sci(min(r["scaled_value"] for r in rows)),
                                  "tolerance": "1e-40"}
    if c == "quad-scan":
        grid = list(oracles.S_GRID) + [v for v in (args.s or []) if v not in oracles.S_GRID]
        return _verdict_result(oracles.quadratic_scan(fam.at(args.x), args.n_max, grid))
    raise UsageError(f"unknown command {c}")  # pragma: no cover


def _mpf(q):
    from mpmath import mp
    return mp.mpf(q.numerator) / q.denominator


def _sci(v):
    from mpmath import nstr
    return nstr(v, 6)


def _inputs(args):
    out = {}
    for key in ("x", "k", "n_max", "precision", "trials", "s"):
        v = getattr(args, key, None)
        if v is not None:
            out[key] = v
    return out


def render_text(report):
    res = report["result"]
    lines = []
    if "answer" in res:
        lines.append(str(res["answer"]))
    else:
        lines.append(res["verdict"])
        lines.append(f"claim: {res['claim']}")
        if "rank" in res:
            lines.append(f"rank: {res['rank']}")
        if "witness" in res:
            lines.append("witness: " + json.dumps(res["witness"], sort_keys=True))
        if "stage" in res.get("data", {}):
            lines.append(f"stage: {res['data']['stage']}")
        lines += [f"note: {n}" for n in res.get("notes", [])]
    lines.append(f"family: {report['family']}")
    if report.get("seed") is not None:
        lines.append(f"seed: {report['seed']}")
    if "timing_seconds" in report:
        lines.append(f"time: {report['timing_seconds']}")
    return "\n".join(lines) + "\n"


def run(argv=None, out=None, err=None):
    out = out or sys.stdout
    err = err or sys.stderr
    argv = list(sys.argv[1:] if argv is None else argv)
    try:
        args = build_parser().parse_args(argv)
        fam = _family(args)
        seed = _seed(args)
        if getattr(args, "x", None) is not None and args.x not in fam.x_domain:
            raise UsageError(f"x = {fmt(args.x)} lies outside the family domain {fam.x_domain.to_text()}")
        started = time.perf_counter()
        code, result = _run_command(args, fam, seed)
        elapsed = time.perf_counter() - started
    except UsageError as exc:
        err.write(f"{exc}\n")
        return EXIT_USAGE
    except FamilyParseError as exc:
        err.write(f"family file: {exc}\n")
        return EXIT_USAGE
    except (OSError, ValueError) as exc:
        err.write(f"error: {exc}\n")
        return EXIT_USAGE
    report = {"tool": "shiftcert", "version": __version__, "command": args.command, "argv": argv,
              "family": print_family(fam), "inputs": to_jsonable(_inputs(args)), "seed": seed,
              "result": to_jsonable(result)}
    if args.timing:
        report["timing_seconds"] = round(elapsed, 3)
    if args.as_json:
        out.write(json.dumps(report, indent=2, sort_keys=True) + "\n")
    else:
        out.write(render_text(report))
    return code


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()

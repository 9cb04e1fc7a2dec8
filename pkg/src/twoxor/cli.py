"""Command-line front door.

Every command prints one JSON record: command echo, inputs, results,
provenance, version, seed, timestamp.  Rationals are rendered as "p/q"
strings next to float values; natural-log-scale outputs are flagged.
Exit codes: 0 success, 2 usage error, 3 unsupported regime, 4 budget
exceeded.
"""

import argparse
import json
import math
import os
import sys
import time
from fractions import Fraction

from . import __version__, asympt, census, montecarlo, oracle
from .census import UnsupportedRegimeError
from .expressions import (IntegerPartition, essential_count, parse_expression,
                          partition_of, reduce as reduce_expression,
                          to_multigraph)
from .kernels import backend_name
from .multigraph import (BudgetExceededError, DEFAULT_ENUM_CAP, connected_components,
                         cubic_count, core_count, multigraph_count)
from .numutil import fraction_str


def _load_config(path):
    """TOML-like key=value lines; '#' comments allowed."""
    out = {}
    with open(path) as fh:
        for line in fh:
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ValueError(f"bad config line: {line!r}")
            key, val = (s.strip() for s in line.split("=", 1))
            out[key] = val
    return out


def _settings(args):
    cfg = {}
    if getattr(args, "config", None):
        cfg = _load_config(args.config)
    cap = int(os.environ.get("TWOXOR_ENUM_CAP", cfg.get("enum_cap", DEFAULT_ENUM_CAP)))
    rmax = int(cfg.get("rmax", asympt.DEFAULT_RMAX))
    return {"enum_cap": cap, "rmax": rmax}


def _rat(q):
    q = Fraction(q)
    rec = {"rational": fraction_str(q)}
    try:
        rec["float"] = float(q)
    except OverflowError:
        from .numutil import ln_fraction

        rec["float"] = None
        rec["ln_value"] = ln_fraction(q) if q > 0 else None
        rec["log_scale"] = True
    return rec


def _logval(ln):
    rec = {"ln_value": ln, "log_scale": True}
    if ln < 700:
        rec["float"] = math.exp(ln)
    else:
        rec["float"] = None
    return rec


def _emit(args, inputs, results, method, extra_provenance=None, seed=None):
    record = {
        "command": args.command,
        "inputs": inputs,
        "results": results,
        "provenance": {"method": method, "backend": backend_name()},
        "version": __version__,
        "seed": seed,
        "timestamp": time.strftime("%Y-%m-%dT%H:%M:%SZ", time.gmtime()),
    }
    if extra_provenance:
        record["provenance"].update(extra_provenance)
    json.dump(record, sys.stdout, sort_keys=True)
    sys.stdout.write("\n")


def _cmd_sat_prob(args):
    settings = _settings(args)
    n, m = args.n, args.m
    if n < 1 or m < 0:
        raise SystemExit(_usage_error("need n >= 1 and m >= 0"))
    inputs = {"n": n, "m": m}
    if args.method == "exact":
        p = census.prob_sat_exact(m, n)
        _emit(args, inputs, {"prob_sat": _rat(p)}, "exact")
    elif args.method == "limit":
        val = asympt.prob_sat_subcritical(n, m)
        _emit(args, inputs, {"prob_sat": {"float": val}}, "asymptotic",
              {"regime": asympt.RegimeTag.ALPHA_SUBCRITICAL.value})
    elif args.method == "critical":
        val, tail = asympt.prob_sat_critical(n, m, args.rmax or settings["rmax"])
        _emit(args, inputs,
              {"prob_sat": {"float": val}, "truncation_tail_ratio": tail,
               "mu": asympt.critical_mu(n, m)},
              "asymptotic", {"regime": asympt.RegimeTag.ALPHA_CRITICAL.value})
    else:  # mc
        report = montecarlo.run_trials(n, m, args.trials, args.seed,
                                       args.parallel)
        _emit(args, inputs,
              {"prob_sat": {"float": report.sat_frequency},
               "stderr": report.sat_stderr, "trials": args.trials},
              "montecarlo", seed=args.seed)


def _cmd_input_prob(args):
    settings = _settings(args)
    n, m = args.n, args.m
    inputs = {"n": n, "m": m}
    if args.method == "exact":
        p = census.prob_input_satisfies_exact(m, n)
        _emit(args, inputs, {"prob_input_sat": _rat(p)}, "exact")
    else:
        rmax = args.rmax or settings["rmax"]
        ln = asympt.prob_input_limit(n, m, rmax, args.sigma_variant)
        _emit(args, inputs, {"prob_input_sat": _logval(ln)}, "asymptotic",
              {"sigma_variant": args.sigma_variant,
               "regime": asympt.classify_alpha(n, m).value})


def _dispatch_func_asympt(part, m):
    """Choose the asymptotic evaluator from the partition shape."""
    n = part.size
    counts = part.counts()
    tail = {size: mult for size, mult in counts.items() if size >= 2}
    r = m - n
    if part.num_parts == 1:
        ln, tag = asympt.single_block_asympt(n, m)
        return ln, tag.value
    if part.num_parts == 2 and 1 not in counts:
        p = min(part.parts)
        if r <= asympt.FIXED_EXCESS_MAX:
            if p <= 10:
                return (asympt.two_block_asympt(n, p, m, "fixed-single"),
                        asympt.RegimeTag.TWO_BLOCK_FIXED_SINGLE.value)
            return (asympt.two_block_asympt(n, p, m, "fixed-two-large"),
                    asympt.RegimeTag.TWO_BLOCK_FIXED_TWO_LARGE.value)
        if p <= 10:
            return (asympt.two_block_asympt(n, p, m, "large-single"),
                    asympt.RegimeTag.TWO_BLOCK_LARGE_SINGLE.value)
        return (asympt.two_block_asympt(n, p, m, "large-proportional"),
                asympt.RegimeTag.TWO_BLOCK_LARGE_PROPORTIONAL.value)
    if len(set(part.parts)) == 1 and part.parts[0] == 2:
        kappa = m - n + part.num_parts
        if kappa < 1:
            raise UnsupportedRegimeError("saddle point needs m > n/2")
        _, ln_e, _ = asympt.saddle_g2(n, kappa)
        ln = ln_e - m * math.log(4.0 * n * n)
        return ln, asympt.RegimeTag.PROPORTIONAL_SADDLE_G2.value
    essential = sum(size * mult for size, mult in tail.items())
    if (tail and counts.get(1, 0) >= essential
            and sum(tail.values()) <= 8 and max(tail) <= 20):
        # a fixed function padded with non-essential singleton variables
        alpha = m / n
        ln = asympt.prob_fixed_function_limit(tail, alpha, n)
        return ln, asympt.RegimeTag.FIXED_FUNCTION.value
    raise UnsupportedRegimeError(
        f"no asymptotic formula covers partition {part} at m = {m}")


def _cmd_func_prob(args):
    part = IntegerPartition.parse(args.partition)
    m = args.m
    inputs = {"partition": str(part), "n": part.size, "m": m}
    if args.method == "exact":
        cp = census.prob_function_exact(part, m)
        _emit(args, inputs,
              {"prob_function": _rat(cp.prob_per_function),
               "prob_class": _rat(cp.prob_class),
               "class_size": str(cp.class_size),
               "count_per_function": _rat(cp.count_per_function)},
              "exact")
    else:
        ln, regime = _dispatch_func_asympt(part, m)
        _emit(args, inputs, {"prob_function": _logval(ln)}, "asymptotic",
              {"regime": regime})


def _cmd_census(args):
    inputs = {"kind": args.kind, "n": args.n, "m": args.m, "r": args.r,
              "sigma": args.sigma}
    if args.kind == "multigraphs":
        val = multigraph_count(args.m, args.n)
    elif args.kind == "connected":
        val = census.connected_count(args.m, args.n)
    elif args.kind == "cubic":
        val = cubic_count(args.r)
    elif args.kind == "core":
        val = core_count(args.m, args.n)
    else:
        val = census.weighted_count(args.m, args.n, Fraction(args.sigma))
    _emit(args, inputs, {"count": _rat(val)}, "exact")


def _cmd_oracle(args):
    settings = _settings(args)
    cap = args.cap or settings["enum_cap"]
    oc = oracle.exhaustive_census(args.n, args.m, cap)
    _emit(args, {"n": args.n, "m": args.m, "cap": cap}, oc.as_record(), "oracle")


def _cmd_distribution(args):
    entries, pfalse = census.full_distribution(args.n, args.m)
    if args.format == "csv":
        sys.stdout.write("partition,class_size,count_per_function,"
                         "prob_function,prob_class\n")
        for e in entries:
            sys.stdout.write(
                f"{e.partition},{e.class_size},{e.count_per_function},"
                f"{float(e.prob_per_function)!r},{float(e.prob_class)!r}\n")
        sys.stdout.write(f"FALSE,1,,,{float(pfalse)!r}\n")
        return
    _emit(args, {"n": args.n, "m": args.m},
          {"classes": [e.as_record(args.m) for e in entries],
           "prob_false": _rat(pfalse)},
          "exact")


def _cmd_simulate(args):
    report = montecarlo.run_trials(args.n, args.m, args.trials, args.seed,
                                   args.parallel)
    results = report.as_record()
    if args.compare != "none":
        if args.compare == "exact":
            pred = {"sat": float(census.prob_sat_exact(args.m, args.n))}
        else:
            pred = {"sat": asympt.prob_sat_limit(args.n, args.m)}
        rows = montecarlo.compare(report, pred)
        results["comparison"] = [
            {"estimand": v.estimand, "empirical": v.empirical,
             "predicted": v.predicted, "stderr": v.stderr,
             "z": v.z_score, "status": v.status}
            for v in rows if v.status != "untestable"]
    _emit(args, {"n": args.n, "m": args.m, "trials": args.trials,
                 "parallel": args.parallel},
          results, "montecarlo", seed=args.seed)


def _cmd_reduce(args):
    expr = parse_expression(args.expr, args.n)
    f = reduce_expression(expr)
    g, _labels = to_multigraph(expr)
    results = {"n": expr.n, "m": expr.m, "function": str(f),
               "components": connected_components(g)}
    if not f.is_false:
        part = partition_of(f)
        results["partition"] = str(part)
        results["essential_variables"] = essential_count(f)
    _emit(args, {"expr": args.expr, "n": expr.n}, results, "exact")


def _cmd_plot_data(args):
    sys.stdout.write("alpha,value\n")
    for m in range(args.m_min, args.m_max + 1, args.step):
        alpha = m / args.n
        try:
            if args.method == "exact":
                val = float(census.prob_sat_exact(m, args.n))
            elif args.method == "limit":
                val = asympt.prob_sat_subcritical(args.n, m)
            else:
                val = asympt.prob_sat_critical(args.n, m)[0]
        except UnsupportedRegimeError:
            continue
        sys.stdout.write(f"{alpha!r},{val!r}\n")


def _usage_error(msg):
    sys.stderr.write(f"error: {msg}\n")
    return 2


def build_parser():
    top = argparse.ArgumentParser(
        prog="twoxor",
        description="Distribution of Boolean functions computed by random "
                    "2-Xor expressions: exact, asymptotic, and Monte Carlo.")
    top.add_argument("--config", help="key=value config file")
    sub = top.add_subparsers(dest="command", required=True)

    p = sub.add_parser("sat-prob", help="probability of satisfiability")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--method", choices=["exact", "limit", "critical", "mc"],
                   default="exact")
    p.add_argument("--trials", type=int, default=100000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--parallel", type=int, default=1)
    p.add_argument("--rmax", type=int, default=None)
    p.set_defaults(func=_cmd_sat_prob)

    p = sub.add_parser("input-prob",
                       help="probability a random input satisfies a random "
                            "satisfiable expression")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--method", choices=["exact", "limit"], default="exact")
    p.add_argument("--rmax", type=int, default=None)
    p.add_argument("--sigma-variant", choices=["half", "two"], default="half")
    p.set_defaults(func=_cmd_input_prob)

    p = sub.add_parser("func-prob", help="probability of one Boolean function")
    p.add_argument("--partition", required=True,
                   help="block sizes like '3+2+1+1'; n is the sum")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--method", choices=["exact", "asympt"], default="exact")
    p.set_defaults(func=_cmd_func_prob)

    p = sub.add_parser("census", help="exact multigraph censuses")
    p.add_argument("--kind", choices=["multigraphs", "connected", "cubic",
                                      "core", "weighted"], required=True)
    p.add_argument("--n", type=int, default=0)
    p.add_argument("--m", type=int, default=0)
    p.add_argument("--r", type=int, default=1, help="excess (cubic census)")
    p.add_argument("--sigma", default="1", help="component weight (weighted)")
    p.set_defaults(func=_cmd_census)

    p = sub.add_parser("oracle", help="exhaustive expression census")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--cap", type=int, default=None)
    p.set_defaults(func=_cmd_oracle)

    p = sub.add_parser("distribution", help="full per-class distribution")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--format", choices=["json", "csv"], default="json")
    p.set_defaults(func=_cmd_distribution)

    p = sub.add_parser("simulate", help="Monte Carlo trials")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--trials", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--parallel", type=int, default=1)
    p.add_argument("--compare", choices=["none", "exact", "limit"],
                   default="none")
    p.set_defaults(func=_cmd_simulate)

    p = sub.add_parser("reduce", help="reduce a textual expression")
    p.add_argument("--expr", required=True, help="clauses like '1 -3, -6 5'")
    p.add_argument("--n", type=int, default=None)
    p.set_defaults(func=_cmd_reduce)

    p = sub.add_parser("plot-data", help="CSV sweep of Pr(sat) against alpha")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--m-min", type=int, required=True)
    p.add_argument("--m-max", type=int, required=True)
    p.add_argument("--step", type=int, default=1)
    p.add_argument("--method", choices=["exact", "limit", "critical"],
                   default="exact")
    p.set_defaults(func=_cmd_plot_data)

    return top


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        args.func(args)
    except UnsupportedRegimeError as exc:
        json.dump({"error": "unsupported regime", "detail": str(exc)},
                  sys.stderr)
        sys.stderr.write("\n")
        return 3
    except BudgetExceededError as exc:
        json.dump({"error": "budget exceeded", "detail": str(exc),
                   "required": exc.required}, sys.stderr)
        sys.stderr.write("\n")
        return 4
    except (ValueError, ArithmeticError) as exc:
        return _usage_error(str(exc))
    return 0


if __name__ == "__main__":
    sys.exit(main())

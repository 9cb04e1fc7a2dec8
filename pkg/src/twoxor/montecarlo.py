"""Statistical verification harness for scales where exact counting is out.

Trials use counter-based substreams keyed by (seed, trial index), so a report
is a pure function of (n, m, trials, seed): chunking for parallelism can never
change the tallies.  Merging is an ordered reduction over chunk index.
"""

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction

from . import kernels
from .expressions import IntegerPartition


@dataclass
class TrialReport:
    n: int
    m: int
    trials: int
    seed: int
    false_count: int
    class_histogram: dict  # IntegerPartition -> count
    sat_frequency: float = field(init=False)
    sat_stderr: float = field(init=False)

    def __post_init__(self):
        sat = self.trials - self.false_count
        self.sat_frequency = sat / self.trials if self.trials else 0.0
        self.sat_stderr = binomial_stderr(sat, self.trials)

    def class_frequency(self, part) -> float:
        return self.class_histogram.get(part, 0) / self.trials

    def as_record(self):
        return {
            "n": self.n,
            "m": self.m,
            "trials": self.trials,
            "seed": self.seed,
            "false_count": self.false_count,
            "sat_frequency": self.sat_frequency,
            "sat_stderr": self.sat_stderr,
            "class_histogram": {str(part): cnt for part, cnt in
                                sorted(self.class_histogram.items(),
                                       key=lambda kv: str(kv[0]))},
        }


def binomial_stderr(successes, trials) -> float:
    """Normal-approximation standard error; Wilson half-width below 30
    successes (or 30 failures), where the normal approximation is poor."""
    if trials == 0:
        return float("inf")
    p = successes / trials
    if 30 <= successes <= trials - 30:
        return math.sqrt(p * (1 - p) / trials)
    z = 1.0
    denom = 1 + z * z / trials
    center = (p + z * z / (2 * trials)) / denom
    half = (z / denom) * math.sqrt(p * (1 - p) / trials + z * z / (4 * trials * trials))
    return max(half, math.sqrt(max(p * (1 - p), 1.0 / trials) / trials))


def _profile_to_partition(profile) -> IntegerPartition:
    return IntegerPartition.from_counts(dict(profile))


def run_trials(n, m, trials, seed, parallelism=1) -> TrialReport:
    """Sample `trials` expressions uniformly, reduce each, tally the classes."""
    if trials < 1:
        raise ValueError("trials must be >= 1")
    if n < 1 or m < 0:
        raise ValueError("need n >= 1, m >= 0")
    parallelism = max(1, int(parallelism))
    chunk = (trials + parallelism - 1) // parallelism
    spans = [(lo, min(chunk, trials - lo))
             for lo in range(0, trials, chunk)]

    def work(span):
        lo, cnt = span
        return kernels.mc_expression_trials(n, m, lo, cnt, seed)

    if parallelism == 1:
        results = [work(s) for s in spans]
    else:
        with ThreadPoolExecutor(max_workers=parallelism) as pool:
            results = list(pool.map(work, spans))

    false_count = 0
    hist = {}
    for fc, h in results:  # ordered reduction by chunk index
        false_count += fc
        for key, cnt in h.items():
            hist[key] = hist.get(key, 0) + cnt
    class_hist = {_profile_to_partition(k): v for k, v in hist.items()}
    return TrialReport(n, m, trials, seed, false_count, class_hist)


def sample_multigraph_frequencies(n, m, trials, seed, parallelism=1) -> dict:
    """Empirical counts of the multigraph process, keyed by canonical edge
    tuples ((u1,v1,u2,v2,...) flattened, sorted pairs)."""
    if trials < 1:
        raise ValueError("trials must be >= 1")
    parallelism = max(1, int(parallelism))
    chunk = (trials + parallelism - 1) // parallelism
    spans = [(lo, min(chunk, trials - lo)) for lo in range(0, trials, chunk)]

    def work(span):
        lo, cnt = span
        return kernels.mc_multigraph_trials(n, m, lo, cnt, seed)

    if parallelism == 1:
        results = [work(s) for s in spans]
    else:
        with ThreadPoolExecutor(max_workers=parallelism) as pool:
            results = list(pool.map(work, spans))
    hist = {}
    for h in results:
        for key, cnt in h.items():
            hist[key] = hist.get(key, 0) + cnt
    return hist


@dataclass
class Verdict:
    estimand: str
    empirical: float
    predicted: float
    stderr: float
    z_score: float
    status: str  # "pass" | "fail" | "untestable"


def compare(report: TrialReport, predictions: dict, z_cut=4.0):
    """Per-estimand z-scores against exact or asymptotic predictions.

    predictions maps estimand names to values; supported estimands are
    "sat" and "class:<partition>".  Missing predictions are marked
    untestable rather than failed.
    """
    rows = []

    def judge(name, emp_count):
        emp = emp_count / report.trials
        se = binomial_stderr(emp_count, report.trials)
        pred = predictions.get(name)
        if pred is None:
            rows.append(Verdict(name, emp, float("nan"), se, float("nan"),
                                "untestable"))
            return
        pred = float(pred)
        z = (emp - pred) / se if se > 0 else float("inf")
        rows.append(Verdict(name, emp, pred, se, z,
                            "pass" if abs(z) < z_cut else "fail"))

    judge("sat", report.trials - report.false_count)
    wanted = {name for name in predictions if name.startswith("class:")}
    seen = {f"class:{part}" for part in report.class_histogram}
    for name in sorted(wanted | seen):
        part = IntegerPartition.parse(name.split(":", 1)[1])
        judge(name, report.class_histogram.get(part, 0))
    return rows

"""Cross-cutting oracle suites re-proving every implemented theorem.

Each suite runs an enumerable family of instances against an independent
brute-force computation and returns a machine-readable report.  Random
sampling is seeded so reports are reproducible.
"""

from __future__ import annotations

import math
import random
import time
from dataclasses import dataclass, field

import numpy as np

from . import binomial, structure, vieru
from .core import DEFAULT_CAP, ModulusContext, digits
from .errors import ResourceLimitError
from .sequences import PeriodicSequence, from_values

DEFAULT_SEED = 1729


@dataclass(frozen=True)
class Failure:
    claim: str
    inputs: dict
    expected: object
    actual: object

    def to_dict(self) -> dict:
        return {
            "claim": self.claim,
            "inputs": self.inputs,
            "expected": repr(self.expected),
            "actual": repr(self.actual),
        }


@dataclass
class ConformanceReport:
    suite: str
    instances: int = 0
    failures: list[Failure] = field(default_factory=list)
    seconds: float = 0.0

    @property
    def ok(self) -> bool:
        return not self.failures

    def check(self, claim: str, inputs: dict, expected, actual) -> None:
        self.instances += 1
        if expected != actual:
            self.failures.append(Failure(claim, inputs, expected, actual))

    def to_dict(self) -> dict:
        return {
            "suite": self.suite,
            "instances": self.instances,
            "failures": [f.to_dict() for f in self.failures],
            "seconds": round(self.seconds, 3),
            "ok": self.ok,
        }


#: Claim registry: claim id -> the construct it re-proves.
CLAIMS = {
    "reduction.nu-identity": "bin_s is nu-equivalent to its Alt/Double expansion",
    "reduction.bookkeeping": "Pi/Z bookkeeping equals direct counting",
    "reduction.e-size": "closed |E_s| formula equals enumeration",
    "period.constant": "tau(Sigma^s [c]) = p^(ell - v(c) + k_s)",
    "period.sigma-order": "tau(Sigma f) = ord(tr f) * tau(f)",
    "period.nilpotent-leading": "nilpotent primitive period from the leading component",
    "period.idempotent-leading": "idempotent primitive period via lcm with leading constant",
    "structure.split-sum": "f equals idempotent part plus nilpotent part",
    "structure.split-kinds": "split parts are idempotent/nilpotent of the stated index",
    "structure.split-lcm": "tau(f) = lcm of the part periods",
    "structure.vect-roundtrip": "nilpotent constants decomposition reconstructs f",
    "structure.periodised": "nilpotent part equals q^(-1) times the periodised sequence",
    "structure.locality": "splitting commutes with p-part reduction",
    "structure.trace-idempotent": "idempotent sequences have trace 0",
    "vieru.recursion": "the six-case zero-count recursion matches the oracle",
    "vieru.d-forms": "the three forms of the correction sequence agree",
    "vieru.base-table": "the embedded base table is regenerated by the oracle",
}


def verify_reduction_lemmas(p: int, ell: int, s_max: int,
                    cap: int = DEFAULT_CAP) -> ConformanceReport:
    """Check the three digit-pattern reductions for every applicable s <= s_max."""
    report = ConformanceReport(suite=f"lemmas p={p} ell={ell} s<={s_max}")
    start = time.perf_counter()
    ctx = ModulusContext.of_prime_power(p, ell)
    for s in range(p ** (ell + 1), s_max + 1):
        steps = binomial.find_reductions(ctx, s)
        if not steps:
            continue
        f = binomial.bin_seq(ctx, s, cap=cap)
        direct = binomial.bin_stats(ctx, s, cap=cap)
        for step in steps:
            g = binomial.bin_seq(ctx, step.s_prime, cap=cap)
            if step.operator == "alt":
                expanded = binomial.alt_seq(g, p, step.scale_exponent)
            else:
                expanded = binomial.double_seq(g, p, step.scale_exponent)
            if step.lemma is binomial.Lemma.P_MINUS_1_ZEROS:
                es = binomial.e_set(ctx, s, step.m)
                report.check("reduction.e-size",
                             {"s": s, "m": step.m},
                             binomial.e_size_formula(ctx, s, step.m), es.size)
                chi = binomial.chi_e(ctx, s, step.m)
                expanded = expanded.add(chi.scalar_mul(p ** (ell - 1)))
            report.check("reduction.nu-identity",
                         {"s": s, "m": step.m, "lemma": step.lemma.value},
                         True, binomial.nu_equiv(f, expanded, ctx))
            sprime_stats = binomial.bin_stats(ctx, step.s_prime, cap=cap)
            derived = binomial.apply_reduction(step, ctx, sprime_stats)
            report.check("reduction.bookkeeping",
                         {"s": s, "m": step.m, "lemma": step.lemma.value},
                         (direct.pi, direct.zeros), (derived.pi, derived.zeros))
    report.seconds = time.perf_counter() - start
    return report


def measure_constant_periods(p: int, ell: int, s_max: int,
                             c_values: tuple[int, ...]) -> dict[tuple[int, int], int]:
    """Measured tau(Sigma^s [c]) by iterated prefix summation over a fixed window.

    The window is one full period of the largest binomial involved, so every
    true period divides it; prefix sums over a window are exact.
    """
    m = p**ell
    k_max = digits(s_max, p).k
    window = p ** (ell + k_max)
    arr = np.ones(window, dtype=np.int64)
    measured: dict[tuple[int, int], int] = {}
    for s in range(1, s_max + 1):
        nxt = np.zeros_like(arr)
        np.cumsum(arr[:-1], out=nxt[1:])
        nxt %= m
        arr = nxt
        for c in c_values:
            scaled = (c * arr) % m
            measured[(c, s)] = _window_period(scaled, p)
    return measured


def _window_period(arr: np.ndarray, p: int) -> int:
    """Minimal period of a window whose true period is a p-power dividing its length."""
    n = len(arr)
    d = 1
    while d < n:
        if np.array_equal(arr.reshape(-1, d), np.broadcast_to(arr[:d], (n // d, d))):
            return d
        d *= p
    return n


def verify_periods(p: int, ell: int, s_max: int,
                   c_values: tuple[int, ...] | None = None,
                   cap: int = DEFAULT_CAP) -> ConformanceReport:
    """Measured vs predicted periods of primitives of constants."""
    report = ConformanceReport(suite=f"periods p={p} ell={ell} s<={s_max}")
    start = time.perf_counter()
    ctx = ModulusContext.of_prime_power(p, ell)
    m = p**ell
    if c_values is None:
        c_values = tuple(c for c in range(1, m))
    measured = measure_constant_periods(p, ell, s_max, c_values)
    for (c, s), tau in measured.items():
        report.check("period.constant", {"p": p, "ell": ell, "c": c, "s": s},
                     structure.predict_period_constant(c, s, ctx), tau)
    rng = random.Random(DEFAULT_SEED + m)
    for _ in range(6):
        entries = tuple(rng.randrange(m) for _ in range(rng.randint(1, 4)))
        if all(e == 0 for e in entries):
            continue
        f = structure.reconstruct_from_constants(m, entries, cap=cap)
        if f.is_zero():
            continue
        _check_leading_term(report, f, steps=12, cap=cap)
    for _ in range(12):
        g = structure.split(_random_sequence(rng, m, max_len=6)).idempotent_part
        if g.is_zero():
            continue
        _check_leading_term(report, g, steps=12, cap=cap)
    report.seconds = time.perf_counter() - start
    return report


def _check_leading_term(report: ConformanceReport, f: PeriodicSequence,
                        steps: int, cap: int) -> None:
    """Measured tau(Sigma^s f) against the analytic prediction, past its threshold."""
    kindix = structure.classify(f)
    if kindix is None:
        return
    kind = kindix[0]
    if kind is structure.Kind.NILPOTENT:
        predict = structure.predict_period_nilpotent
        claim = "period.nilpotent-leading"
    else:
        predict = structure.predict_period_idempotent
        claim = "period.idempotent-leading"
    valid_from = predict(f, 0).valid_from
    g = f
    try:
        for s in range(1, valid_from + steps + 1):
            g = g.sigma(0, cap=cap)
            if s >= valid_from:
                pred = predict(f, s)
                report.check(claim, {"f": str(f), "s": s},
                             pred.predicted_period, g.period)
    except ResourceLimitError:
        pass


def _random_sequence(rng: random.Random, m: int, max_len: int = 8) -> PeriodicSequence:
    length = rng.randint(1, max_len)
    return from_values(m, [rng.randrange(m) for _ in range(length)])


def verify_structure(moduli: tuple[int, ...] = (4, 8, 9, 12),
                     samples: int = 500,
                     seed: int = DEFAULT_SEED,
                     cap: int = DEFAULT_CAP) -> ConformanceReport:
    """Split/reconstruction/uniqueness/locality assertions over random sequences."""
    report = ConformanceReport(suite=f"structure moduli={moduli} samples={samples}")
    start = time.perf_counter()
    rng = random.Random(seed)
    for _ in range(samples):
        m = rng.choice(moduli)
        f = _random_sequence(rng, m)
        res = structure.split(f)
        report.check("structure.split-sum", {"f": str(f)},
                     f, res.idempotent_part.add(res.nilpotent_part))
        idem_ok = res.idempotent_part.delta_iter(res.idempotency_index) == res.idempotent_part
        nil_ok = res.nilpotent_part.delta_iter(res.nilpotency_index).is_zero() \
            if res.nilpotency_index else res.nilpotent_part.is_zero()
        report.check("structure.split-kinds", {"f": str(f)}, (True, True), (idem_ok, nil_ok))
        report.check("structure.split-lcm", {"f": str(f)},
                     f.period,
                     math.lcm(res.idempotent_part.period, res.nilpotent_part.period))
        if not res.idempotent_part.is_zero():
            report.check("structure.trace-idempotent", {"f": str(f)},
                         0, res.idempotent_part.trace())
        ctx = ModulusContext.of(m)
        if ctx.prime_power is not None and not res.nilpotent_part.is_zero():
            consts = structure.nilpotent_to_constants(res.nilpotent_part)
            rebuilt = structure.reconstruct_from_constants(m, consts, cap=cap)
            report.check("structure.vect-roundtrip", {"f": str(f)},
                         res.nilpotent_part, rebuilt)
        if ctx.prime_power is not None:
            report.check("structure.periodised", {"f": str(f)},
                         res.nilpotent_part, structure.nilpotent_part_by_periodisation(f))
        else:
            for q, e in ctx.factorization:
                part_split = structure.split(f.p_part(q, e))
                report.check("structure.locality", {"f": str(f), "p": q},
                             (res.idempotent_part.p_part(q, e),
                              res.nilpotent_part.p_part(q, e)),
                             (part_split.idempotent_part, part_split.nilpotent_part))
    # the two exotic idempotent witnesses mod 3
    for vals, index, period in (
        ([1, 1, 1, 0, 0, 2, 0, 0, 0, 2, 2, 2, 0, 0, 1, 0, 0, 0], 9, 18),
        ([0, 2, 0, 0, 1], 80, 5),
    ):
        f = from_values(3, vals)
        kindix = structure.classify(f)
        report.check("structure.split-kinds",
                     {"f": str(f)},
                     (structure.Kind.IDEMPOTENT, index, period),
                     (kindix[0] if kindix else None,
                      kindix[1] if kindix else None,
                      f.period))
    report.seconds = time.perf_counter() - start
    return report


def verify_vieru(k_max: int = 9, d_k_max: int = 12) -> ConformanceReport:
    """Recursion vs oracle for every dyadic block up to k_max, plus the d identities."""
    report = ConformanceReport(suite=f"vieru k<={k_max}")
    start = time.perf_counter()
    for s in range(32, 64):
        report.check("vieru.base-table", {"s": s}, vieru.Z5[s - 32], vieru.z_oracle(s))
    for s in range(64, 2 ** (k_max + 1)):
        report.check("vieru.recursion", {"s": s, "case": vieru.case_of(s)},
                     vieru.z_oracle(s), vieru.z_recursive(s))
    for k in range(5, d_k_max + 1):
        rec = vieru.d_recursive(k)
        dom = vieru.d_domain(k)
        for i, s in enumerate(dom):
            closed = vieru.d_closed(k, s)
            report.check("vieru.d-forms", {"k": k, "s": s},
                         (closed, closed), (rec[i], vieru.d_hamming(k, s)))
    report.seconds = time.perf_counter() - start
    return report


def case_frequencies(k_max: int) -> dict[str, int]:
    counts = {c: 0 for c in "ABCDEF"}
    for s in range(64, 2 ** (k_max + 1)):
        counts[vieru.case_of(s)] += 1
    return counts


@dataclass
class BenchmarkReport:
    s_start: int
    s_stop: int
    direct_seconds: float
    chain_seconds: float
    all_equal: bool

    @property
    def speedup(self) -> float:
        return self.direct_seconds / self.chain_seconds if self.chain_seconds else float("inf")

    def to_dict(self) -> dict:
        return {
            "s_start": self.s_start,
            "s_stop": self.s_stop,
            "direct_seconds": round(self.direct_seconds, 3),
            "chain_seconds": round(self.chain_seconds, 3),
            "speedup": round(self.speedup, 1),
            "all_equal": self.all_equal,
        }


def benchmark_reduction(p: int = 2, ell: int = 2,
                        s_start: int = 1 << 10, s_stop: int = 1 << 11,
                        cap: int = 1 << 20) -> BenchmarkReport:
    """Time Z(bin_s) over an s-range via reduce_chain vs full materialization."""
    ctx = ModulusContext.of_prime_power(p, ell)
    t0 = time.perf_counter()
    chain_zeros = [binomial.reduce_chain(ctx, s, cap=cap).stats.zeros
                   for s in range(s_start, s_stop)]
    chain_seconds = time.perf_counter() - t0
    t0 = time.perf_counter()
    direct_zeros = [binomial.bin_stats(ctx, s, cap=cap).zeros
                    for s in range(s_start, s_stop)]
    direct_seconds = time.perf_counter() - t0
    return BenchmarkReport(
        s_start=s_start, s_stop=s_stop,
        direct_seconds=direct_seconds, chain_seconds=chain_seconds,
        all_equal=chain_zeros == direct_zeros,
    )

"""Binomial-coefficient sequences mod p^ell and the digit-pattern reductions.

The s-th binomial sequence bin_s(n) = C(n, s) mod p^ell has period
p^(ell + k_s).  When the base-p digits of s show one of the windows
(p-1)...(p-1), 0...0 or (p-1)0...0 of width ell, bin_s is nu-equivalent to
an Alt/Double expansion of bin_s' for an s' with one digit fewer, which
turns valuation statistics into cheap bookkeeping.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

from .core import DEFAULT_CAP, ModulusContext, digits, digit_sum, residue_valuation
from .errors import ResourceLimitError, UsageError
from .sequences import PeriodicSequence


class Lemma(str, enum.Enum):
    ALL_P_MINUS_1 = "all-p-1"       # window (p-1)^ell, removed via Alt
    ALL_ZERO = "all-zero"           # window 0^ell, removed via Double
    P_MINUS_1_ZEROS = "p-1-zeros"   # window (p-1)0^(ell-1), Double + E_s correction


@dataclass(frozen=True)
class BinomialStats:
    """Valuation census of one minimal period of bin_s."""

    s: int
    p: int
    ell: int
    period: int
    pi: tuple[int, ...]  # pi[i] = entries of valuation i, 0 <= i < ell
    zeros: int


@dataclass(frozen=True)
class ReductionStep:
    """One lemma application taking bin_s to an expansion of bin_s_prime."""

    lemma: Lemma
    m: int                 # window position parameter, -1 allowed
    s: int
    s_prime: int
    operator: str          # "alt" or "double"
    scale_exponent: int    # the q^t in Alt/Double is p**scale_exponent
    e_size: int | None = None  # |E_s| for the (p-1)0...0 lemma


@dataclass(frozen=True)
class ESet:
    """The correction index set of the (p-1)0...0 lemma, fully enumerated."""

    s: int
    m: int
    indices: frozenset[int]

    @property
    def size(self) -> int:
        return len(self.indices)


@dataclass(frozen=True)
class ReductionChain:
    s: int
    terminal_s: int
    steps: tuple[ReductionStep, ...]
    stats: BinomialStats


def _require_prime_power(ctx: ModulusContext) -> tuple[int, int]:
    if ctx.prime_power is None:
        raise UsageError("a prime-power modulus is required")
    return ctx.prime_power


def bin_seq(ctx: ModulusContext, s: int, cap: int = DEFAULT_CAP) -> PeriodicSequence:
    """One full period of n -> C(n, s) mod p^ell.

    Entries are produced by the borrow count first (most are zero) and exact
    arithmetic only where a unit survives.
    """
    p, ell = _require_prime_power(ctx)
    if s < 0:
        raise UsageError("s must be >= 0")
    if s == 0:
        return PeriodicSequence(ctx.m, (1,))
    period = p ** (ell + digits(s, p).k)
    if period > cap:
        raise ResourceLimitError(
            f"bin_{s} mod {p}^{ell} has period {period} (cap {cap})"
        )
    m = ctx.m
    vals = [0] * period
    if p == 2:
        s_bits = s.bit_count()
        for n in range(s, period):
            if s_bits + (n - s).bit_count() - n.bit_count() < ell:
                vals[n] = math.comb(n, s) % m
    else:
        s_sum = digit_sum(s, p)
        pm1 = p - 1
        for n in range(s, period):
            if s_sum + digit_sum(n - s, p) - digit_sum(n, p) < ell * pm1:
                vals[n] = math.comb(n, s) % m
    return PeriodicSequence(m, tuple(vals))


def double_seq(f: PeriodicSequence, q: int, t: int) -> PeriodicSequence:
    """Repeat each q^t-subsequence of f q times.

    f is first expanded to a representative of length lcm(tau, q^t), so any
    periodic sequence is accepted.
    """
    if t < 1:
        raise UsageError("t must be >= 1")
    qt = q**t
    length = math.lcm(f.period, qt)
    rep = f.materialize(length)
    out: list[int] = []
    for j in range(length // qt):
        out.extend(rep[j * qt:(j + 1) * qt] * q)
    return PeriodicSequence(f.modulus, tuple(out))


def alt_seq(f: PeriodicSequence, q: int, t: int) -> PeriodicSequence:
    """Alternate (q-1)q^t zeros with the q^t-subsequences of f."""
    if t < 1:
        raise UsageError("t must be >= 1")
    qt = q**t
    length = math.lcm(f.period, qt)
    rep = f.materialize(length)
    pad = [0] * ((q - 1) * qt)
    out: list[int] = []
    for j in range(length // qt):
        out.extend(pad)
        out.extend(rep[j * qt:(j + 1) * qt])
    return PeriodicSequence(f.modulus, tuple(out))


def nu_equiv(f: PeriodicSequence, g: PeriodicSequence, ctx: ModulusContext) -> bool:
    """Pointwise equality of zero patterns and p-adic valuations."""
    p, ell = _require_prime_power(ctx)
    if f.modulus != ctx.m or g.modulus != ctx.m:
        raise UsageError("sequences must live in the given prime-power ring")
    length = math.lcm(f.period, g.period)
    for n in range(length):
        a, b = f.nth(n), g.nth(n)
        if (a == 0) != (b == 0):
            return False
        if a != 0 and residue_valuation(a, p, ell) != residue_valuation(b, p, ell):
            return False
    return True


def stats(f: PeriodicSequence, ctx: ModulusContext) -> tuple[tuple[int, ...], int]:
    """(pi, zeros) counted over exactly one minimal period of f."""
    p, ell = _require_prime_power(ctx)
    pi = [0] * ell
    zeros = 0
    for v in f.values:
        if v == 0:
            zeros += 1
        else:
            pi[residue_valuation(v, p, ell).unwrap()] += 1
    return tuple(pi), zeros


def bin_stats(ctx: ModulusContext, s: int, cap: int = DEFAULT_CAP) -> BinomialStats:
    """Direct (materializing) statistics of bin_s."""
    p, ell = _require_prime_power(ctx)
    f = bin_seq(ctx, s, cap=cap)
    pi, zeros = stats(f, ctx)
    return BinomialStats(s=s, p=p, ell=ell, period=f.period, pi=pi, zeros=zeros)


def _delete_digit(s: int, pos: int, p: int) -> int:
    """Remove the digit at position pos from the base-p expansion of s."""
    ds = list(digits(s, p).digits)
    del ds[pos]
    v = 0
    for d in reversed(ds):
        v = v * p + d
    return v


def e_size_formula(ctx: ModulusContext, s: int, m: int) -> int:
    """Closed-form |E_s| from the digit product formula."""
    p, ell = _require_prime_power(ctx)
    dv = digits(s, p)
    k = dv.k
    b = dv.digit
    size = p ** (ell - 1)
    for j in range(k - m, k + 1):
        size *= p - b(j)
    size *= (p - 1) * b(k - m - ell - 1)
    for i in range(0, k - ell - m - 1):
        size *= p - b(i)
    return size


def e_set(ctx: ModulusContext, s: int, m: int) -> ESet:
    """Enumerate E_s for a pattern (p-1)0...0 at position m (the ground truth)."""
    p, ell = _require_prime_power(ctx)
    dv = digits(s, p)
    k = dv.k
    b = dv.digit
    if not (k > ell and -1 <= m <= k - ell - 1):
        raise UsageError("window position out of range")
    if b(k - m - 1) != p - 1 or any(b(k - m - i) != 0 for i in range(2, ell + 1)):
        raise UsageError(f"s={s} does not match the (p-1)0...0 pattern at m={m}")
    top = p ** (k + ell)
    hi_positions = list(range(k - m, k + 1))
    lo_positions = list(range(0, k - m - ell - 1))
    members = []
    for n in range(top):
        a = digits(n, p).digit
        if a(k - m - 1) != p - 1:
            continue
        if a(k - m - 2) == 0:
            continue
        if any(a(k - m - i) != 0 for i in range(3, ell + 1)):
            continue
        if not a(k - m - ell - 1) < b(k - m - ell - 1):
            continue
        if any(a(j) < b(j) for j in hi_positions):
            continue
        if any(a(j) < b(j) for j in lo_positions):
            continue
        members.append(n)
    return ESet(s=s, m=m, indices=frozenset(members))


def chi_e(ctx: ModulusContext, s: int, m: int) -> PeriodicSequence:
    """The 0/1 indicator sequence of E_s, of period p^(k+ell)."""
    p, ell = _require_prime_power(ctx)
    k = digits(s, p).k
    top = p ** (k + ell)
    es = e_set(ctx, s, m)
    vals = [0] * top
    for n in es.indices:
        vals[n] = 1
    return PeriodicSequence(ctx.m, tuple(vals))


def find_reductions(ctx: ModulusContext, s: int) -> list[ReductionStep]:
    """All lemma applications valid for s, most significant window first.

    At a fixed window position the pattern preference is (p-1)^ell, then
    (p-1)0^(ell-1), then 0^ell; any valid order yields the same statistics,
    a fixed one makes chains reproducible.
    """
    p, ell = _require_prime_power(ctx)
    if s < 1:
        return []
    dv = digits(s, p)
    k = dv.k
    if k <= ell:
        return []
    b = dv.digit
    steps: list[ReductionStep] = []
    for m in range(-1, k - ell):
        window = [b(k - m - i) for i in range(1, ell + 1)]  # top digit first
        if all(d == p - 1 for d in window):
            steps.append(ReductionStep(
                lemma=Lemma.ALL_P_MINUS_1, m=m, s=s,
                s_prime=_delete_digit(s, k - m - ell, p),
                operator="alt", scale_exponent=k - m - ell,
            ))
        elif ell >= 2 and window[0] == p - 1 and all(d == 0 for d in window[1:]):
            steps.append(ReductionStep(
                lemma=Lemma.P_MINUS_1_ZEROS, m=m, s=s,
                s_prime=_delete_digit(s, k - m - 2, p),
                operator="double", scale_exponent=k - m - 2,
                e_size=e_size_formula(ctx, s, m),
            ))
        elif all(d == 0 for d in window):
            steps.append(ReductionStep(
                lemma=Lemma.ALL_ZERO, m=m, s=s,
                s_prime=_delete_digit(s, k - m - 1, p),
                operator="double", scale_exponent=k - m - 1,
            ))
    return steps


def apply_reduction(step: ReductionStep, ctx: ModulusContext,
                    stats_prime: BinomialStats) -> BinomialStats:
    """Statistics of bin_s from those of bin_s', without materializing bin_s."""
    p, ell = _require_prime_power(ctx)
    if stats_prime.s != step.s_prime:
        raise UsageError("statistics do not belong to the step's target s'")
    k = digits(step.s, p).k
    period = p ** (ell + k)
    if step.lemma is Lemma.ALL_P_MINUS_1:
        pi = stats_prime.pi
        zeros = stats_prime.zeros + (p - 1) * p ** (k + ell - 1)
    elif step.lemma is Lemma.ALL_ZERO:
        pi = tuple(p * x for x in stats_prime.pi)
        zeros = p * stats_prime.zeros
    else:
        e = step.e_size if step.e_size is not None else e_size_formula(ctx, step.s, step.m)
        pi = tuple(p * x for x in stats_prime.pi[:-1]) + (p * stats_prime.pi[-1] + e,)
        zeros = p * stats_prime.zeros - e
    return BinomialStats(s=step.s, p=p, ell=ell, period=period, pi=pi, zeros=zeros)


def reduce_chain(ctx: ModulusContext, s: int, cap: int = DEFAULT_CAP) -> ReductionChain:
    """Apply the first available reduction until none applies, then materialize.

    Completeness holds for p = 2, ell = 2; elsewhere the chain may stop at an
    irreducible s*, whose statistics are computed directly.
    """
    steps: list[ReductionStep] = []
    cur = s
    while True:
        found = find_reductions(ctx, cur)
        if not found:
            break
        steps.append(found[0])
        cur = found[0].s_prime
    st = bin_stats(ctx, cur, cap=cap)
    for step in reversed(steps):
        st = apply_reduction(step, ctx, st)
    return ReductionChain(s=s, terminal_s=cur, steps=tuple(steps), stats=st)

"""Idempotent/nilpotent structure of periodic sequences mod p^ell.

Covers the unique splitting of a sequence into idempotent and nilpotent
parts, generating vectors, decompositions into primitives of constants,
periodised sequences, and analytic period prediction for primitives.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

from .core import (
    DEFAULT_CAP,
    ModulusContext,
    Valuation,
    digits,
    kummer_valuation,
    residue_valuation,
)
from .errors import UsageError
from .sequences import PeriodicSequence, constant, primitive


class Kind(str, enum.Enum):
    IDEMPOTENT = "idempotent"
    NILPOTENT = "nilpotent"


@dataclass(frozen=True)
class SplitResult:
    """The unique decomposition f = f_I + f_N.

    Orbit parameters: M is the first delta-iterate index that repeats an
    earlier iterate u < M, t = M - u is the cycle length, and k_bar is
    minimal with k_bar * t >= u.
    """

    idempotent_part: PeriodicSequence
    nilpotent_part: PeriodicSequence
    idempotency_index: int
    nilpotency_index: int
    u: int
    M: int
    t: int
    k_bar: int


@dataclass(frozen=True)
class GeneratingVector:
    """The tuple (delta^0 f(0), ..., delta^(eta-1) f(0)) of a pure sequence.

    leading_index is the largest index among entries of minimal p-adic
    valuation; its entry ultimately controls the period of high primitives.
    """

    entries: tuple[int, ...]
    kind: Kind
    p: int
    ell: int

    @property
    def index(self) -> int:
        return len(self.entries)

    @property
    def leading_index(self) -> int:
        best: int | None = None
        best_val = Valuation.infinite()
        for i, e in enumerate(self.entries):
            v = residue_valuation(e, self.p, self.ell)
            if not best_val < v:  # v <= best_val: later index wins ties
                best = i
                best_val = v
        if best is None or best_val.is_infinite:
            raise UsageError("zero sequence has no leading component")
        return best

    @property
    def leading_value(self) -> int:
        return self.entries[self.leading_index]


@dataclass(frozen=True)
class PeriodPrediction:
    """Analytic period of a primitive, with the exact validity threshold.

    Predictions below valid_from are still computed but are advisory only;
    the threshold comes from the explicit bounds, not a heuristic.
    """

    predicted_period: int
    valid_from: int
    leading_index: int
    leading_value: int
    advisory: bool


def _delta_orbit(f: PeriodicSequence) -> tuple[list[PeriodicSequence], int, int]:
    """Iterate delta until the first repeat; returns (orbit, u, M)."""
    seen: dict[PeriodicSequence, int] = {}
    orbit: list[PeriodicSequence] = []
    g = f
    while g not in seen:
        seen[g] = len(orbit)
        orbit.append(g)
        g = g.delta()
    return orbit, seen[g], len(orbit)


def split(f: PeriodicSequence) -> SplitResult:
    """Unique decomposition of f as idempotent plus nilpotent part."""
    orbit, u, M = _delta_orbit(f)
    t = M - u
    k_bar = -(-u // t)  # minimal k with k*t >= u
    f_idem = orbit[k_bar * t]
    f_nil = f.sub(f_idem)
    return SplitResult(
        idempotent_part=f_idem,
        nilpotent_part=f_nil,
        idempotency_index=t,
        nilpotency_index=k_bar * t,
        u=u,
        M=M,
        t=t,
        k_bar=k_bar,
    )


def classify(f: PeriodicSequence) -> tuple[Kind, int] | None:
    """(kind, index) for a pure idempotent or nilpotent sequence, else None.

    The zero sequence counts as nilpotent of index 1.  The index is the
    minimal eta >= 1 with delta^eta f = 0 (nilpotent) or = f (idempotent).
    """
    if f.is_zero():
        return Kind.NILPOTENT, 1
    orbit, u, M = _delta_orbit(f)
    if orbit[u].is_zero():
        # the orbit falls into the fixed point 0: u is minimal with delta^u f = 0
        return Kind.NILPOTENT, u
    if u == 0:
        return Kind.IDEMPOTENT, M
    return None


def is_nilpotent_by_period(f: PeriodicSequence) -> bool:
    """Nilpotency test via the period criterion: tau(f) must be a power of p."""
    ctx = ModulusContext.of(f.modulus)
    p = ctx.p
    tau = f.period
    while tau % p == 0:
        tau //= p
    return tau == 1


def generating_vector(f: PeriodicSequence) -> GeneratingVector:
    """The generating vector of a pure idempotent or nilpotent sequence.

    Mixed sequences are rejected: split first and ask for the part you
    actually mean.
    """
    ctx = ModulusContext.of(f.modulus)
    kindix = classify(f)
    if kindix is None:
        raise UsageError(
            "sequence is neither idempotent nor nilpotent; split() it first"
        )
    kind, eta = kindix
    entries = []
    g = f
    for _ in range(eta):
        entries.append(g.nth(0))
        g = g.delta()
    return GeneratingVector(tuple(entries), kind, ctx.p, ctx.ell)


def nilpotent_to_constants(f: PeriodicSequence) -> tuple[int, ...]:
    """The constants (e_0, ..., e_{eta-1}) with f = sum_i Sigma^i [e_i]."""
    gv = generating_vector(f)
    if gv.kind is not Kind.NILPOTENT:
        raise UsageError("sequence is not nilpotent")
    return gv.entries


def reconstruct_from_constants(m: int, entries: tuple[int, ...],
                               cap: int = DEFAULT_CAP) -> PeriodicSequence:
    """Rebuild sum_i Sigma^i [e_i] by materializing the primitives."""
    if not entries:
        raise UsageError("need at least one constant")
    acc = constant(m, entries[0])
    for i, e in enumerate(entries[1:], start=1):
        acc = acc.add(primitive(constant(m, e), i, cap=cap))
    return acc


def periodised(f: PeriodicSequence, t: int) -> PeriodicSequence:
    """The p^t-periodised sequence: the sum of the q shifted copies theta^(j p^t) f.

    Requires tau(f) = q * p^t with p not dividing q.  The result has period
    dividing p^t and is therefore nilpotent.
    """
    ctx = ModulusContext.of(f.modulus)
    p = ctx.p
    pt = p**t
    tau = f.period
    if tau % pt != 0 or (tau // pt) % p == 0:
        raise UsageError(f"period {tau} is not q*{p}^{t} with q coprime to {p}")
    q = tau // pt
    acc = f
    for j in range(1, q):
        acc = acc.add(f.shift(j * pt))
    return acc


def nilpotent_part_by_periodisation(f: PeriodicSequence) -> PeriodicSequence:
    """The nilpotent part computed as q^(-1) times the p^t-periodised sequence."""
    ctx = ModulusContext.of(f.modulus)
    p = ctx.p
    tau = f.period
    t = 0
    while tau % p == 0:
        tau //= p
        t += 1
    q = tau
    q_inv = pow(q, -1, f.modulus)
    return periodised(f, t).scalar_mul(q_inv)


def _ov(z: int, eta: int) -> int:
    """Mathematical remainder of z mod eta, in [0, eta)."""
    return z % eta


def idem_primitive(f: PeriodicSequence, s: int, cap: int = DEFAULT_CAP) -> PeriodicSequence:
    """Sigma^s of an idempotent sequence via its closed decomposition.

    Sigma^s f = delta^(ov(-s)) f - sum_{j=0}^{s-1} Sigma^j [e_(ov(j-s))],
    which is also the explicit idempotent/nilpotent split of the primitive.
    """
    if s < 1:
        raise UsageError("s must be >= 1")
    gv = generating_vector(f)
    if gv.kind is not Kind.IDEMPOTENT:
        raise UsageError("sequence is not idempotent")
    eta = gv.index
    head = f.delta_iter(_ov(-s, eta))
    m = f.modulus
    tail = None
    for j in range(s):
        term = primitive(constant(m, gv.entries[_ov(j - s, eta)]), j, cap=cap)
        tail = term if tail is None else tail.add(term)
    return head.sub(tail)


def predict_period_constant(c: int, s: int, ctx: ModulusContext) -> int:
    """Period of Sigma^s [c] mod p^ell: exactly p^(ell - v(c) + k_s)."""
    p, ell = ctx.p, ctx.ell
    t = residue_valuation(c, p, ell)
    if t.is_infinite:
        raise UsageError("c must be nonzero mod p^ell")
    if s < 0:
        raise UsageError("s must be >= 0")
    if s == 0:
        return 1
    k_s = digits(s, p).k
    return p ** (ell - t.unwrap() + k_s)


def _mu_threshold(eta: int, gamma: int, p: int) -> int:
    """Minimal mu with eta - gamma - 1 < p^mu (p - 1)."""
    mu = 0
    while not eta - gamma - 1 < p**mu * (p - 1):
        mu += 1
    return mu


def predict_period_nilpotent(f: PeriodicSequence, s: int) -> PeriodPrediction:
    """Predicted tau(Sigma^s f) for nilpotent f, from its leading component."""
    ctx = ModulusContext.of(f.modulus)
    gv = generating_vector(f)
    if gv.kind is not Kind.NILPOTENT:
        raise UsageError("sequence is not nilpotent")
    if f.is_zero():
        raise UsageError("zero sequence has no period prediction")
    gamma = gv.leading_index
    e_gamma = gv.leading_value
    predicted = predict_period_constant(e_gamma, s + gamma, ctx)
    mu = _mu_threshold(gv.index, gamma, ctx.p)
    valid_from = max(0, ctx.p**mu - gamma)
    return PeriodPrediction(predicted, valid_from, gamma, e_gamma, advisory=s < valid_from)


def predict_period_idempotent(f: PeriodicSequence, s: int) -> PeriodPrediction:
    """Predicted tau(Sigma^s f) for idempotent f: lcm with the leading constant's period."""
    ctx = ModulusContext.of(f.modulus)
    gv = generating_vector(f)
    if gv.kind is not Kind.IDEMPOTENT:
        raise UsageError("sequence is not idempotent")
    eta = gv.index
    gamma = gv.leading_index
    e_gamma = gv.leading_value
    predicted = math.lcm(f.period, predict_period_constant(e_gamma, max(s - eta + gamma, 0), ctx))
    mu = _mu_threshold(eta, gamma, ctx.p)
    valid_from = max(eta, eta + ctx.p**mu - gamma)
    return PeriodPrediction(predicted, valid_from, gamma, e_gamma, advisory=s < valid_from)


def partial_sum_valuation(c: int, s: int, ctx: ModulusContext) -> Valuation:
    """Valuation of sum_{n=0}^{p^(ell-t+k)-1} Sigma^s[c](n).

    Equals v_p(c * C(p^(ell-t+k), s+1)); it is exactly ell-1 when every
    base-p digit of s is p-1 and at least ell otherwise.
    """
    p, ell = ctx.p, ctx.ell
    t = residue_valuation(c, p, ell)
    if t.is_infinite:
        raise UsageError("c must be nonzero mod p^ell")
    if s < 1:
        raise UsageError("s must be >= 1")
    k = digits(s, p).k
    top = p ** (ell - t.unwrap() + k)
    borrows = kummer_valuation(top, s + 1, p).unwrap()
    return Valuation.finite(t.unwrap() + borrows)


def cumulative_primitive_period(f: PeriodicSequence, t: int) -> int:
    """Predicted tau(sum_{i=0}^{t} Sigma^i f) for nilpotent f."""
    ctx = ModulusContext.of(f.modulus)
    gv = generating_vector(f)
    if gv.kind is not Kind.NILPOTENT:
        raise UsageError("sequence is not nilpotent")
    gamma = gv.leading_index
    return predict_period_constant(gv.leading_value, t + gamma, ctx)

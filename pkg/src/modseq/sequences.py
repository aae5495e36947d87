"""Periodic sequences over Z_m and the shift / difference / sum operators.

A sequence is stored as its modulus plus exactly one minimal period of
residues, so equality is structural and the period is O(1).  All operations
return new sequences; nothing here mutates.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

from .core import DEFAULT_CAP, additive_order
from .errors import ResourceLimitError, UsageError


@dataclass(frozen=True)
class PeriodicSequence:
    """One minimal period of residues mod ``modulus``.

    Construction canonicalizes: entries are reduced into [0, modulus) and
    the stored list is contracted to the minimal period.  It is enough to
    scan divisors of the raw length because the gcd of two periods is again
    a period.
    """

    modulus: int
    values: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.modulus < 2:
            raise UsageError("modulus must be >= 2")
        if not self.values:
            raise UsageError("a periodic sequence needs at least one value")
        vals = tuple(v % self.modulus for v in self.values)
        n = len(vals)
        for d in _divisors(n):
            if vals == vals[:d] * (n // d):
                vals = vals[:d]
                break
        object.__setattr__(self, "values", vals)

    # -- basic accessors -------------------------------------------------

    @property
    def period(self) -> int:
        return len(self.values)

    def nth(self, n: int) -> int:
        return self.values[n % len(self.values)]

    def trace(self) -> int:
        return sum(self.values) % self.modulus

    def is_zero(self) -> bool:
        return self.values == (0,)

    def materialize(self, length: int) -> list[int]:
        """The first ``length`` entries."""
        reps = -(-length // len(self.values))
        return list(self.values * reps)[:length]

    # -- operators -------------------------------------------------------

    def shift(self, j: int = 1) -> "PeriodicSequence":
        """The shifted sequence n -> f(n + j)."""
        j %= len(self.values)
        return PeriodicSequence(self.modulus, self.values[j:] + self.values[:j])

    def delta(self) -> "PeriodicSequence":
        """The difference n -> f(n+1) - f(n); its period divides the period of f."""
        m = self.modulus
        vals = self.values
        n = len(vals)
        return PeriodicSequence(m, tuple((vals[(i + 1) % n] - vals[i]) % m for i in range(n)))

    def delta_iter(self, times: int) -> "PeriodicSequence":
        g = self
        for _ in range(times):
            g = g.delta()
        return g

    def sigma(self, c: int = 0, cap: int = DEFAULT_CAP) -> "PeriodicSequence":
        """The sum sequence with seed c: a right inverse of delta.

        Materializes exactly h * period entries, where h is the additive
        order of the trace; that length is the exact resulting period, so no
        period probing is needed.
        """
        m = self.modulus
        h = additive_order(self.trace(), m)
        length = h * len(self.values)
        if length > cap:
            raise ResourceLimitError(
                f"sigma would materialize {length} entries (cap {cap}); "
                "use analytic period prediction for large primitives"
            )
        out = [c % m]
        vals = self.values
        n = len(vals)
        for i in range(1, length):
            out.append((vals[(i - 1) % n] + out[-1]) % m)
        return PeriodicSequence(m, tuple(out))

    # -- module structure ------------------------------------------------

    def add(self, other: "PeriodicSequence") -> "PeriodicSequence":
        if self.modulus != other.modulus:
            raise UsageError("cannot add sequences with different moduli")
        m = self.modulus
        length = math.lcm(len(self.values), len(other.values))
        return PeriodicSequence(
            m, tuple((self.nth(i) + other.nth(i)) % m for i in range(length))
        )

    def sub(self, other: "PeriodicSequence") -> "PeriodicSequence":
        return self.add(other.scalar_mul(-1))

    def scalar_mul(self, c: int) -> "PeriodicSequence":
        m = self.modulus
        return PeriodicSequence(m, tuple((c * v) % m for v in self.values))

    __add__ = add
    __sub__ = sub

    def __mul__(self, c: int) -> "PeriodicSequence":
        return self.scalar_mul(c)

    __rmul__ = __mul__

    # -- prime decomposition ---------------------------------------------

    def p_part(self, p: int, ell: int) -> "PeriodicSequence":
        """Entrywise reduction mod p^ell (which must divide the modulus exactly)."""
        q = p**ell
        if self.modulus % q != 0 or (self.modulus // q) % p == 0:
            raise UsageError(f"{p}^{ell} does not exactly divide {self.modulus}")
        return PeriodicSequence(q, tuple(v % q for v in self.values))

    # -- serialization ---------------------------------------------------

    def to_record(self) -> dict:
        return {"modulus": self.modulus, "period": list(self.values)}

    @classmethod
    def from_record(cls, record: dict) -> "PeriodicSequence":
        try:
            m = int(record["modulus"])
            vals = [int(v) for v in record["period"]]
        except (KeyError, TypeError, ValueError) as exc:
            raise UsageError(f"malformed sequence record: {exc}") from exc
        return cls(m, tuple(vals))

    def __str__(self) -> str:
        return f"[{', '.join(map(str, self.values))}] mod {self.modulus}"


def _divisors(n: int) -> list[int]:
    out = [d for d in range(1, n + 1) if n % d == 0]
    return out


def from_values(m: int, raw: Sequence[int]) -> PeriodicSequence:
    """Reduce entries mod m and contract to the minimal period."""
    if not raw:
        raise UsageError("raw value list must be nonempty")
    return PeriodicSequence(m, tuple(raw))


def constant(m: int, c: int) -> PeriodicSequence:
    return PeriodicSequence(m, (c,))


def zero(m: int) -> PeriodicSequence:
    return PeriodicSequence(m, (0,))


def primitive(f: PeriodicSequence, s: int, cap: int = DEFAULT_CAP) -> PeriodicSequence:
    """The s-th primitive: s applications of sigma with seed 0."""
    if s < 0:
        raise UsageError("s must be >= 0")
    g = f
    for _ in range(s):
        g = g.sigma(0, cap=cap)
    return g


def crt_combine(parts: Iterable[PeriodicSequence]) -> PeriodicSequence:
    """The unique sequence whose reductions mod the (coprime) part moduli are the parts.

    The result has modulus equal to the product and period equal to the lcm
    of the part periods.
    """
    parts = list(parts)
    if not parts:
        raise UsageError("crt_combine needs at least one part")
    if len(parts) == 1:
        return parts[0]
    big_m = 1
    for part in parts:
        if math.gcd(big_m, part.modulus) != 1:
            raise UsageError("part moduli must be pairwise coprime")
        big_m *= part.modulus
    basis = []
    for part in parts:
        cof = big_m // part.modulus
        inv = pow(cof, -1, part.modulus)
        basis.append(cof * inv)
    length = math.lcm(*(part.period for part in parts))
    vals = tuple(
        sum(b * part.nth(i) for b, part in zip(basis, parts)) % big_m
        for i in range(length)
    )
    return PeriodicSequence(big_m, vals)

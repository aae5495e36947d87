"""Exact modular and p-adic primitives.

Residues, p-adic valuations, base-p digit vectors, borrow counting for
binomial valuations, and exact binomial residues.  Everything here is pure
integer arithmetic; values are immutable and safe to share.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache

import sympy

from .errors import UsageError

#: Default cap on materialized period lengths (entries).
DEFAULT_CAP = 1 << 16


@lru_cache(maxsize=None)
def _is_prime(p: int) -> bool:
    return p >= 2 and bool(sympy.isprime(p))


def _require_prime(p: int) -> None:
    if not _is_prime(p):
        raise UsageError(f"{p} is not prime")


@dataclass(frozen=True)
class Valuation:
    """A p-adic valuation: a finite exponent, or infinite for zero.

    The infinite variant is a real variant, never a sentinel integer, so
    accidental arithmetic on the valuation of zero fails loudly.
    """

    exponent: int | None = None  # None encodes the infinite valuation

    @classmethod
    def finite(cls, t: int) -> "Valuation":
        if t < 0:
            raise UsageError("valuation exponent must be >= 0")
        return cls(t)

    @classmethod
    def infinite(cls) -> "Valuation":
        return cls(None)

    @property
    def is_infinite(self) -> bool:
        return self.exponent is None

    def unwrap(self) -> int:
        """The finite exponent; raises on the infinite valuation."""
        if self.exponent is None:
            raise UsageError("valuation is infinite (zero element)")
        return self.exponent

    def __lt__(self, other: "Valuation") -> bool:
        if self.exponent is None:
            return False
        if other.exponent is None:
            return True
        return self.exponent < other.exponent

    def __le__(self, other: "Valuation") -> bool:
        return self == other or self < other

    def __repr__(self) -> str:
        if self.exponent is None:
            return "Valuation.infinite()"
        return f"Valuation.finite({self.exponent})"


@dataclass(frozen=True)
class ModulusContext:
    """The ambient ring Z_m, optionally specialized to a prime power p^ell."""

    m: int
    prime_power: tuple[int, int] | None = None  # (p, ell) with p**ell == m
    factorization: tuple[tuple[int, int], ...] = field(default=())

    def __post_init__(self) -> None:
        if self.m < 2:
            raise UsageError("modulus must be >= 2")
        if not self.factorization:
            fac = tuple(sorted(sympy.factorint(self.m).items()))
            object.__setattr__(self, "factorization", fac)
        prod = 1
        for q, e in self.factorization:
            prod *= q**e
        if prod != self.m:
            raise UsageError("factorization does not multiply back to modulus")
        if self.prime_power is None and len(self.factorization) == 1:
            object.__setattr__(self, "prime_power", self.factorization[0])
        if self.prime_power is not None:
            p, ell = self.prime_power
            _require_prime(p)
            if p**ell != self.m:
                raise UsageError(f"{p}^{ell} != {self.m}")

    @classmethod
    def of(cls, m: int) -> "ModulusContext":
        return cls(m)

    @classmethod
    def of_prime_power(cls, p: int, ell: int) -> "ModulusContext":
        _require_prime(p)
        if ell < 1:
            raise UsageError("exponent must be >= 1")
        return cls(p**ell, prime_power=(p, ell))

    @property
    def p(self) -> int:
        if self.prime_power is None:
            raise UsageError(f"modulus {self.m} is not a prime power")
        return self.prime_power[0]

    @property
    def ell(self) -> int:
        if self.prime_power is None:
            raise UsageError(f"modulus {self.m} is not a prime power")
        return self.prime_power[1]


@dataclass(frozen=True)
class DigitVector:
    """Canonical base-p expansion, least-significant digit first.

    digits(0) is the empty vector; operations needing the leading index
    reject it, because the digit formulas all assume a nonzero top digit.
    """

    base: int
    digits: tuple[int, ...]

    def __post_init__(self) -> None:
        _require_prime(self.base)
        if any(not 0 <= d < self.base for d in self.digits):
            raise UsageError("digit out of range")
        if self.digits and self.digits[-1] == 0:
            raise UsageError("non-canonical digit vector (trailing zero)")

    @property
    def k(self) -> int:
        """Index of the most significant (nonzero) digit."""
        if not self.digits:
            raise UsageError("the zero integer has no leading digit")
        return len(self.digits) - 1

    @property
    def zero_count(self) -> int:
        """Number of zero digits among positions 0..k."""
        return sum(1 for d in self.digits if d == 0)

    @property
    def weight(self) -> int:
        """Number of nonzero digits (for base 2: the Hamming weight)."""
        return sum(1 for d in self.digits if d != 0)

    def digit(self, i: int) -> int:
        """The i-th digit, 0 beyond the top."""
        if i < 0:
            raise UsageError("digit index must be >= 0")
        return self.digits[i] if i < len(self.digits) else 0

    def value(self) -> int:
        v = 0
        for d in reversed(self.digits):
            v = v * self.base + d
        return v

    def __str__(self) -> str:
        if not self.digits:
            return f"0_{self.base}"
        msf = "".join(str(d) for d in reversed(self.digits))
        return f"{msf}_{self.base}"


def digits(n: int, p: int) -> DigitVector:
    """Canonical base-p expansion of n >= 0."""
    _require_prime(p)
    if n < 0:
        raise UsageError("n must be >= 0")
    ds = []
    while n:
        ds.append(n % p)
        n //= p
    return DigitVector(p, tuple(ds))


def valuation(x: int, p: int) -> Valuation:
    """p-adic valuation of an integer; infinite for 0."""
    _require_prime(p)
    if x == 0:
        return Valuation.infinite()
    x = abs(x)
    t = 0
    while x % p == 0:
        x //= p
        t += 1
    return Valuation.finite(t)


def residue_valuation(x: int, p: int, ell: int) -> Valuation:
    """Valuation of a residue class mod p^ell; infinite for the zero coset."""
    x %= p**ell
    if x == 0:
        return Valuation.infinite()
    return valuation(x, p)


def zero_count(s: int) -> int:
    """Number of 0 digits in the canonical binary expansion of s >= 1."""
    if s < 1:
        raise UsageError("zero_count needs s >= 1 (no canonical expansion of 0)")
    return s.bit_length() - s.bit_count()


def hamming_weight(n: int) -> int:
    """Number of 1 digits in the binary expansion of n >= 0."""
    if n < 0:
        raise UsageError("n must be >= 0")
    return n.bit_count()


def bitwise_or(s: int, t: int) -> int:
    """Bitwise OR of the binary expansions of s and t."""
    if s < 0 or t < 0:
        raise UsageError("arguments must be >= 0")
    return s | t


def digit_sum(n: int, p: int) -> int:
    total = 0
    while n:
        total += n % p
        n //= p
    return total


def kummer_valuation(n: int, s: int, p: int) -> Valuation:
    """Valuation of C(n, s): the number of borrows subtracting s from n in base p."""
    _require_prime(p)
    if s > n or s < 0:
        raise UsageError("kummer_valuation needs n >= s >= 0")
    # Legendre: borrows = (S_p(s) + S_p(n-s) - S_p(n)) / (p - 1).
    if p == 2:
        borrows = s.bit_count() + (n - s).bit_count() - n.bit_count()
    else:
        borrows = (digit_sum(s, p) + digit_sum(n - s, p) - digit_sum(n, p)) // (p - 1)
    return Valuation.finite(borrows)


def binom_mod(n: int, s: int, ctx: ModulusContext) -> int:
    """C(n, s) mod m by exact unbounded-precision arithmetic (the oracle path)."""
    if s < 0 or n < 0:
        raise UsageError("binom_mod needs n, s >= 0")
    if s > n:
        return 0
    return math.comb(n, s) % ctx.m


def binom_mod_fast(n: int, s: int, ctx: ModulusContext) -> int:
    """C(n, s) mod p^ell with a Kummer short-circuit.

    Returns 0 as soon as the borrow count reaches ell, falling back to the
    exact computation only for the (few) unit-bearing entries.  Must agree
    with binom_mod everywhere; cross-tested.
    """
    if ctx.prime_power is None:
        return binom_mod(n, s, ctx)
    if s < 0 or n < 0:
        raise UsageError("binom_mod needs n, s >= 0")
    if s > n:
        return 0
    p, ell = ctx.prime_power
    if kummer_valuation(n, s, p).unwrap() >= ell:
        return 0
    return math.comb(n, s) % ctx.m


def additive_order(c: int, m: int) -> int:
    """Smallest h >= 1 with h*c == 0 mod m, i.e. m / gcd(c, m)."""
    if m < 1:
        raise UsageError("modulus must be >= 1")
    return m // math.gcd(c % m, m)

"""The nilpotent seed [2,1,2,0,0,1,0,0] mod 4 and its zero-count recursion.

The s-th primitive of the seed expands into five binomial sequences mod 4;
its zero count Z(s) over one minimal period obeys a six-case recursion per
dyadic block, with a correction sequence d_k that exists in three equivalent
forms (zero-count, recurrence, Hamming weight).
"""

from __future__ import annotations

from functools import lru_cache

import numpy as np

from .core import hamming_weight, zero_count
from .errors import ResourceLimitError, UsageError
from .sequences import PeriodicSequence

#: The full sequence mod 12 and its 2-part, the seed of everything below.
VIERU_MOD12 = PeriodicSequence(12, (2, 1, 2, 4, 8, 1, 8, 4))
VIERU_SEED = PeriodicSequence(4, (2, 1, 2, 0, 0, 1, 0, 0))

#: Zero counts for the dyadic block 32 <= s < 64, the recursion's base block.
#: Frozen from the brute-force oracle; the recursion for s >= 64 reproduces
#: the oracle exactly on this base.
Z5 = (
    88, 64, 80, 88, 92, 64, 80, 88, 104, 92, 104, 108, 94, 78, 88, 96,
    108, 96, 104, 108, 110, 102, 108, 112, 118, 114, 118, 120, 64, 64, 96, 128,
)

#: Case constants, each to be scaled by 2^(k-5) at use.
C_CASE_B = (48, 32, 40, 44)
C_CASE_D = (48, 40, 44, 48)
C_CASE_F = (32, 32, 48, 64)

#: Coefficients of the binomial expansion of the s-th primitive:
#: Sigma^s seed = 2 bin_{s+4} + 3 bin_{s+3} + 2 bin_{s+2} + 3 bin_{s+1} + 2 bin_s.
SEED_BINOMIAL_COEFFS = (2, 3, 2, 3, 2)

DEFAULT_VIERU_CAP = 1 << 20


def _prefix_mod4(a: np.ndarray) -> np.ndarray:
    """One application of the sum operator (seed 0) on a materialized window."""
    out = np.zeros_like(a)
    np.cumsum(a[:-1], out=out[1:])
    out %= 4
    return out


def vieru_primitive(s: int, cap: int = DEFAULT_VIERU_CAP) -> PeriodicSequence:
    """The s-th primitive of the seed, via its binomial expansion.

    bin_s is built by s-fold prefix summation of the all-ones window and the
    four higher binomials by four more summations; prefix sums over a window
    are exact regardless of periodicity, and every component period divides
    the window length 2^(2 + k) where s+4 has k+1 binary digits.
    """
    if s < 0:
        raise UsageError("s must be >= 0")
    window = 1 << (2 + (s + 4).bit_length() - 1)
    if window > cap:
        raise ResourceLimitError(
            f"primitive {s} needs a window of {window} entries (cap {cap})"
        )
    b = np.ones(window, dtype=np.int64)
    for _ in range(s):
        b = _prefix_mod4(b)
    acc = np.zeros(window, dtype=np.int64)
    for coeff in reversed(SEED_BINOMIAL_COEFFS):  # bin_s first, then bin_{s+1}, ...
        acc += coeff * b
        b = _prefix_mod4(b)
    acc %= 4
    return PeriodicSequence(4, tuple(int(x) for x in acc))


@lru_cache(maxsize=None)
def z_oracle(s: int, cap: int = DEFAULT_VIERU_CAP) -> int:
    """Zeros in one minimal period of the s-th primitive (the brute-force referee)."""
    f = vieru_primitive(s, cap=cap)
    return sum(1 for v in f.values if v == 0)


# -- the correction sequence d_k, in three equivalent forms ----------------

def d_domain(k: int) -> range:
    """Admissible s for d_k: 2^k + 2^(k-2) <= s < 2^k + 2^(k-1) - 4."""
    if k < 5:
        raise UsageError("d_k needs k >= 5")
    return range(2**k + 2**(k - 2), 2**k + 2**(k - 1) - 4)


def d_closed(k: int, s: int) -> int:
    """d_k(s) = 2^z(s+1) + 2^z(s+3) - 2 * 2^z(s+1 | s+3)."""
    if s not in d_domain(k):
        raise UsageError(f"s={s} outside the d_{k} range")
    return (
        2 ** zero_count(s + 1)
        + 2 ** zero_count(s + 3)
        - 2 * 2 ** zero_count((s + 1) | (s + 3))
    )


def d_recursive(k: int) -> tuple[int, ...]:
    """The whole d_k block via d_5 = (4,8,4,4) and the doubling recurrence."""
    if k < 5:
        raise UsageError("d_k needs k >= 5")
    block = (4, 8, 4, 4)
    for j in range(5, k):
        block = (
            tuple(2 * x for x in block)
            + (4, 2 ** (j - 1), 2 ** (j - 2), 2 ** (j - 2))
            + block
        )
    return block


def d_hamming(k: int, s: int) -> int:
    """d_k(s) = 2^(wt(2^k + 2^(k-1) - 4 - s) + 1)."""
    if s not in d_domain(k):
        raise UsageError(f"s={s} outside the d_{k} range")
    return 2 ** (hamming_weight(2**k + 2 ** (k - 1) - 4 - s) + 1)


def w_sequence(h: int) -> tuple[int, ...]:
    """Hamming weights of 1 .. 2^(h+1) - 4 via the block recurrence."""
    if h < 2:
        raise UsageError("w_h needs h >= 2")
    w = (1, 1, 2, 1)
    for j in range(2, h):
        w = w + (j, j, j + 1, 1) + tuple(x + 1 for x in w)
    return w


def a_relation_check(k: int, exponents: tuple[int, ...]) -> bool:
    """Check d_k(2^k + 2^(k-2) + 2^t1 + ... + 2^th - 4) = 2^(k - h - th)."""
    if not exponents or list(exponents) != sorted(set(exponents), reverse=True):
        raise UsageError("exponents must be strictly decreasing")
    s = 2**k + 2 ** (k - 2) + sum(2**t for t in exponents) - 4
    if s not in d_domain(k):
        raise UsageError(f"s={s} outside the d_{k} range")
    h = len(exponents)
    return d_closed(k, s) == 2 ** (k - h - exponents[-1])


# -- the recursion for Z(s) ------------------------------------------------

def case_of(s: int) -> str:
    """Which recursion case covers s (for s >= 64): one of A..F."""
    if s < 64:
        raise UsageError("cases are defined for s >= 64")
    k = s.bit_length() - 1
    q = 1 << k
    if s <= q + q // 4 - 5:
        return "A"
    if s <= q + q // 4 - 1:
        return "B"
    if s <= q + q // 2 - 5:
        return "C"
    if s <= q + q // 2 - 1:
        return "D"
    if s <= 2 * q - 5:
        return "E"
    return "F"


@lru_cache(maxsize=None)
def z_recursive(s: int) -> int:
    """Z(s) by the closed recursion; base block 32 <= s < 64 is the frozen table.

    Below the base block the brute-force oracle answers.  Memoized, because
    cases B/D/F reach into non-adjacent earlier blocks.
    """
    if s < 0:
        raise UsageError("s must be >= 0")
    if s < 32:
        return z_oracle(s)
    if s < 64:
        return Z5[s - 32]
    k = s.bit_length() - 1
    q = 1 << k
    scale = 2 ** (k - 5)
    case = case_of(s)
    if case == "A":
        return 2 * z_recursive(s - q // 2)
    if case == "B":
        i = s - (q + q // 4 - 5)
        return z_recursive(s - q // 2 - q // 8) + scale * C_CASE_B[i - 1]
    if case == "C":
        return 2 * z_recursive(s - q // 2) - d_closed(k, s)
    if case == "D":
        i = s - (q + q // 2 - 5)
        return z_recursive(s - q // 2 - q // 4) + scale * C_CASE_D[i - 1]
    if case == "E":
        return z_recursive(s - q) + 2 * q
    i = s - (2 * q - 5)
    return z_recursive(s - q) + scale * C_CASE_F[i - 1]

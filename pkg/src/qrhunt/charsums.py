"""Short character sums S(p,N), prime weights w_p(M), and the weighted sums S0, S1."""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from .arith import (
    DEFAULT_SEGMENT,
    INT63_MAX,
    is_prime,
    iter_prime_segments,
    kronecker,
    prime_pi,
    primes_upto,
    primorial,
    sieve_segment,
    squarefree_divisors,
)

# short_sum switches from per-term symbols to a multiplicative table at this N
BITMAP_CROSSOVER = 512
# above this |a| the per-prime symbol is computed directly instead of via a period table
_TABLE_LIMIT = 1 << 14


@dataclass(frozen=True)
class SumParams:
    x: int
    M: int
    N: int
    A: float | None = None

    def __post_init__(self):
        if self.x < 3:
            raise ValueError("x must be at least 3")
        if self.M < 1:
            raise ValueError("M must be positive")
        if self.N < 1:
            raise ValueError("N must be positive")
        if self.M > self.x:
            raise ValueError("M must not exceed x (weights need p > M)")
        primorial(self.M)
        if self.A is not None:
            expected = round(math.log(self.x) ** self.A)
            if expected != self.N:
                raise ValueError(f"N={self.N} but round((ln x)^A) = {expected}")

    @classmethod
    def from_A(cls, x: int, M: int, A: float) -> "SumParams":
        return cls(x, M, round(math.log(x) ** A), A)

    @property
    def implied_A(self) -> float:
        """ln N / ln ln x, the exponent for which N = (ln x)^A."""
        return math.log(self.N) / math.log(math.log(self.x))

    def as_dict(self) -> dict:
        d = {"x": self.x, "M": self.M, "N": self.N}
        if self.A is not None:
            d["A"] = self.A
        return d


@dataclass(frozen=True)
class WeightedPrimeRecord:
    p: int
    w: int
    s: int
    logp: float


def _check_odd_prime(p: int) -> None:
    if p < 3 or p % 2 == 0 or not is_prime(p):
        raise ValueError(f"{p} is not an odd prime")


def _smallest_factor_table(N: int) -> np.ndarray:
    spf = np.zeros(N + 1, dtype=np.int64)
    for q in primes_upto(N):
        block = spf[q::q]
        block[block == 0] = q
    return spf


def symbols_upto(p: int, N: int) -> np.ndarray:
    """(n/p) for n = 0..N, built multiplicatively from the prime values."""
    spf = _smallest_factor_table(N)
    chi = np.zeros(N + 1, dtype=np.int64)
    if N >= 1:
        chi[1] = 1
    for n in range(2, N + 1):
        q = int(spf[n])
        chi[n] = kronecker(q, p) if q == n else chi[q] * chi[n // q]
    return chi


def short_sum(p: int, N: int) -> int:
    """S(p,N) = sum of (n/p) over 1 <= n <= N."""
    _check_odd_prime(p)
    if N < 1:
        raise ValueError("N must be positive")
    if N >= BITMAP_CROSSOVER:
        return int(symbols_upto(p, N)[1:].sum())
    return sum(kronecker(n, p) for n in range(1, N + 1))


def prefix_max(p: int, N: int) -> tuple[int, int]:
    """(n*, S(p,n*)) where n* <= N is the first place the prefix sum peaks."""
    _check_odd_prime(p)
    if N < 1:
        raise ValueError("N must be positive")
    best_n, best, running = 0, None, 0
    for n in range(1, N + 1):
        running += kronecker(n, p)
        if best is None or running > best:
            best_n, best = n, running
    return best_n, best


def _check_weight_args(p: int, M: int) -> None:
    _check_odd_prime(p)
    if M < 1:
        raise ValueError("M must be positive")
    if p <= M:
        raise ValueError(f"weight needs p > M, got p={p}, M={M}")


def weight(p: int, M: int) -> int:
    """w_p(M) = prod over primes q <= M of (1 + (q/p))."""
    _check_weight_args(p, M)
    w = 1
    for q in primes_upto(M):
        w *= 1 + kronecker(q, p)
        if w == 0:
            break
    return w


def weight_expanded(p: int, M: int) -> int:
    """w_p(M) via 1 + sum of (d/p) over divisors d > 1 of the primorial."""
    _check_weight_args(p, M)
    return sum(kronecker(d, p) for d in squarefree_divisors(primes_upto(M)))


@lru_cache(maxsize=4096)
def _period_table(a: int) -> np.ndarray:
    # for odd n > 0, (a/n) depends only on n mod 4|a|
    period = 4 * abs(a)
    table = np.array([kronecker(a, r) if r % 2 else 0 for r in range(period)], dtype=np.int64)
    table.flags.writeable = False
    return table


def symbols_many(a: int, primes: np.ndarray) -> np.ndarray:
    """(a/p) for every entry of an array of odd primes."""
    primes = np.asarray(primes, dtype=np.int64)
    if a == 0:
        return np.zeros(primes.shape, dtype=np.int64)
    if abs(a) > _TABLE_LIMIT:
        return np.array([kronecker(a, int(p)) for p in primes], dtype=np.int64)
    return _period_table(a)[primes % (4 * abs(a))]


def weights_many(primes: np.ndarray, M: int) -> np.ndarray:
    w = np.ones(len(primes), dtype=np.int64)
    for q in primes_upto(M):
        w *= 1 + symbols_many(q, primes)
    return w


def short_sums_many(primes: np.ndarray, N: int) -> np.ndarray:
    """S(p,N) for an array of odd primes, all of which must exceed N."""
    primes = np.asarray(primes, dtype=np.int64)
    out = np.zeros(len(primes), dtype=np.int64)
    if len(primes) == 0:
        return out
    if int(primes.min()) <= N or N * len(primes) > 50_000_000:
        return np.array([short_sum(int(p), N) for p in primes], dtype=np.int64)
    spf = _smallest_factor_table(N)
    chi: list[np.ndarray | None] = [None] * (N + 1)
    chi[1] = np.ones(len(primes), dtype=np.int64)
    out += chi[1]
    for n in range(2, N + 1):
        q = int(spf[n])
        chi[n] = symbols_many(q, primes) if q == n else chi[q] * chi[n // q]
        out += chi[n]
    return out


def char_prime_sum(b: int, x: int, segment_size: int = DEFAULT_SEGMENT) -> float:
    """Sum of (b/p) ln p over primes x < p <= 2x, accumulated in ascending p."""
    if b == 0:
        raise ValueError("b must be nonzero")
    if x < 3:
        raise ValueError("x must be at least 3")
    total = 0.0
    for _, _, seg in iter_prime_segments(x, 2 * x, segment_size):
        for p in seg.tolist():
            chi = kronecker(b, p)
            if chi:
                total += chi * math.log(p)
    return total


@dataclass
class WeightedSums:
    S0: float
    S1: float
    support: int
    records: list[WeightedPrimeRecord] = field(default_factory=list)


def _segment_sums(lo: int, hi: int, M: int, N: int, keep: bool) -> WeightedSums:
    primes = sieve_segment(lo, hi)
    w = weights_many(primes, M)
    mask = w > 0
    ps, ws = primes[mask], w[mask]
    ss = short_sums_many(ps, N)
    s0 = s1 = 0.0
    records = []
    for p, wp, sp in zip(ps.tolist(), ws.tolist(), ss.tolist()):
        lp = math.log(p)
        s0 += wp * lp
        s1 += wp * sp * lp
        if keep:
            records.append(WeightedPrimeRecord(p, wp, sp, lp))
    return WeightedSums(s0, s1, len(ps), records)


def segment_bounds(lo: int, hi: int, segment_size: int) -> list[tuple[int, int]]:
    return [(a, min(a + segment_size, hi)) for a in range(lo, hi, segment_size)]


def map_segments(fn, bounds, args, workers: int = 1):
    """Apply fn(lo, hi, *args) to every segment, returning results in segment order."""
    if workers <= 1 or len(bounds) <= 1:
        return [fn(lo, hi, *args) for lo, hi in bounds]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        futures = [pool.submit(fn, lo, hi, *args) for lo, hi in bounds]
        return [f.result() for f in futures]


def weighted_sums_direct(
    params: SumParams,
    keep_records: bool = False,
    workers: int = 1,
    segment_size: int = DEFAULT_SEGMENT,
) -> WeightedSums:
    """S0 = sum w_p(M) ln p and S1 = sum w_p(M) S(p,N) ln p over primes in (x, 2x].

    Each segment accumulates in ascending p and partial sums are merged in
    segment order, so the result does not depend on the worker count.
    """
    if 2 * params.x > INT63_MAX:
        raise ValueError("2x exceeds the 63-bit range")
    bounds = segment_bounds(params.x, 2 * params.x, segment_size)
    parts = map_segments(_segment_sums, bounds, (params.M, params.N, keep_records), workers)
    total = WeightedSums(0.0, 0.0, 0)
    for part in parts:
        total.S0 += part.S0
        total.S1 += part.S1
        total.support += part.support
        total.records.extend(part.records)
    return total


def weighted_s1_via_rtable(params: SumParams, table) -> float:
    """S1 rebuilt as sum over b of r(b) * sum_{x<p<=2x} (b/p) ln p."""
    if (table.N, table.M) != (params.N, params.M) and table.counts:
        raise ValueError("table was built for different (N, M)")
    return sum(r * char_prime_sum(b, params.x) for b, r in table.counts.items())


def support_size_bound(M: int) -> int:
    """2^pi(M), the value w_p(M) takes on its support."""
    return 1 << prime_pi(M)

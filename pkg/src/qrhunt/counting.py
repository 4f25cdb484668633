"""The pair count r(c) = #{(a, d): a <= N, d | P(M), a*d = c*y^2} and smooth numbers."""

from __future__ import annotations

import csv
import io
import json
import math
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .arith import (
    INT63_MAX,
    RangeError,
    is_squarefree,
    prime_pi,
    primes_upto,
    primorial,
    squarefree_divisors,
)


@dataclass(frozen=True)
class PairWitness:
    a: int
    d: int
    y: int

    def in_bucket(self, c: int) -> bool:
        return self.y >= 1 and self.a * self.d == c * self.y * self.y


@dataclass
class RTable:
    N: int
    M: int
    counts: dict[int, int] = field(default_factory=dict)

    def __post_init__(self):
        self.counts = dict(sorted(self.counts.items()))

    def __getitem__(self, b: int) -> int:
        return self.counts.get(b, 0)

    def total(self) -> int:
        return sum(self.counts.values())

    def to_json(self) -> str:
        return json.dumps({"N": self.N, "M": self.M, "counts": {str(b): r for b, r in self.counts.items()}})

    @classmethod
    def from_json(cls, text: str) -> "RTable":
        obj = json.loads(text)
        return cls(obj["N"], obj["M"], {int(b): r for b, r in obj["counts"].items()})

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["b", "r"])
        w.writerows(self.counts.items())
        return buf.getvalue()


def _divisors_of_primorial(M: int) -> list[int]:
    return squarefree_divisors(primes_upto(M))


def _square_root_or_minus_one(q: np.ndarray) -> np.ndarray:
    """Exact integer square roots of q where q is a perfect square, else -1."""
    if q.size and int(q.max()) >= 1 << 52:
        roots = [math.isqrt(int(v)) for v in q]
        return np.array([r if r * r == v else -1 for r, v in zip(roots, q.tolist())], dtype=np.int64)
    r = np.rint(np.sqrt(q.astype(np.float64))).astype(np.int64)
    return np.where(r * r == q, r, -1)


def bucket_witnesses(c: int, N: int, M: int) -> list[PairWitness]:
    """Every (a, d, y) with 1 <= a <= N, d | P(M) and a*d = c*y^2, sorted by (a, d)."""
    if c < 1 or not is_squarefree(c):
        raise ValueError(f"c={c} must be a positive squarefree integer")
    if N < 1:
        return []
    a = np.arange(1, N + 1, dtype=np.int64)
    out = []
    for d in _divisors_of_primorial(M):
        prod = a * d
        hit = prod % c == 0
        roots = _square_root_or_minus_one(prod[hit] // c)
        for av, y in zip(a[hit][roots > 0].tolist(), roots[roots > 0].tolist()):
            out.append(PairWitness(av, d, y))
    out.sort(key=lambda w: (w.a, w.d))
    return out


def r_direct(c: int, N: int, M: int) -> int:
    """Brute-force r(c): test every pair (a, d) for a*d = c*y^2."""
    if c < 1 or not is_squarefree(c):
        raise ValueError(f"c={c} must be a positive squarefree integer")
    if N < 1:
        return 0
    a = np.arange(1, N + 1, dtype=np.int64)
    total = 0
    for d in _divisors_of_primorial(M):
        prod = a * d
        q = prod[prod % c == 0] // c
        total += int((_square_root_or_minus_one(q) > 0).sum())
    return total


def r_direct_prefix(c: int, N: int, M: int) -> np.ndarray:
    """out[n] = r_direct(c, n, M) for every n in 0..N, from one brute-force pass."""
    per_a = np.zeros(N + 1, dtype=np.int64)
    for w in bucket_witnesses(c, N, M):
        per_a[w.a] += 1
    return np.cumsum(per_a)


def squarefree_parts_upto(N: int) -> np.ndarray:
    """Squarefree part of every n in 0..N (entry 0 is unused)."""
    core = np.arange(N + 1, dtype=np.int64)
    for q in primes_upto(math.isqrt(N)):
        q2 = q * q
        idx = np.arange(q2, N + 1, q2)
        while idx.size:
            core[idx] //= q2
            idx = idx[core[idx] % q2 == 0]
    return core


def _rtable_chunk(lo: int, hi: int, M: int) -> dict[int, int]:
    # squarefree part of a*d with d squarefree is s*d / gcd(s, d)^2, s = core(a)
    core = squarefree_parts_upto(hi)[lo:hi + 1]
    counts: Counter = Counter()
    for d in _divisors_of_primorial(M):
        g = np.gcd(core, d)
        keys, n = np.unique(core // g * (d // g), return_counts=True)
        for k, v in zip(keys.tolist(), n.tolist()):
            counts[k] += v
    return dict(counts)


def build_rtable(N: int, M: int, workers: int = 1, chunk: int = 1 << 16) -> RTable:
    """Tabulate r(b) for every b by bucketing each pair (a, d) under core(a*d)."""
    if N < 1:
        return RTable(max(N, 0), M)
    P = primorial(M)
    if N * P > INT63_MAX:
        raise RangeError(f"N*P(M) = {N * P} exceeds the 63-bit range")
    bounds = [(lo, min(lo + chunk - 1, N)) for lo in range(1, N + 1, chunk)]
    if workers > 1 and len(bounds) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(_rtable_chunk, *zip(*bounds), [M] * len(bounds)))
    else:
        parts = [_rtable_chunk(lo, hi, M) for lo, hi in bounds]
    merged: Counter = Counter()
    for part in parts:
        merged.update(part)
    return RTable(N, M, dict(merged))


def _check_pair(pair: PairWitness, N: int, M: int) -> None:
    if not 1 <= pair.a <= N:
        raise ValueError(f"a={pair.a} outside [1, {N}]")
    if primorial(M) % pair.d:
        raise ValueError(f"d={pair.d} does not divide P({M})")


def bijection_pm(c: int, pair: PairWitness, N: int, M: int) -> PairWitness:
    """Swap a witness between bucket 1 and bucket c via d -> c*d/gcd(c,d)^2.

    Requires c | P(M). Bucket-1 input (a*d = y^2) maps into bucket c with
    y' = y/gcd(c,d); bucket-c input maps back with y' = c*y/gcd(c,d). The
    map is an involution on the d coordinate and keeps a fixed.
    """
    if c < 1 or primorial(M) % c:
        raise ValueError(f"c={c} must divide P({M})")
    _check_pair(pair, N, M)
    g = math.gcd(c, pair.d)
    d_new = c * pair.d // (g * g)
    if pair.in_bucket(1):
        return PairWitness(pair.a, d_new, pair.y // g)
    if pair.in_bucket(c):
        return PairWitness(pair.a, d_new, c * pair.y // g)
    raise ValueError(f"{pair} lies in neither bucket 1 nor bucket {c}")


def split_smooth(c: int, M: int) -> tuple[int, int]:
    """c = s*r with s the P(M)-part of squarefree c and r free of primes <= M."""
    s = math.gcd(c, primorial(M))
    return s, c // s


def triple_decompose(c: int, pair: PairWitness, M: int) -> tuple[int, int, int]:
    """Map a bucket-c witness (c not dividing P(M)) to (d1, s1, z) with d1*s1*z^2 = a/r."""
    if c < 1 or not is_squarefree(c):
        raise ValueError(f"c={c} must be a positive squarefree integer")
    s, r = split_smooth(c, M)
    if r == 1:
        raise ValueError(f"c={c} divides P({M}); use bijection_pm instead")
    if primorial(M) % pair.d or not pair.in_bucket(c):
        raise ValueError(f"{pair} is not a witness for bucket {c}")
    g = math.gcd(pair.d, s)
    d1, s1 = pair.d // g, s // g
    z, rem = divmod(pair.y, d1)
    assert rem == 0 and d1 * s1 * z * z * r == pair.a
    return d1, s1, z


def triple_recompose(d1: int, s1: int, z: int, c: int, M: int) -> tuple[int, int]:
    """Inverse of triple_decompose: a = r*s1*d1*z^2, d = s*d1/s1."""
    s, r = split_smooth(c, M)
    return r * s1 * d1 * z * z, s * d1 // s1


def largest_prime_factors(N: int) -> np.ndarray:
    """Largest prime factor of each n in 0..N, with 1 for n <= 1."""
    lpf = np.ones(N + 1, dtype=np.int64)
    for q in primes_upto(N):
        lpf[q::q] = q
    return lpf


def psi_smooth(N: int, M: int) -> int:
    """Psi(N, M): how many n in [1, N] have no prime factor above M."""
    if N < 1:
        return 0
    return int((largest_prime_factors(N)[1:] <= M).sum())


def divisor_summatory(n: int) -> int:
    """sum_{k <= n} d(k), computed as sum_{j <= n} floor(n/j)."""
    return sum(n // j for j in range(1, n + 1))


def rtable_mass(N: int, M: int) -> int:
    return max(N, 0) << prime_pi(M)

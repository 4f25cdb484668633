"""Exact integer arithmetic: Kronecker symbols, squarefree parts, primes."""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

INT63_MAX = (1 << 63) - 1
DEFAULT_SEGMENT = 1 << 18

# Strong-pseudoprime bases; deterministic for every n < 3.3e24, which covers 64 bits.
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


class RangeError(ValueError):
    """An exact computation would leave the supported 63-bit range."""


def checked(value: int, what: str = "value") -> int:
    if abs(value) > INT63_MAX:
        raise RangeError(f"{what} = {value} exceeds the 63-bit range")
    return value


def kronecker(a: int, n: int) -> int:
    """Kronecker-Jacobi symbol (a/n) for arbitrary integers.

    Binary reciprocity algorithm, never factors. (a/0) is 1 for a = +-1
    and 0 otherwise; (a/-1) is -1 exactly when a < 0; (a/2) follows
    a mod 8.
    """
    if n == 0:
        return 1 if a in (1, -1) else 0
    result = 1
    if n < 0:
        n = -n
        if a < 0:
            result = -1
    # strip powers of two from n using the (a/2) rule
    if n % 2 == 0:
        if a % 2 == 0:
            return 0
        v = (n & -n).bit_length() - 1
        n >>= v
        if v & 1 and a % 8 in (3, 5):
            result = -result
    # n is now odd and positive: Jacobi symbol
    a %= n
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                result = -result
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            result = -result
        a %= n
    return result if n == 1 else 0


def legendre_bruteforce(a: int, p: int) -> int:
    """(a/p) for an odd prime p by scanning the squares mod p."""
    r = a % p
    if r == 0:
        return 0
    return 1 if r in {k * k % p for k in range(1, p)} else -1


@dataclass(frozen=True)
class SquarefreeDecomposition:
    b: int
    c: int

    def __post_init__(self):
        if self.b == 0 or self.c < 1:
            raise ValueError(f"invalid decomposition b={self.b}, c={self.c}")


def _is_square(n: int) -> bool:
    return n >= 0 and math.isqrt(n) ** 2 == n


def is_squarefree(n: int) -> bool:
    if n == 0:
        return False
    return squarefree_decompose(n).c == 1


def squarefree_decompose(a: int) -> SquarefreeDecomposition:
    """Write a = b*c**2 with b squarefree (carrying the sign of a) and c >= 1.

    Trial division by every prime up to the cube root; what remains has at
    most two prime factors, so it is either a prime square or squarefree.
    """
    if a == 0:
        raise ValueError("cannot decompose 0")
    sign = -1 if a < 0 else 1
    m = abs(a)
    b, c = 1, 1
    q = 2
    while q * q * q <= m:
        if m % q == 0:
            e = 0
            while m % q == 0:
                m //= q
                e += 1
            c *= q ** (e // 2)
            if e & 1:
                b *= q
        q += 1 if q == 2 else 2
    if m > 1:
        r = math.isqrt(m)
        if r * r == m:
            c *= r
        else:
            b *= m
    return SquarefreeDecomposition(sign * b, c)


def squarefree_part(a: int) -> int:
    return squarefree_decompose(a).b


@dataclass(frozen=True)
class FundamentalDiscriminant:
    value: int

    def __post_init__(self):
        v = self.value
        if v % 4 == 1 and is_squarefree(v):
            return
        if v % 4 == 0 and (v // 4) % 4 in (2, 3) and is_squarefree(v // 4):
            return
        raise ValueError(f"{v} is not a fundamental discriminant")

    @property
    def modulus(self) -> int:
        return abs(self.value)


def fundamental_discriminant(b: int) -> FundamentalDiscriminant:
    """b* = b if b = 1 (mod 4), else 4b; b must be squarefree and nonzero."""
    if b == 0 or not is_squarefree(b):
        raise ValueError(f"{b} is not a nonzero squarefree integer")
    # Python's % already lands in {0,1,2,3}, so -3 counts as 1 mod 4
    return FundamentalDiscriminant(b if b % 4 == 1 else 4 * b)


def character_factorization_check(a: int, p: int) -> bool:
    """Check (a/p) = chi_{0,c}(p) * (b*/p) for a = b*c**2 and an odd prime p."""
    if p % 2 == 0 or not is_prime(p):
        raise ValueError(f"{p} is not an odd prime")
    dec = squarefree_decompose(a)
    principal = 1 if math.gcd(dec.c, p) == 1 else 0
    chi_b = kronecker(fundamental_discriminant(dec.b).value, p)
    return principal * chi_b == kronecker(a, p)


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin, valid for every n < 2**64."""
    if n < 2:
        return False
    for q in _MR_BASES:
        if n % q == 0:
            return n == q
    if n >= 1 << 64:
        raise RangeError(f"{n} is beyond the supported primality range")
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


@lru_cache(maxsize=32)
def _small_primes(limit: int) -> np.ndarray:
    if limit < 2:
        return np.zeros(0, dtype=np.int64)
    sieve = np.ones(limit + 1, dtype=bool)
    sieve[:2] = False
    for q in range(2, math.isqrt(limit) + 1):
        if sieve[q]:
            sieve[q * q :: q] = False
    primes = np.flatnonzero(sieve).astype(np.int64)
    primes.flags.writeable = False
    return primes


def primes_upto(limit: int) -> list[int]:
    return _small_primes(limit).tolist()


def iter_prime_segments(lo: int, hi: int, segment_size: int = DEFAULT_SEGMENT):
    """Yield (seg_lo, seg_hi, primes) for consecutive half-open windows covering (lo, hi].

    Memory per step is O(segment_size) plus the base primes up to sqrt(hi).
    """
    if lo > hi:
        raise ValueError(f"empty range: lo={lo} > hi={hi}")
    if segment_size < 1:
        raise ValueError("segment_size must be positive")
    checked(hi, "hi")
    base = _small_primes(math.isqrt(hi))
    seg_lo = max(lo, 0)
    while seg_lo < hi:
        seg_hi = min(seg_lo + segment_size, hi)
        yield seg_lo, seg_hi, sieve_segment(seg_lo, seg_hi, base)
        seg_lo = seg_hi


def sieve_segment(lo: int, hi: int, base: np.ndarray | None = None) -> np.ndarray:
    """Primes in (lo, hi] as an ascending int64 array."""
    if base is None:
        base = _small_primes(math.isqrt(hi))
    start = lo + 1
    flags = np.ones(hi - lo, dtype=bool)  # flags[i] <-> start + i
    if start <= 1:
        flags[: 2 - start] = False
    for q in base.tolist():
        if q * q > hi:
            break
        first = max(q * q, -(-start // q) * q)
        flags[first - start :: q] = False
    return np.flatnonzero(flags).astype(np.int64) + start


@dataclass(frozen=True)
class PrimeSegment:
    lo: int
    hi: int
    primes: list[int]

    def __len__(self):
        return len(self.primes)


def primes_in_range(lo: int, hi: int, segment_size: int = DEFAULT_SEGMENT) -> PrimeSegment:
    """All primes p with lo < p <= hi, via a segmented sieve."""
    if lo < 0:
        raise ValueError("lo must be nonnegative")
    out: list[int] = []
    for _, _, seg in iter_prime_segments(lo, hi, segment_size):
        out.extend(seg.tolist())
    return PrimeSegment(lo, hi, out)


def prime_pi(M: int) -> int:
    return len(_small_primes(M)) if M >= 2 else 0


def primorial(M: int) -> int:
    """Product of the primes <= M, refusing results beyond 63 bits."""
    if M < 1:
        raise ValueError("M must be positive")
    P = 1
    for q in primes_upto(M):
        P = checked(P * q, f"primorial({M})")
    return P


def squarefree_divisors(primes) -> list[int]:
    """All products of subsets of the given distinct primes, ascending."""
    divs = [1]
    for q in primes:
        divs += [d * q for d in divs]
    return sorted(divs)

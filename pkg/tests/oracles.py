"""Independent brute-force oracles. Nothing here imports qrhunt."""

import math
from functools import lru_cache


def trial_prime(n):
    if n < 2:
        return False
    return all(n % k for k in range(2, math.isqrt(n) + 1))


def trial_primes(lo, hi):
    return [n for n in range(lo + 1, hi + 1) if trial_prime(n)]


@lru_cache(maxsize=None)
def residues(p):
    return frozenset(k * k % p for k in range(1, p))


def legendre(a, p):
    r = a % p
    if r == 0:
        return 0
    return 1 if r in residues(p) else -1


def factorize(n):
    out = {}
    k = 2
    while k * k <= n:
        while n % k == 0:
            out[k] = out.get(k, 0) + 1
            n //= k
        k += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def brute_squarefree(a):
    b, c = (-1 if a < 0 else 1), 1
    for q, e in factorize(abs(a)).items():
        c *= q ** (e // 2)
        b *= q ** (e % 2)
    return b, c


def brute_psi(N, M):
    return sum(1 for n in range(1, N + 1) if all(q <= M for q in factorize(n)))


def num_divisors(n):
    return sum(1 for k in range(1, n + 1) if n % k == 0)


def pairs(N, M):
    """Every (a, d) with 1 <= a <= N and d a squarefree product of primes <= M."""
    ps = trial_primes(0, M)
    ds = [1]
    for q in ps:
        ds += [d * q for d in ds]
    return [(a, d) for a in range(1, N + 1) for d in sorted(ds)]

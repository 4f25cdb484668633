"""Prime hunts, the S1/S0 ratio experiment and the residue grid statistic."""

from __future__ import annotations

import math
import time
from dataclasses import asdict, dataclass, field

from .arith import DEFAULT_SEGMENT, is_prime, kronecker, sieve_segment
from .charsums import (
    SumParams,
    map_segments,
    segment_bounds,
    short_sum,
    short_sums_many,
    support_size_bound,
    weighted_sums_direct,
    weights_many,
)
from .counting import psi_smooth, r_direct


class CheckFailed(AssertionError):
    """A runtime certificate did not hold."""


@dataclass(frozen=True)
class Witness:
    p: int
    w: int
    s: int
    normalized: float


@dataclass
class HuntResult:
    params: SumParams
    witnesses: list[Witness]
    guaranteed_bound: int
    elapsed: float = 0.0
    scanned_to: int = 0

    def as_dict(self) -> dict:
        return {
            "guaranteed_bound": self.guaranteed_bound,
            "implied_A": self.params.implied_A,
            "scanned_to": self.scanned_to,
            "witness_count": len(self.witnesses),
            "witnesses": [asdict(w) for w in self.witnesses],
            "elapsed": self.elapsed,
        }


def _hunt_segment(lo: int, hi: int, M: int, N: int, limit: int | None) -> list[tuple[int, int, int]]:
    primes = sieve_segment(lo, hi)
    w = weights_many(primes, M)
    ps, ws = primes[w > 0], w[w > 0]
    if limit is not None:
        ps, ws = ps[:limit], ws[:limit]
    ss = short_sums_many(ps, N)
    return list(zip(ps.tolist(), ws.tolist(), ss.tolist()))


def hunt(
    x: int,
    M: int,
    N: int,
    limit: int | None = 10,
    workers: int = 1,
    segment_size: int = DEFAULT_SEGMENT,
) -> HuntResult:
    """Collect the first `limit` primes p in (x, 2x] with w_p(M) > 0.

    On that support every prime q <= M is a residue, so every M-smooth
    n <= N is too and S(p,N) >= 2*Psi(N,M) - N. That bound is checked for
    each witness. Segments are scanned in ascending order in batches of
    `workers`; the scan stops after the batch that fills the quota.
    """
    params = SumParams(x, M, N)
    if x < M * M:
        raise ValueError(f"hunt needs x >= M^2, got x={x}, M={M}")
    if N >= x:
        raise ValueError(f"hunt needs N < x, got N={N}, x={x}")
    if limit is not None and limit < 1:
        raise ValueError("limit must be positive")
    start = time.perf_counter()
    bound = 2 * psi_smooth(N, M) - N
    full = support_size_bound(M)
    bounds = segment_bounds(x, 2 * x, segment_size)
    found: list[Witness] = []
    scanned_to = x
    batch = max(workers, 1)
    for i in range(0, len(bounds), batch):
        chunk = bounds[i : i + batch]
        for (_, hi), part in zip(chunk, map_segments(_hunt_segment, chunk, (M, N, limit), workers)):
            for p, w, s in part:
                if limit is not None and len(found) >= limit:
                    break
                if w != full or s < bound:
                    raise CheckFailed(f"witness p={p}: w={w}, S={s}, bound={bound}")
                found.append(Witness(p, w, s, s / N))
            scanned_to = hi
            if limit is not None and len(found) >= limit:
                break
        if limit is not None and len(found) >= limit:
            break
    return HuntResult(params, found, bound, time.perf_counter() - start, scanned_to)


def ratio_experiment(x: int, M: int, N: int, workers: int = 1, segment_size: int = DEFAULT_SEGMENT) -> dict:
    """S0, S1, S1/S0 (None on empty support), r(1) and the support size."""
    params = SumParams(x, M, N)
    sums = weighted_sums_direct(params, workers=workers, segment_size=segment_size)
    r1 = r_direct(1, N, M)
    ratio = sums.S1 / sums.S0 if sums.S0 > 0 else None
    return {
        "S0": sums.S0,
        "S1": sums.S1,
        "ratio": ratio,
        "r1": r1,
        "ratio_over_r1": ratio / r1 if ratio is not None else None,
        "support_count": sums.support,
        "implied_A": params.implied_A,
    }


@dataclass
class GridResult:
    p: int
    z: int
    grid_sum: int
    density: float
    implied_A: float = field(default=0.0)

    def as_dict(self) -> dict:
        return asdict(self)


def grid_experiment(p: int, z: int) -> GridResult:
    """Sum of (u+v / p) over X = {1..z}, Y = {0, z, ..., z(z-1)}, checked against S(p, z^2).

    X + Y tiles 1..z^2 exactly once, and since z^2 < p no entry is 0 mod p,
    so the residue indicator is (1 + (n/p))/2 on the whole grid.
    """
    if z < 1:
        raise ValueError("z must be positive")
    if z * z >= p:
        raise ValueError(f"need z^2 < p, got z={z}, p={p}")
    if not is_prime(p) or p == 2:
        raise ValueError(f"{p} is not an odd prime")
    direct = sum(kronecker(u + v, p) for u in range(1, z + 1) for v in range(0, z * z, z))
    via_sum = short_sum(p, z * z)
    if direct != via_sum:
        raise CheckFailed(f"grid sum {direct} != S(p, z^2) = {via_sum}")
    density = 0.5 + direct / (2 * z * z)
    implied = 2 * math.log(z) / math.log(math.log(p)) if z > 1 else 0.0
    return GridResult(p, z, direct, density, implied)

"""Find primes p in (x, 2x] where every q <= M is a residue, and report S(p, N).

    python3 scripts/run_hunt.py --x 1000000 --m 13 --n 50 --limit 20
"""

import argparse

from qrhunt.experiments import hunt
from qrhunt.report import ExperimentReport


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--x", type=int, default=10**6)
    ap.add_argument("--m", type=int, default=13)
    ap.add_argument("--n", type=int, default=50)
    ap.add_argument("--limit", type=int, default=20)
    ap.add_argument("--workers", type=int, default=1)
    ap.add_argument("--format", choices=["text", "json", "csv"], default="text")
    args = ap.parse_args()

    res = hunt(args.x, args.m, args.n, limit=args.limit, workers=args.workers)
    rep = ExperimentReport("hunt", res.params.as_dict(), res.as_dict())
    print(rep.render(args.format), end="")


if __name__ == "__main__":
    main()

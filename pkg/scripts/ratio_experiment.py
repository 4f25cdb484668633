"""Compare the weighted mean S1/S0 of S(p, N) against r(1) for a few sizes of x.

    python3 scripts/ratio_experiment.py --m 7 --n 30 --xs 1e5 1e6 1e7
"""

import argparse

from qrhunt.experiments import ratio_experiment
from qrhunt.report import fmt_number


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--m", type=int, default=7)
    ap.add_argument("--n", type=int, default=30)
    ap.add_argument("--xs", type=float, nargs="+", default=[1e5, 1e6, 1e7])
    ap.add_argument("--workers", type=int, default=1)
    args = ap.parse_args()

    cols = ["x", "support_count", "S0", "S1", "ratio", "r1", "ratio_over_r1"]
    print(",".join(cols))
    for x in args.xs:
        out = ratio_experiment(int(x), args.m, args.n, workers=args.workers)
        out["x"] = int(x)
        print(",".join(fmt_number(out[c]) if out[c] is not None else "" for c in cols))


if __name__ == "__main__":
    main()

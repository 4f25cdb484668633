"""Sweep x - ((2x)^b - x^b)/b against both explicit lower bounds and print the tightest rows.

    python3 scripts/lemma6_sweep.py --nx 200 --nbeta 50
"""

import argparse

from qrhunt.analytic import lemma6_sweep, remark_sweep


def summarize(name, rows, top):
    bad = [r for r in rows if r[2] < r[3]]
    print(f"{name}: {len(rows)} points, {len(bad)} violations")
    # smallest relative margin lhs/rhs
    for x, beta, lhs, rhs, _ in sorted(rows, key=lambda r: r[2] / r[3])[:top]:
        print(f"  x={x:.6g} beta={beta:.6f} lhs={lhs:.6g} rhs={rhs:.6g} lhs/rhs={lhs / rhs:.4f}")


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--nx", type=int, default=200)
    ap.add_argument("--nbeta", type=int, default=50)
    ap.add_argument("--xmax", type=float, default=1e8)
    ap.add_argument("--top", type=int, default=5)
    args = ap.parse_args()

    summarize("ln x bound", lemma6_sweep(args.nx, args.nbeta, args.xmax), args.top)
    summarize("beta >= 1/2 bound", remark_sweep(args.nx, args.nbeta, args.xmax), args.top)


if __name__ == "__main__":
    main()

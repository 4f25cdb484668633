"""Psi(N, M) against the rho(u) N prediction, showing how slowly the ratio settles for small M.

    python3 scripts/smooth_density.py --u 3
"""

import argparse
import math

from qrhunt.analytic import smooth_density_report


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--u", type=float, default=3.0, help="target u = ln N / ln M")
    ap.add_argument("--ns", type=float, nargs="+", default=[1e3, 1e4, 1e5, 1e6, 1e7])
    args = ap.parse_args()

    print("N,M,u,psi,rho_prediction,ratio")
    for n in args.ns:
        N = int(n)
        M = max(2, round(N ** (1 / args.u)))
        rep = smooth_density_report(1, N, M)
        print(f"{N},{M},{rep['u']:.4f},{rep['psi']},{rep['rho_prediction']:.2f},{rep['ratio']:.4f}")
    # for reference, the A = 3, N = 10^4 case
    rep = smooth_density_report(3, 10**4, 21)
    print(f"# N=10^4, M=21: u={rep['u']:.4f}, ratio={rep['ratio']:.4f}, ln ln N = {math.log(math.log(1e4)):.3f}")


if __name__ == "__main__":
    main()

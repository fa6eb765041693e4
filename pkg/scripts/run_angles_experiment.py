"""
Canonical-angle experiment: sines between computed and exact leading
singular subspaces versus their a-priori bounds, for q = 0, 1, 2.

    python3 scripts/run_angles_experiment.py [--out results/angles] [--seeds 100]
"""
import argparse
from pathlib import Path

import numpy as np

from randsvd import GapSpec, gap_matrix, oracle_svd
from randsvd.experiments import angle_trial


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[1])
    ap.add_argument("--out", type=Path, default=Path("results/angles"))
    ap.add_argument("--seeds", type=int, default=100)
    ap.add_argument("--gap", type=float, default=2.0)
    ap.add_argument("--k", type=int, default=25)
    ap.add_argument("--p", type=int, default=5)
    ap.add_argument("--alg", default="power", choices=("basic", "power", "ortho"))
    args = ap.parse_args()
    args.out.mkdir(parents=True, exist_ok=True)

    spec = GapSpec(gap=args.gap)
    A, oracle = gap_matrix(spec), oracle_svd(spec)
    lines = ["q,j,mean_sin_theta,max_sin_theta,bound_theta,mean_sin_nu,bound_nu"]
    for q in (0, 1, 2):
        reps = [angle_trial(A, oracle, args.alg, args.k, args.p, q, s) for s in range(args.seeds)]
        th = np.array([r.sin_theta for r in reps])
        nu = np.array([r.sin_nu for r in reps])
        bt = np.array([r.bound_theta for r in reps])
        bn = np.array([r.bound_nu for r in reps])
        within = np.mean(np.all(th <= bt, axis=1))
        print(f"q={q}: runs within bound {within:.2f}; mean sin theta_1..5 = "
              + " ".join(f"{v:.2e}" for v in th.mean(axis=0)[:5]))
        for j in range(args.k):
            lines.append(f"{q},{j + 1},{th[:, j].mean():.6g},{th[:, j].max():.6g},{np.median(bt[:, j]):.6g},"
                         f"{nu[:, j].mean():.6g},{np.median(bn[:, j]):.6g}")
    (args.out / "angles_summary.csv").write_text("\n".join(lines) + "\n")
    print(f"wrote {args.out / 'angles_summary.csv'}")


if __name__ == "__main__":
    main()

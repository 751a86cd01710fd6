"""Greedy add and rewire trajectories on hyperrings and random hypergraphs."""

import argparse

from hyperconn import generators as gen
from hyperconn.io import write_csv
from hyperconn.rewiring import rewire


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--steps", type=int, default=10)
    ap.add_argument("--out", default="results/rewiring.csv")
    args = ap.parse_args()
    start = {
        "hyperring12": gen.hyperring(12),
        "hyperring20": gen.hyperring(20),
        "random20": gen.random_uniform(20, 3, 30, seed=1),
    }
    rows = []
    for name, G in start.items():
        for mode in ("add", "rewire"):
            _, rep = rewire(G, args.steps, mode)
            traj = rep.trajectory()
            rows += [[name, mode, k, a] for k, a in traj]
            print(f"{name:12s} {mode:6s} " + " ".join(f"{a:.3f}" for _, a in traj))
    write_csv(args.out, ["start", "mode", "step", "a"], rows)


if __name__ == "__main__":
    main()

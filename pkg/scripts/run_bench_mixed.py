"""Pre- vs post-mix diamond error for mixed synthesis; writes a CSV and prints the log-log slope.

    python3 scripts/run_bench_mixed.py --qubits 1 --out bench_mixed.csv
"""

from __future__ import annotations

import argparse
import json

from tcompile.bench import bench_mixed, mixed_slope, to_csv


def main() -> None:
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--qubits", default="1")
    p.add_argument("--epsilons", default="0.0316227766,1e-2,0.00316227766,1e-3")
    p.add_argument("--candidates", type=int, default=None, help="M (default 2 * 4^n)")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--out", default="bench_mixed.csv")
    a = p.parse_args()

    rows = bench_mixed([int(q) for q in a.qubits.split(",")], [float(e) for e in a.epsilons.split(",")],
                       a.seed, a.candidates, a.workers)
    with open(a.out, "w") as fh:
        fh.write(to_csv(rows))
    for r in rows:
        print(f"n={r.n} eps={r.eps:.3g} pre={r.pre:.3e} post={r.post:.3e} ratio={r.ratio:.3f}")
    print(json.dumps({"slope": mixed_slope(rows)}))


if __name__ == "__main__":
    main()

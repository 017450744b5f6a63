"""T-count sweep against log2(1/eps); writes a CSV and prints fitted slopes.

    python3 scripts/run_bench_unitary.py --qubits 1,2 --trials 10 --out bench_unitary.csv
"""

from __future__ import annotations

import argparse
import json

from tcompile.bench import bench_unitary, bench_zrot, slopes, to_csv
from tcompile.config import BenchConfig


def main() -> None:
    cfg = BenchConfig()
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--qubits", default=",".join(map(str, cfg.qubits)))
    p.add_argument("--epsilons", default=",".join(map(str, cfg.epsilons)))
    p.add_argument("--trials", type=int, default=cfg.trials)
    p.add_argument("--seed", type=int, default=cfg.seed)
    p.add_argument("--workers", type=int, default=cfg.workers)
    p.add_argument("--zrot", action="store_true", help="add a Z-rotation sweep")
    p.add_argument("--out", default="bench_unitary.csv")
    a = p.parse_args()
    cfg = BenchConfig([int(q) for q in a.qubits.split(",") if q], [float(e) for e in a.epsilons.split(",")],
                      a.trials, a.seed, a.workers)

    zrows = bench_zrot(cfg.epsilons, cfg.trials, cfg.seed, cfg.workers) if a.zrot else []
    urows = bench_unitary(cfg.qubits, cfg.epsilons, cfg.trials, cfg.seed, cfg.workers)
    with open(a.out, "w") as fh:
        fh.write(to_csv(zrows + urows))
    summary = {"slopes": slopes(urows), "violations": sum(not r.ok for r in zrows + urows)}
    if zrows:
        summary["zrot_slope"] = slopes(zrows).get(1)
    print(json.dumps(summary, indent=2))


if __name__ == "__main__":
    main()

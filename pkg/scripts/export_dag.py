"""Export the dependency DAG of the loop-equation solve, with timings from the correlator engine.

    python3 scripts/export_dag.py --lmax 6 --out results/dag.json
"""

import argparse
import json
import time
from dataclasses import dataclass
from pathlib import Path

from gbe.loops import HierarchyStore, jet_dag, resolvent_expansion


@dataclass
class DagConfig:
    lmax: int = 6
    engine: str = "jet"        # "jet" or "correlator"
    out: str = "results/dag.json"


def main(cfg: DagConfig):
    t = time.time()
    if cfg.engine == "jet":
        dag = jet_dag(cfg.lmax)
    else:
        store = HierarchyStore()
        resolvent_expansion(cfg.lmax, method="correlator", store=store)
        dag = store.export_dag()
    Path(cfg.out).parent.mkdir(parents=True, exist_ok=True)
    with open(cfg.out, "w") as fh:
        json.dump(dag, fh, indent=1)
    print(f"{len(dag['nodes'])} nodes, {len(dag['edges'])} edges ({time.time() - t:.2f}s); wrote {cfg.out}")


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--lmax", type=int, default=DagConfig.lmax)
    ap.add_argument("--engine", choices=("jet", "correlator"), default=DagConfig.engine)
    ap.add_argument("--out", default=DagConfig.out)
    a = ap.parse_args()
    main(DagConfig(a.lmax, a.engine, a.out))

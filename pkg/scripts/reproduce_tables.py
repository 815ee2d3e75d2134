"""Recompute the resolvent, moment and density tables and write them as LaTeX and JSON.

    python3 scripts/reproduce_tables.py --lmax 10 --outdir results/tables
"""

import argparse
import json
import time
from dataclasses import asdict, dataclass
from pathlib import Path

from gbe import reference
from gbe.density import density_from_resolvent
from gbe.loops import resolvent_expansion
from gbe.moments import display_contents, moment_polynomial


@dataclass
class TablesConfig:
    lmax: int = 10              # moments up to m_{2 lmax}
    density_lmax: int = 6
    outdir: str = "results/tables"


def main(cfg: TablesConfig):
    out = Path(cfg.outdir)
    out.mkdir(parents=True, exist_ok=True)
    t = time.time()
    ws = resolvent_expansion(cfg.lmax)
    print(f"W_1^0..W_1^{cfg.lmax} in {time.time() - t:.2f}s")

    with open(out / "resolvent.tex", "w") as fh:
        for l, w in enumerate(ws[:7]):
            fh.write(f"W_1^{{{l}}} = {w.to_latex()}\n")
    with open(out / "moments.tex", "w") as fh:
        for p in range(cfg.lmax + 1):
            m = moment_polynomial(p, ws)
            fh.write(m.to_latex(display_contents(reference.MOMENTS[p]) if p in reference.MOMENTS else None) + "\n")
    dens = [density_from_resolvent(w, l) for l, w in enumerate(ws[:cfg.density_lmax + 1])]
    with open(out / "densities.tex", "w") as fh:
        for d in dens:
            fh.write(f"\\tilde\\rho_{{{d.l}}} = {d.to_latex()}\n")
    with open(out / "tables.json", "w") as fh:
        json.dump({"schema": "gbe/1", "config": asdict(cfg),
                   "resolvent": [w.to_json_obj()["terms"] for w in ws],
                   "moments": [moment_polynomial(p, ws).to_json_obj() for p in range(cfg.lmax + 1)],
                   "densities": [d.to_json_obj() for d in dens]}, fh)
    print(f"highest boundary derivative per level: {[d.max_delta_order() for d in dens]}")
    print(f"wrote {out}/resolvent.tex, moments.tex, densities.tex, tables.json")


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--lmax", type=int, default=TablesConfig.lmax)
    ap.add_argument("--density-lmax", type=int, default=TablesConfig.density_lmax)
    ap.add_argument("--outdir", default=TablesConfig.outdir)
    a = ap.parse_args()
    main(TablesConfig(a.lmax, a.density_lmax, a.outdir))

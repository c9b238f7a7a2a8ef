"""Scan borel_sl(n): cocycle space, center of the nilradical, and the classified variety.

On every Borel we check that the CPA products are exactly the multiples of
x.y = [[z,x],y] with z spanning the center of [b,b].
"""

import argparse
import time
from dataclasses import dataclass

from cpalie import catalog, cpa, lie


def _proportional(u, v) -> bool:
    k = next((i for i, a in enumerate(v) if a), None)
    if k is None or not u[k]:
        return False
    r = u[k] / v[k]
    return all(a == r * b for a, b in zip(u, v))


@dataclass
class Config:
    n_min: int = 2
    n_max: int = 4
    method: str = "inner"


def run(cfg: Config):
    print(f"{'n':>3s}{'dim':>5s}{'Z([b,b])':>10s}{'cocycles':>10s}{'lin':>5s}  {'kind':16s}{'vdim':>5s}  matches  {'sec':>6s}")
    for n in range(cfg.n_min, cfg.n_max + 1):
        start = time.perf_counter()
        L = catalog.borel_sl(n)
        I = lie.derived_algebra(L)
        Z = cpa.center_of_ideal(L, I)
        cocycles = cpa.cocycle_space(L, I)
        c = cpa.classify(L, cfg.method)
        matches = "-"
        if n >= 3:
            base = cpa.central_z_product(L, None, Z.vectors[0])
            found = [P.to_vector() for P in c.linear_basis]
            matches = "yes" if c.dimension == 1 and len(found) == 1 and _proportional(found[0], base.to_vector()) else "no"
        print(f"{n:3d}{L.dim:5d}{Z.dim:10d}{len(cocycles):10d}{c.nparams:5d}  {c.kind:16s}{c.dimension:5d}  {matches:7s}  {time.perf_counter() - start:6.2f}")


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n-min", type=int, default=2)
    ap.add_argument("--n-max", type=int, default=4)
    ap.add_argument("--method", choices=["general", "inner"], default="inner")
    a = ap.parse_args()
    run(Config(a.n_min, a.n_max, a.method))

"""Classify CPA structures on a list of catalog algebras and print a summary table.

    python scripts/classify_catalog.py
    python scripts/classify_catalog.py --keys "borel_sl(3)" "sl(3)" --json out.json
"""

import argparse
import json
import time
from dataclasses import dataclass, field

from cpalie import catalog, cpa, lie
from cpalie.io import classification_to_json


@dataclass
class Config:
    keys: list = field(default_factory=lambda: [
        "abelian(1)", "abelian(2)", "heisenberg", "sl(2)", "sl(3)", "borel_sl(2)", "borel_sl(3)",
        "borel_sl(4)", "example_3_6", "parabolic_sl(4,1,3)", "sl2_semidirect_V(2)",
    ])
    json_out: str = ""


def run(cfg: Config):
    rows, dumps = [], {}
    for key in cfg.keys:
        L = catalog.make(key)
        start = time.perf_counter()
        methods = ["general"] + (["inner"] if lie.is_complete(L) else [])
        for method in methods:
            c = cpa.classify(L, method)
            rows.append((key, method, L.dim, c.nparams, c.kind, c.dimension, len(c.components), time.perf_counter() - start))
            dumps[f"{key}/{method}"] = classification_to_json(c)
    print(f"{'algebra':22s}{'method':9s}{'dim':>4s}{'lin':>5s}  {'kind':16s}{'vdim':>5s}{'comps':>6s}{'sec':>8s}")
    for key, method, n, d, kind, vd, nc, sec in rows:
        print(f"{key:22s}{method:9s}{n:4d}{d:5d}  {kind:16s}{vd:5d}{nc:6d}{sec:8.2f}")
    if cfg.json_out:
        with open(cfg.json_out, "w") as fh:
            json.dump(dumps, fh, indent=2, sort_keys=True)
    return rows


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--keys", nargs="*")
    ap.add_argument("--json", default="")
    a = ap.parse_args()
    cfg = Config(json_out=a.json)
    if a.keys:
        cfg.keys = a.keys
    run(cfg)

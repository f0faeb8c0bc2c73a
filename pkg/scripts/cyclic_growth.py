"""Track how many new basis elements appear at each degree bound for the homogenized system ab=ct, bc=at, ca=bt."""

from __future__ import annotations

import argparse
import time
from dataclasses import dataclass

from matsys.ncpoly import preset_system, truncated_buchberger


@dataclass
class Config:
    min_bound: int = 4
    max_bound: int = 8


def main(cfg: Config) -> int:
    gens = preset_system("cyclic")
    print("bound  basis  new-at-bound  pending  seconds")
    for bound in range(cfg.min_bound, cfg.max_bound + 1):
        start = time.perf_counter()
        gb = truncated_buchberger(gens, bound)
        new = gb.element_count_by_degree.get(bound, 0)
        print(f"{bound:5d}  {len(gb.basis):5d}  {new:12d}  {gb.pending_above_bound:7d}  {time.perf_counter() - start:7.2f}")
    return 0


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--min-bound", type=int, default=Config.min_bound)
    ap.add_argument("--max-bound", type=int, default=Config.max_bound)
    raise SystemExit(main(Config(**vars(ap.parse_args()))))

"""Recompute the truncated Groebner basis of the nilpotent system and reduce its known consequences."""

from __future__ import annotations

import argparse
import time
from dataclasses import dataclass

from matsys.ncpoly import (
    RELATIONS_51,
    format_poly,
    parse_poly,
    preset_system,
    degree4_word_targets,
    degree5_word_targets,
    truncated_buchberger,
)


@dataclass
class Config:
    degree_bound: int = 6
    show_basis: bool = False


def main(cfg: Config) -> int:
    start = time.perf_counter()
    gb = truncated_buchberger(preset_system("s4"), cfg.degree_bound)
    print(f"basis: {len(gb.basis)} elements, by degree {dict(sorted(gb.element_count_by_degree.items()))}, "
          f"{time.perf_counter() - start:.2f}s")
    if cfg.show_basis:
        for g in gb.basis:
            print("  ", format_poly(g))
    targets = {name: parse_poly(text, gb.table) for name, text in RELATIONS_51.items()}
    targets.update(degree4_word_targets(gb.table))
    targets.update(degree5_word_targets(gb.table))
    misses = 0
    for name, poly in targets.items():
        nf = gb.reduce(poly)
        if not nf.is_zero():
            misses += 1
            print(f"{name}: residual {format_poly(nf)}")
    print(f"{len(targets) - misses}/{len(targets)} targets reduce to 0")
    print("a^2 normal form:", format_poly(gb.reduce(parse_poly("a.a", gb.table))))
    return 1 if misses else 0


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--degree-bound", type=int, default=Config.degree_bound)
    ap.add_argument("--show-basis", action="store_true")
    raise SystemExit(main(Config(**vars(ap.parse_args()))))

"""Scan v = v1 + v2 i, compare the predicted region with what the multistart Newton search finds."""

from __future__ import annotations

import argparse
import json
from dataclasses import asdict, dataclass, field

import numpy as np

from matsys.quat import find_noncommuting, l_threshold, region_verdict


@dataclass
class Config:
    v1_values: list[float] = field(default_factory=lambda: [-4.0, -1.0, 0.0, 1.0])
    v2_values: list[float] = field(default_factory=lambda: [0.5, 1.0, 2.0, 2.5, 4.0, 6.0, 8.0])
    attempts: int = 120
    seed: int = 0
    out: str | None = None


def main(cfg: Config) -> int:
    rows, disagreements = [], 0
    for v1 in cfg.v1_values:
        try:
            lval = l_threshold(v1)
        except ValueError:
            lval = float("nan")
        print(f"v1={v1:+.2f}  lower threshold l={lval:.5f}  upper separator sqrt(3)|v1|={np.sqrt(3) * abs(v1):.5f}")
        for v2 in cfg.v2_values:
            verdict = region_verdict(v1, v2)
            sols = find_noncommuting(v1, v2, cfg.attempts, cfg.seed)
            missed = verdict.exists_noncommuting and not sols
            contradiction = bool(sols) and verdict.exists_noncommuting is False
            disagreements += contradiction
            print(f"   v2={v2:5.2f}  predicted={verdict.exists_noncommuting!s:5}  found={len(sols):2d}"
                  f"{'  CONTRADICTION' if contradiction else ''}{'  (predicted but none found)' if missed else ''}")
            rows.append({"v1": v1, "v2": v2, "predicted": verdict.exists_noncommuting, "found": len(sols)})
    if cfg.out:
        with open(cfg.out, "w") as fh:
            json.dump({"config": asdict(cfg), "rows": rows}, fh, indent=2)
    return 1 if disagreements else 0


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--v1", type=float, nargs="+", default=Config().v1_values, dest="v1_values")
    ap.add_argument("--v2", type=float, nargs="+", default=Config().v2_values, dest="v2_values")
    ap.add_argument("--attempts", type=int, default=Config.attempts)
    ap.add_argument("--seed", type=int, default=Config.seed)
    ap.add_argument("--out")
    raise SystemExit(main(Config(**vars(ap.parse_args()))))

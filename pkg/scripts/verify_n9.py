"""Full structural report for the 9x9 nilpotent solution: identities, flag, algebra, center, invariant."""

from __future__ import annotations

import argparse
from dataclasses import dataclass

from matsys.construct import construct_nilpotent
from matsys.matrix import Mat
from matsys.nilflag import algebra_basis, basis_labels, center_basis, semigroup_flag, signature, triangularizing_basis, varpi
from matsys.verify import check_relations, check_system, check_nilpotent_monomials


@dataclass
class Config:
    verbose: bool = False


def main(cfg: Config) -> int:
    t = construct_nilpotent("n9")
    reports = [check_system(t), check_relations(t, "R51"), check_nilpotent_monomials(t)]
    for rep in reports:
        print(rep.summary() if cfg.verbose or not rep.passed else f"{rep.relation_set}: pass")
    flag = semigroup_flag(t)
    for k, sub in enumerate(flag.subspaces[1:-1], 1):
        print(f"V{k} = [{', '.join(basis_labels(sub))}]")
    print("signature", signature(flag))
    ab = algebra_basis(t)
    cz = center_basis(t, ab)
    print(f"algebra dimension {ab.dimension}: {ab.labels}")
    print(f"center dimension {cz.dimension}: {cz.labels}")
    w = varpi(t)
    print(f"varpi = {w.value}; identities hold: {w.bab_identity and w.a2b_identity}")
    basis = triangularizing_basis(t)
    p = Mat.from_columns(basis)
    upper = all((p.inverse() @ m @ p).is_strictly_upper() for m in (t.a, t.b, t.c))
    print("triangularizing basis", ", ".join(basis_labels(basis)), "strictly upper:", upper)
    return 0 if all(r.passed for r in reports) and upper else 1


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--verbose", action="store_true")
    raise SystemExit(main(Config(**vars(ap.parse_args()))))

#!/usr/bin/env python3
"""Graded dimensions of Nichols algebras next to the root-product prediction.

For each instance the symmetrizer ranks are computed block by block and compared
with the coefficients of prod_alpha (1 + t^alpha + ... + t^{(N_alpha - 1) alpha}).

    python3 scripts/hilbert_tables.py --max-degree 6 --threads 4
"""
from __future__ import annotations

import argparse
import dataclasses
import sys
import time

from nichols_super import nichols, weyl
from nichols_super.classify import build_family_diagram, diagram_matrix
from nichols_super.scalars import UnityScalar

Z3, Z5, Z7 = UnityScalar(3, 1), UnityScalar(5, 1), UnityScalar(7, 1)

DEFAULT_CASES = (
    ("A", 2, {"q": Z5}, ()),
    ("A", 2, {"q": Z3}, (1,)),
    ("B-2", 2, {"q": Z7}, ()),
    ("B-3", 2, {"zeta": Z3}, (1,)),
    ("A", 3, {"q": Z3}, (2,)),
    ("C", 3, {"q": Z3}, (1,)),
)


@dataclasses.dataclass(frozen=True)
class HilbertConfig:
    max_degree: int = 6
    threads: int = 1
    block_cap: int = nichols.DEFAULT_BLOCK_CAP
    show_tables: bool = False

    def __post_init__(self):
        if self.max_degree < 1 or self.threads < 1:
            raise ValueError("max-degree and threads must be positive")


def run(cfg: HilbertConfig, out=sys.stdout) -> int:
    mismatches = 0
    for did, theta, params, marked in DEFAULT_CASES:
        t0 = time.perf_counter()
        B = diagram_matrix(build_family_diagram(did, theta, params, marked))
        table = nichols.graded_dims(B, cfg.max_degree, threads=cfg.threads, block_cap=cfg.block_cap)
        atlas = weyl.explore(B)
        oracle = nichols.hilbert_from_roots(B, weyl.positive_roots(atlas, 0), cfg.max_degree)
        same = table.nonzero() == oracle
        mismatches += not same
        totals = " ".join(str(table.total(n)) for n in range(cfg.max_degree + 1))
        out.write(f"{did} theta={theta} marked={list(marked)}: totals {totals} "
                  f"oracle={'match' if same else 'MISMATCH'} ({time.perf_counter() - t0:.2f}s)\n")
        if cfg.show_tables:
            out.write("".join("  " + line + "\n" for line in table.text().splitlines()))
    return 1 if mismatches else 0


def main(argv=None) -> int:
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--max-degree", type=int, default=6)
    p.add_argument("--threads", type=int, default=1)
    p.add_argument("--block-cap", type=int, default=nichols.DEFAULT_BLOCK_CAP)
    p.add_argument("--show-tables", action="store_true", help="print every nonzero graded piece")
    ns = p.parse_args(argv)
    return run(HilbertConfig(ns.max_degree, ns.threads, ns.block_cap, ns.show_tables))


if __name__ == "__main__":
    sys.exit(main())

#!/usr/bin/env python3
"""Classify one instance of every super-type diagram family and summarize its Weyl groupoid.

Prints one line per instance: requested id, matched id, object count, positive
root count of the first object, root-system verdict and crosscheck status.

    python3 scripts/explore_families.py --order 7 --families A C G3
"""
from __future__ import annotations

import argparse
import dataclasses
import sys
import time

from nichols_super import weyl
from nichols_super.classify import DIAGRAM_IDS, build_family_diagram, classify_braiding, diagram_matrix
from nichols_super.scalars import UnityScalar


@dataclasses.dataclass(frozen=True)
class ExploreConfig:
    order: int = 7
    max_rank: int = 4
    families: tuple[str, ...] = ()
    object_cap: int = 10_000

    def __post_init__(self):
        if self.order < 4:
            raise ValueError("order must be at least 4 so that q avoids the boundary cases")
        if self.max_rank < 2:
            raise ValueError("max-rank must be at least 2")


def instances(cfg: ExploreConfig):
    q = UnityScalar(cfg.order, 1)
    zeta = UnityScalar(3, 1)
    for did in DIAGRAM_IDS:
        fam = did.split("-")[0]
        if cfg.families and fam not in cfg.families and did not in cfg.families:
            continue
        if did == "B-1":
            yield did, 2, {"q": q, "zeta": zeta}
        elif did == "B-3":
            yield from ((did, t, {"zeta": zeta}) for t in range(2, cfg.max_rank + 1))
        elif fam in ("A", "B", "C"):
            yield from ((did, t, {"q": q}) for t in range(2, cfg.max_rank + 1))
        elif fam == "D":
            yield from ((did, t, {"q": q}) for t in range(3, max(cfg.max_rank, 3) + 1))
        elif fam == "D21":
            yield did, 3, {"q": q, "r": q ** 2, "s": q ** -3}
        elif fam == "F4":
            yield did, 4, {"q": q}
        else:
            yield did, 3, {"q": q}


def run(cfg: ExploreConfig, out=sys.stdout) -> int:
    bad = 0
    for did, theta, params in instances(cfg):
        t0 = time.perf_counter()
        B = diagram_matrix(build_family_diagram(did, theta, params))
        (comp,) = classify_braiding(B)
        d = comp.descriptor
        atlas = weyl.explore(B, object_cap=cfg.object_cap)
        ok = atlas.complete and weyl.verify_root_system(atlas).ok
        roots = len(weyl.positive_roots(atlas, 0)) if atlas.complete else "-"
        matched = d.diagram_id if d else "none"
        status = d.crosscheck if d else "not super type"
        bad += (not ok) or status != "ok"
        out.write(f"{did:6s} theta={theta} -> {matched:6s} objects={len(atlas.objects):5d} "
                  f"roots={roots} axioms={'ok' if ok else 'FAIL'} crosscheck={status} "
                  f"({time.perf_counter() - t0:.2f}s)\n")
    return 1 if bad else 0


def main(argv=None) -> int:
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--order", type=int, default=7, help="order of the root of unity q")
    p.add_argument("--max-rank", type=int, default=4)
    p.add_argument("--families", nargs="*", default=[], help="family names or diagram ids (default: all)")
    p.add_argument("--object-cap", type=int, default=10_000)
    ns = p.parse_args(argv)
    cfg = ExploreConfig(ns.order, ns.max_rank, tuple(ns.families), ns.object_cap)
    return run(cfg)


if __name__ == "__main__":
    sys.exit(main())

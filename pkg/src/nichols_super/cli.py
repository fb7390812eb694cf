"""Command-line front end: ``nichols-super COMMAND FILE [options]``.

Exit codes: 0 success, 1 malformed input, 2 cap exceeded, 3 verification failure.
"""
from __future__ import annotations

import argparse
import dataclasses
import os
import sys
from typing import Sequence, TextIO

from . import classify, nichols, superhopf, weyl
from .braiding import BraidingMatrix, dynkin_of, super_sign_matrix
from .formats import FormatError, parse_braiding, parse_hopf, serialize_hopf
from .scalars import SpecializationError, SpecializationMap, lcm, parse_scalar

EXIT_OK, EXIT_MALFORMED, EXIT_CAP, EXIT_VERIFY = 0, 1, 2, 3

COMMANDS = ("classify", "roots", "weyl", "hilbert", "relations", "bosonize", "dot")


@dataclasses.dataclass(frozen=True)
class RunConfig:
    command: str
    path: str
    object_cap: int = 10_000
    root_cap: int = 10_000
    degree_cap: int = 12
    block_cap: int = nichols.DEFAULT_BLOCK_CAP
    max_degree: int | None = None
    assignments: tuple[str, ...] = ()
    output_format: str = "text"
    verify: bool = False
    minimal: bool = False
    threads: int = 1

    def __post_init__(self):
        if self.command not in COMMANDS:
            raise ValueError(f"unknown command {self.command!r}")
        for name in ("object_cap", "root_cap", "degree_cap", "block_cap", "threads"):
            if getattr(self, name) < 1:
                raise ValueError(f"{name} must be positive")
        if self.output_format not in ("text", "dot"):
            raise ValueError("format must be text or dot")
        for a in self.assignments:
            if a.count("=") != 1 or not a.split("=")[0].strip():
                raise ValueError(f"assignment {a!r} is not NAME=z^k")


class _Failure(Exception):
    def __init__(self, code: int, message: str):
        super().__init__(message)
        self.code = code


def specialization_from(assignments: Sequence[str], torsion: int) -> SpecializationMap | None:
    if not assignments:
        return None
    values = {}
    for a in assignments:
        name, lit = (s.strip() for s in a.split("="))
        s = parse_scalar(lit, torsion)
        if s.generic_exps:
            raise ValueError(f"assignment {a!r} must be a root of unity")
        values[name] = s
    T = lcm(torsion, *(v.reduced().torsion_order for v in values.values()))
    return SpecializationMap(T, {n: int(v.phase * T) for n, v in values.items()})


def _load_braiding(cfg: RunConfig):
    try:
        with open(cfg.path, encoding="utf-8") as fh:
            bf = parse_braiding(fh.read())
        spec = specialization_from(cfg.assignments, bf.torsion)
    except OSError as e:
        raise _Failure(EXIT_MALFORMED, f"cannot read {cfg.path}: {e.strerror}") from None
    except ValueError as e:
        raise _Failure(EXIT_MALFORMED, str(e)) from None
    B = bf.matrix
    torsion = bf.torsion
    if spec is not None:
        try:
            B = B.specialize(spec)
        except SpecializationError as e:
            raise _Failure(EXIT_MALFORMED, str(e)) from None
        torsion = spec.target_order
    return B, bf.parity, torsion


def _effective(B: BraidingMatrix, parity) -> BraidingMatrix:
    """The braiding after forgetting the super structure of the file's parity."""
    return B if parity is None else super_sign_matrix(B, parity)


def _display_torsion(B: BraidingMatrix, torsion: int) -> int:
    """Smallest multiple of the file's torsion writing every entry of B as z^k."""
    return lcm(torsion, B.torsion_lcm())


def _explore(B: BraidingMatrix, cfg: RunConfig) -> weyl.GroupoidAtlas:
    atlas = weyl.explore(B, object_cap=cfg.object_cap, root_cap=cfg.root_cap)
    if atlas.status is weyl.AtlasStatus.CAP_EXCEEDED:
        raise _Failure(EXIT_CAP, f"cap exceeded: {atlas.detail}")
    return atlas


def _cmd_classify(cfg: RunConfig, out: TextIO) -> int:
    B, parity, torsion = _load_braiding(cfg)
    Be = _effective(B, parity)
    results = classify.classify_braiding(Be)
    out.write(classify.classification_text(results, _display_torsion(Be, torsion)))
    bad = [r for r in results if r.descriptor and r.descriptor.crosscheck != "ok"]
    for r in bad:
        out.write(f"crosscheck {r.descriptor.crosscheck}\n")
    return EXIT_VERIFY if bad else EXIT_OK


def _cmd_roots(cfg: RunConfig, out: TextIO) -> int:
    B, parity, _ = _load_braiding(cfg)
    atlas = _explore(_effective(B, parity), cfg)
    if not atlas.complete:
        out.write(f"status {atlas.status.value} ({atlas.detail})\n")
        return EXIT_VERIFY
    for x in range(len(atlas.objects)):
        out.write(f"object {x} {weyl.root_set_text(weyl.positive_roots(atlas, x))}\n")
    return EXIT_OK


def _cmd_weyl(cfg: RunConfig, out: TextIO) -> int:
    B, parity, torsion = _load_braiding(cfg)
    Be = _effective(B, parity)
    atlas = _explore(Be, cfg)
    out.write(weyl.atlas_dot(atlas) if cfg.output_format == "dot"
              else weyl.atlas_text(atlas, _display_torsion(Be, torsion)))
    return EXIT_OK if atlas.complete else EXIT_VERIFY


def _cmd_hilbert(cfg: RunConfig, out: TextIO) -> int:
    if cfg.max_degree is None:
        raise _Failure(EXIT_MALFORMED, "hilbert needs --max-degree")
    B, parity, _ = _load_braiding(cfg)
    if not B.is_torsion():
        raise _Failure(EXIT_MALFORMED, "generic parameters need --at NAME=z^k")
    try:
        table = nichols.graded_dims(B, cfg.max_degree, parity=parity, threads=cfg.threads,
                                    block_cap=cfg.block_cap, degree_cap=cfg.degree_cap)
    except nichols.CapExceeded as e:
        raise _Failure(EXIT_CAP, f"cap exceeded: {e}") from None
    out.write(table.text())
    return EXIT_OK


def _cmd_relations(cfg: RunConfig, out: TextIO) -> int:
    B, parity, torsion = _load_braiding(cfg)
    Be = _effective(B, parity)
    try:
        rels = nichols.presentation(Be, cfg.minimal)
    except ValueError as e:
        raise _Failure(EXIT_MALFORMED, str(e)) from None
    if cfg.verify and not Be.is_torsion():
        raise _Failure(EXIT_MALFORMED, "verification of generic parameters needs --at NAME=z^k")
    failed = False
    for r in rels:
        head = f"{r.tag} degree (" + ",".join(map(str, r.content)) + ")"
        if not cfg.verify:
            out.write(head + "\n")
            continue
        if r.degree > cfg.degree_cap:
            out.write(f"{head} : SKIP degree {r.degree} > cap {cfg.degree_cap}\n")
            continue
        res = nichols.verify_relation(Be, r.element, block_cap=cfg.block_cap)
        if res.ok is None:
            out.write(f"{head} : SKIP {res.reason}\n")
        elif res.ok:
            out.write(f"{head} : PASS\n")
        else:
            failed = True
            out.write(f"{head} : FAIL\n  witness {res.witness.text()}\n")
    return EXIT_VERIFY if failed else EXIT_OK


def _cmd_bosonize(cfg: RunConfig, out: TextIO) -> int:
    try:
        with open(cfg.path, encoding="utf-8") as fh:
            H = parse_hopf(fh.read())
    except OSError as e:
        raise _Failure(EXIT_MALFORMED, f"cannot read {cfg.path}: {e.strerror}") from None
    except ValueError as e:
        raise _Failure(EXIT_MALFORMED, str(e)) from None
    rep = superhopf.verify_super_hopf(H)
    if not rep.ok:
        out.write(rep.text())
        return EXIT_VERIFY
    Hs = superhopf.bosonize(H, check=False)
    rep2 = superhopf.verify_super_hopf(Hs)
    out.write(f"# bosonization of dimension {Hs.dim}: " + rep2.text())
    out.write(serialize_hopf(Hs))
    return EXIT_OK if rep2.ok else EXIT_VERIFY


def _cmd_dot(cfg: RunConfig, out: TextIO) -> int:
    B, parity, torsion = _load_braiding(cfg)
    Be = _effective(B, parity)
    out.write(dynkin_of(Be).to_dot(_display_torsion(Be, torsion)))
    return EXIT_OK


_DISPATCH = {
    "classify": _cmd_classify, "roots": _cmd_roots, "weyl": _cmd_weyl, "hilbert": _cmd_hilbert,
    "relations": _cmd_relations, "bosonize": _cmd_bosonize, "dot": _cmd_dot,
}


def run(cfg: RunConfig, out: TextIO | None = None, err: TextIO | None = None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        return _DISPATCH[cfg.command](cfg, out)
    except _Failure as f:
        err.write(f"error: {f}\n")
        return f.code
    except weyl.AtlasIncomplete as e:
        err.write(f"error: cap exceeded: {e}\n")
        return EXIT_CAP


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="nichols-super",
                                description="Diagonal braidings of super type: classification, "
                                            "Weyl groupoids, Nichols algebra dimensions and relations.")
    p.add_argument("--threads", type=int, default=None,
                   help="worker threads (default: $NICHOLS_THREADS or 1)")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, help_):
        sp = sub.add_parser(name, help=help_)
        sp.add_argument("file")
        sp.add_argument("--at", action="append", default=[], metavar="NAME=z^k",
                        help="specialize a generic parameter")
        return sp

    add("classify", "match each component against the super-type families")
    sp = add("roots", "positive roots of every object of the Weyl groupoid")
    sp.add_argument("--cap", type=int, default=10_000, help="object cap")
    sp = add("weyl", "Weyl groupoid atlas")
    sp.add_argument("--cap", type=int, default=10_000, help="object cap")
    sp.add_argument("--format", choices=("text", "dot"), default="text")
    sp = add("hilbert", "graded dimensions of the Nichols algebra")
    sp.add_argument("--max-degree", type=int, required=True)
    sp.add_argument("--block-cap", type=int, default=nichols.DEFAULT_BLOCK_CAP)
    sp = add("relations", "relations of the presentation")
    sp.add_argument("--verify", action="store_true", help="check each relation with the symmetrizer")
    sp.add_argument("--minimal", action="store_true", help="reduced set of power relations")
    sp.add_argument("--max-degree", type=int, default=12, help="skip verification above this degree")
    sp.add_argument("--block-cap", type=int, default=nichols.DEFAULT_BLOCK_CAP)
    sub.add_parser("bosonize", help="bosonization of a Hopf superalgebra presentation").add_argument("file")
    add("dot", "generalized Dynkin diagram in DOT format")
    return p


def config_from_args(ns: argparse.Namespace) -> RunConfig:
    threads = ns.threads
    if threads is None:
        threads = int(os.environ.get("NICHOLS_THREADS", "1") or 1)
    kw = dict(command=ns.command, path=ns.file, threads=threads,
              assignments=tuple(getattr(ns, "at", [])))
    if ns.command in ("roots", "weyl"):
        kw["object_cap"] = ns.cap
    if ns.command == "weyl":
        kw["output_format"] = ns.format
    if ns.command == "hilbert":
        kw.update(max_degree=ns.max_degree, block_cap=ns.block_cap)
    if ns.command == "relations":
        kw.update(verify=ns.verify, minimal=ns.minimal, degree_cap=ns.max_degree, block_cap=ns.block_cap)
    return RunConfig(**kw)


def main(argv: Sequence[str] | None = None) -> int:
    ns = build_parser().parse_args(argv)
    try:
        cfg = config_from_args(ns)
    except ValueError as e:
        sys.stderr.write(f"error: {e}\n")
        return EXIT_MALFORMED
    return run(cfg)


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())

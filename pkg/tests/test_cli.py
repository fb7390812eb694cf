import io
import os
import subprocess
import sys

import pytest

from nichols_super import cli, nichols
from nichols_super.formats import parse_hopf
from nichols_super import superhopf as S

from support import SAMPLES


def sample(name):
    return os.path.join(SAMPLES, name)


def call(argv, capsys):
    code = cli.main(argv)
    out, err = capsys.readouterr()
    return code, out, err


def test_classify_g3(capsys):
    code, out, _ = call(["classify", sample("g3.braid")], capsys)
    assert code == cli.EXIT_OK
    assert out.strip().endswith("via diagram G3-1")
    assert out.startswith("component {1,2,3} : G(3)")


def test_classify_marked_a3(capsys):
    code, out, _ = call(["classify", sample("a3_marked.braid")], capsys)
    assert code == 0 and "A(3;" in out and "marked={2}" in out


def test_classify_not_super(capsys):
    code, out, _ = call(["classify", sample("not_super.braid")], capsys)
    assert code == 0 and out == "component {1,2} : not super type\n"


def test_roots_with_specialization(capsys):
    code, out, _ = call(["roots", sample("cartan_a2.braid"), "--at", "q=z^1"], capsys)
    assert code == 0
    assert out == "object 0 roots 3: (1,0) (0,1) (1,1)\n"


def test_roots_cap(capsys):
    code, _, err = call(["roots", "--cap", "1", sample("g3.braid")], capsys)
    assert code == cli.EXIT_CAP and "cap exceeded" in err


def test_missing_file(capsys):
    code, _, err = call(["classify", sample("missing.braid")], capsys)
    assert code == cli.EXIT_MALFORMED and "cannot read" in err


def test_malformed_file(tmp_path, capsys):
    bad = tmp_path / "bad.braid"
    bad.write_text("theta = 2\nrow 1 = 1 1\n")
    code, _, err = call(["dot", str(bad)], capsys)
    assert code == cli.EXIT_MALFORMED and err.startswith("error:")


def test_specialization_violating_a_constraint(capsys):
    code, _, err = call(["classify", sample("cartan_a2.braid"), "--at", "q=z^0"], capsys)
    assert code == cli.EXIT_MALFORMED and "violates" in err


def test_bad_assignment_syntax(capsys):
    code, _, err = call(["classify", sample("cartan_a2.braid"), "--at", "q"], capsys)
    assert code == cli.EXIT_MALFORMED


def test_generic_hilbert_needs_specialization(capsys):
    code, _, err = call(["hilbert", sample("cartan_a2.braid"), "--max-degree", "2"], capsys)
    assert code == cli.EXIT_MALFORMED and "--at" in err


def test_undefined_reflection_is_a_verification_failure(tmp_path, capsys):
    f = tmp_path / "gen.braid"
    f.write_text("generics = q p\ntheta = 2\nrow 1 = q p\nrow 2 = 1 q\n")
    code, out, _ = call(["roots", str(f)], capsys)
    assert code == cli.EXIT_VERIFY and "reflection_undefined" in out


def test_super_line_hilbert(capsys):
    code, out, _ = call(["hilbert", sample("super_line.braid"), "--max-degree", "3"], capsys)
    assert code == 0
    assert out.splitlines()[-1] == "totals 1 1 0 0"


def test_super_line_dot_shows_the_sign(capsys):
    code, out, _ = call(["dot", sample("super_line.braid")], capsys)
    assert code == 0 and 'label="1: z^1"' in out


def test_hilbert_block_cap(capsys):
    code, _, err = call(["hilbert", sample("g3.braid"), "--max-degree", "6", "--block-cap", "20"], capsys)
    assert code == cli.EXIT_CAP


def test_relations_verify(capsys):
    code, out, _ = call(["relations", sample("a3_marked.braid"), "--verify"], capsys)
    assert code == 0
    lines = out.splitlines()
    assert lines and all(l.endswith(": PASS") or ": SKIP" in l for l in lines)
    assert any(l.startswith("power x2^2 degree (0,2,0)") for l in lines)


def test_relations_skip_above_degree_cap(capsys):
    code, out, _ = call(["relations", sample("a3_marked.braid"), "--verify", "--max-degree", "4"], capsys)
    assert code == 0
    assert "power x1^5 degree (5,0,0) : SKIP degree 5 > cap 4" in out


def test_relations_failure_reports_witness(capsys, monkeypatch):
    real = nichols.presentation

    def with_bogus(B, minimal=False):
        bogus = nichols.Relation("bogus", (1, 1, 0), lambda: nichols.letter(0) * nichols.letter(1))
        return real(B, minimal) + [bogus]

    monkeypatch.setattr(nichols, "presentation", with_bogus)
    code, out, _ = call(["relations", sample("a3_marked.braid"), "--verify"], capsys)
    assert code == cli.EXIT_VERIFY
    assert "bogus degree (1,1,0) : FAIL" in out and "witness" in out


def test_relations_reject_exceptional(capsys):
    code, _, err = call(["relations", sample("g3.braid")], capsys)
    assert code == cli.EXIT_MALFORMED and "no presentation" in err


def test_bosonize_output_parses(capsys):
    code, out, _ = call(["bosonize", sample("exterior1.hopf")], capsys)
    assert code == 0
    assert out.startswith("# bosonization of dimension 4: all axioms pass")
    H = parse_hopf(out)
    assert H.same_structure(S.bosonize(S.exterior_algebra(1)))


def test_bosonize_rejects_non_hopf(tmp_path, capsys):
    f = tmp_path / "bad.hopf"
    f.write_text(open(sample("exterior1.hopf")).read().replace("parity = 0 1", "parity = 0 0"))
    code, out, _ = call(["bosonize", str(f)], capsys)
    assert code == cli.EXIT_VERIFY and "comult-multiplicative" in out


def test_weyl_text_and_dot(capsys):
    code, text, _ = call(["weyl", sample("b_chain3.braid")], capsys)
    assert code == 0 and text.startswith("status complete\nobjects ")
    code, dot, _ = call(["weyl", sample("b_chain3.braid"), "--format", "dot"], capsys)
    assert code == 0 and dot.startswith("graph weyl {")


def test_threads_do_not_change_output(capsys, monkeypatch):
    args = ["hilbert", sample("a3_marked.braid"), "--max-degree", "4"]
    _, one, _ = call(["--threads", "1"] + args, capsys)
    _, four, _ = call(["--threads", "4"] + args, capsys)
    monkeypatch.setenv("NICHOLS_THREADS", "3")
    _, env, _ = call(args, capsys)
    assert one == four == env


def test_environment_sets_threads(monkeypatch):
    monkeypatch.setenv("NICHOLS_THREADS", "5")
    ns = cli.build_parser().parse_args(["classify", "x.braid"])
    assert cli.config_from_args(ns).threads == 5
    ns = cli.build_parser().parse_args(["--threads", "2", "classify", "x.braid"])
    assert cli.config_from_args(ns).threads == 2


def test_run_config_validation():
    with pytest.raises(ValueError):
        cli.RunConfig("nope", "x")
    with pytest.raises(ValueError):
        cli.RunConfig("roots", "x", object_cap=0)
    with pytest.raises(ValueError):
        cli.RunConfig("weyl", "x", output_format="svg")


def test_run_writes_to_given_streams():
    out, err = io.StringIO(), io.StringIO()
    code = cli.run(cli.RunConfig("classify", sample("g3.braid")), out, err)
    assert code == 0 and "G3-1" in out.getvalue() and err.getvalue() == ""


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "nichols_super.cli", "classify", sample("g3.braid")],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and "G3-1" in proc.stdout

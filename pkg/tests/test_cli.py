import pytest

from corpus import FIXTURES
from plaingroups.cli import main
from plaingroups.mrs import load_system


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


def fx(name):
    return FIXTURES / f"{name}.mrs"


def kv(text):
    return dict(line.split("=", 1) for line in text.splitlines())


def test_validate(capsys):
    code, out, _ = run(capsys, "validate", fx("z2"))
    assert code == 0
    assert {"monadic=true", "special=true", "length_reducing=true"} <= set(out.split())


def test_validate_malformed(capsys):
    code, out, err = run(capsys, "validate", fx("malformed"))
    assert code == 2 and out == ""
    assert "line 2, column" in err


def test_validate_missing_file(capsys):
    code, _, err = run(capsys, "validate", FIXTURES / "nope.mrs")
    assert code == 2 and err


def test_validate_not_length_reducing(capsys):
    code, out, _ = run(capsys, "--mode", "kv", "validate", fx("commute"))
    assert code == 0 and kv(out)["length_reducing"] == "false"


def test_reduce(capsys):
    assert run(capsys, "reduce", fx("z2"), "aaa")[:2] == (0, "a\n")
    assert run(capsys, "reduce", fx("z2z3"), "bbb")[:2] == (0, "(empty)\n")


def test_reduce_trace_kv(capsys):
    code, out, _ = run(capsys, "--mode", "kv", "reduce", fx("z2z3"), "bbb", "--trace")
    d = kv(out)
    assert code == 0 and d["normal_form"] == "(empty)" and d["steps"] == "2"
    assert d["step.0"].startswith("bbb @0")


def test_reduce_strategies_agree(capsys):
    outs = {run(capsys, "reduce", fx("s3"), "rsRtu", "--strategy", s, "--seed", "3")[1] for s in ("leftmost", "rightmost", "random")}
    assert len(outs) == 1


def test_reduce_exit_codes(capsys):
    assert run(capsys, "reduce", fx("z2"), "ax")[0] == 3
    assert run(capsys, "reduce", fx("commute"), "ab")[0] == 4


def test_confluence(capsys):
    assert run(capsys, "confluence", fx("z2z3"))[0] == 0
    code, out, _ = run(capsys, "--mode", "kv", "confluence", fx("conflicting"))
    d = kv(out)
    assert code == 1
    assert (d["witness.source"], {d["witness.left"], d["witness.right"]}) == ("aa", {"b", "c"})
    assert run(capsys, "confluence", fx("commute"))[0] == 4


def test_normalize(capsys, tmp_path):
    path = tmp_path / "in.mrs"
    path.write_text("alphabet: a b\nrule: b -> a\nrule: a a ->\n")
    target = tmp_path / "out.mrs"
    code, out, _ = run(capsys, "normalize", path, "--out", target)
    assert code == 0
    assert out.startswith("# map: a -> a\n# map: b -> a\nalphabet: a\n")
    assert load_system(target).alphabet == ("a",)
    assert run(capsys, "normalize", fx("conflicting"))[0] == 5


def test_analyze(capsys):
    code, out, _ = run(capsys, "--mode", "kv", "analyze", fx("klein"))
    d = kv(out)
    assert code == 0 and d["is_group"] == "yes" and d["dfl_subgroups"] == "1" and d["dfl.0.order"] == "4"
    code, out, _ = run(capsys, "--mode", "kv", "analyze", fx("bicyclic"))
    assert code == 1 and kv(out)["is_group"] == "no"
    assert run(capsys, "analyze", fx("conflicting"))[0] == 1


def test_decompose(capsys):
    code, out, _ = run(capsys, "--mode", "kv", "decompose", fx("z2z3"))
    d = kv(out)
    assert code == 0
    assert d["free_rank"] == "0" and d["factor_orders"] == "2,3" and d["consistency"] == "ok"
    code, out, _ = run(capsys, "decompose", fx("klein"))
    assert out.startswith("free_rank: 0\nfactor 0: order 4 (DFL)\n")
    assert run(capsys, "decompose", fx("bicyclic"))[0] == 1


def test_ball(capsys, tmp_path):
    code, out, _ = run(capsys, "--mode", "kv", "ball", fx("z2z3"), "--radius", "10")
    assert code == 0 and kv(out)["vertices"] == "218"  # irreducible words of length <= 10
    dot = tmp_path / "g.dot"
    run(capsys, "ball", fx("z2"), "--radius", "1", "--dot", dot)
    assert dot.read_text().count("->") == 2
    code, out, _ = run(capsys, "ball", fx("z2"), "--radius", "0", "--dot", "-")
    assert out == 'digraph cayley {\n  "1";\n}\n'
    assert run(capsys, "ball", fx("free2"), "--radius", "6", "--max-vertices", "10")[0] == 5


@pytest.mark.parametrize("lemma", ["plain-geometry", "single-edge", "dfl-props"])
def test_check_ok(capsys, lemma):
    code, out, _ = run(capsys, "--mode", "kv", "check", fx("z2z3"), "--lemma", lemma)
    assert code == 0 and kv(out)["ok"] == "true"


def test_check_cochet(capsys):
    code, out, _ = run(capsys, "--mode", "kv", "check", fx("dinf"), "--lemma", "cochet")
    assert code == 0 and kv(out)["factor_orders"] == "2,2"
    assert run(capsys, "check", fx("klein"), "--lemma", "cochet")[0] == 5


def test_sample(capsys, tmp_path):
    code, out, _ = run(capsys, "--mode", "kv", "sample", "--seed", "0", "--want", "2", "--out-dir", tmp_path)
    d = kv(out)
    assert code == 0 and d["accepted"] == d["written"] == "2"
    assert sorted(p.name for p in tmp_path.iterdir()) == ["seed0_0000.mrs", "seed0_0001.mrs"]


def test_kv_sorted(capsys):
    for argv in (("validate", fx("s3")), ("analyze", fx("z3_tail")), ("decompose", fx("s3"))):
        _, out, _ = run(capsys, "--mode", "kv", *argv)
        keys = [line.split("=", 1)[0] for line in out.splitlines()]
        assert keys == sorted(keys)

import json
import subprocess
import sys

import pytest

from birendo.cli import main
from birendo.genword import parse_word, to_endo
from birendo.endo import PlaneEndo


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def run_json(capsys, *argv):
    code, out, err = run(capsys, *argv, "--json")
    return code, json.loads(out)


@pytest.fixture
def pencil(tmp_path):
    p = tmp_path / "pencil.w"
    p.write_text("sacstd 1\nv (x-1)*(x-2)\n")
    return str(p)


def test_info(capsys):
    code, js = run_json(capsys, "info", "x^2*y ; x*y")
    assert code == 0 and js["q"] == js["c"] == 2
    assert {(m["a"], m["b"], m["c"]) for m in js["missing_lines"]} == {("1", "0", "0"), ("0", "1", "0")}


def test_info_not_birational(capsys):
    code, js = run_json(capsys, "info", "x^2 ; y")
    assert code == 0 and js["non_contracted"] == ["x"] and js["missing_lines"] is None


def test_classify(capsys):
    code, js = run_json(capsys, "classify", "x^2*y ; x*y")
    assert code == 0 and js["class"] == "Saa" and js["core"] == "x^2*y ; x*y" and js["verified"]


def test_classify_word_file(capsys, pencil):
    code, js = run_json(capsys, "classify", pencil)
    assert code == 0 and js["class"] == "Sw" and js["core_word"].startswith("sacstd 1\n")


def test_config_check(capsys):
    code, js = run_json(capsys, "config-check", "x; y; x-y")
    assert code == 0 and js["admissible"] is False and js["corollary_type"] == "c"


def test_word_invariants(capsys, pencil):
    code, js = run_json(capsys, "word-invariants", pencil)
    assert code == 0 and js["n"] == 3
    assert set(js["miss"]) == {"y", "x - y", "x - 2*y"}
    assert set(js["cont"]) == {"y", "x - 1", "x - 2"}
    assert js["cent"] == [["0", "0"]]
    assert set(js["depths"].values()) == {1, 2, 3}


def test_compose_and_apply(capsys, pencil):
    code, out, _ = run(capsys, "compose", pencil)
    assert code == 0
    f = PlaneEndo.parse(out.strip())
    assert f == to_endo(parse_word(open(pencil).read()))
    code, out, _ = run(capsys, "apply", out.strip(), "3", "1/2")
    assert code == 0 and out.strip() == "(3, 1)"


def test_config_example(capsys, tmp_path):
    code, out, _ = run(capsys, "config-example", "--type", "c", "--params", "1,2")
    assert code == 0 and out == "sacstd 1\nv x^2 - 3*x + 2\n"
    p = tmp_path / "c.w"
    p.write_text(out)
    code, js = run_json(capsys, "word-invariants", str(p))
    assert set(js["miss"]) == {"y", "x - y", "x - 2*y"}


def test_peel_round_trip(capsys, pencil, tmp_path):
    code, out, _ = run(capsys, "compose", pencil)
    pair = out.strip()
    code, js = run_json(capsys, "peel", pair)
    assert code == 0 and js["n"] == 3
    p = tmp_path / "peeled.w"
    p.write_text(js["word"])
    code, out, _ = run(capsys, "compose", str(p))
    assert out.strip() == pair


def test_verify_equiv(capsys):
    code, js = run_json(capsys, "verify-equiv", "x ; x*y", "x*y ; y", "y ; x", "y ; x")
    assert code == 0 and js == {"equivalent": True}
    code, js = run_json(capsys, "verify-equiv", "x ; x*y", "x ; x*y + 1", "x ; y", "x ; y")
    assert js == {"equivalent": False}


def test_verify_equiv_normal_forms(capsys):
    code, js = run_json(capsys, "verify-equiv", "x ; (x-1)*(x-3)*y", "x ; (x+2)*x*y")
    assert code == 0 and js == {"comparison": "equal"}
    code, js = run_json(capsys, "verify-equiv", "x*y*(x-1)*(x-2) ; (x-1)*(x-2)*y", "x ; x*y")
    assert js == {"comparison": "different"}


@pytest.mark.parametrize(
    "argv, code",
    [
        (["info", "x^2 ; y +"], 1),
        (["compose", "/nonexistent/word"], 1),
        (["config-check", "x; x"], 1),
        (["peel", "x^2 ; y"], 2),
        (["config-example", "--type", "d", "--params", "1"], 2),
        (["verify-equiv", "x ; x*y", "x ; x*y", "x^2 ; y", "x ; y"], 2),
        (["classify", "x + x^2*(x-1)^2*y^2 ; x*(x-1)*y"], 3),
        (["peel", "x + x^2*(x-1)^2*y^2 ; x*(x-1)*y"], 3),
    ],
)
def test_exit_codes(capsys, argv, code):
    got, out, err = run(capsys, *argv)
    assert got == code
    assert "error" in (err or out)


def test_json_error_report(capsys):
    code, js = run_json(capsys, "classify", "x + x^2*(x-1)^2*y^2 ; x*(x-1)*y")
    assert code == 3 and js["error"] == "OutOfClass" and js["diagnostics"]["c"] == 2


def test_json_is_byte_stable(capsys, pencil):
    outs = set()
    for _ in range(2):
        code, out, _ = run(capsys, "classify", pencil, "--json")
        outs.add(out)
    assert len(outs) == 1


def test_selftest(capsys):
    code, out, _ = run(capsys, "selftest", "--count", "5", "--seed", "2")
    assert code == 0
    assert out.count("PASS") == 10 and "FAIL" not in out


def test_module_entry_point():
    res = subprocess.run(
        [sys.executable, "-m", "birendo", "config-check", "x; x-1; y", "--json"],
        capture_output=True,
        text=True,
        check=False,
    )
    assert res.returncode == 0
    assert json.loads(res.stdout)["corollary_type"] == "b"


@pytest.mark.parametrize(
    "exc, code",
    [
        ("Stuck", 4),
        ("IrrationalData", 5),
        ("Unresolved", 5),
        ("NotBirational", 2),
    ],
)
def test_exit_code_mapping(capsys, monkeypatch, exc, code):
    import birendo.cli as cli
    import birendo.errors as errors

    def boom(args):
        raise getattr(errors, exc)("synthetic")

    monkeypatch.setattr(cli, "cmd_info", boom)
    got, out, err = run(capsys, "info", "x ; y")
    assert got == code and exc in err

import json

from braidmono.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_fixtures_list(capsys):
    code, out, _ = run(capsys, "fixtures")
    assert code == 0
    assert "cayley" in out.splitlines()


def test_validate_complete_fixture(capsys):
    code, out, _ = run(capsys, "validate", "--fixture", "cayley")
    assert code == 0
    assert "product equals full twist: yes" in out
    assert "4 branch, 4 node, 6 cusp" in out


def test_validate_incomplete_fixture_exits_one(capsys):
    code, out, _ = run(capsys, "validate", "--fixture", "delta-tilde")
    assert code == 1
    assert "forgetting degree of pair 1,1': 1" in out


def test_validate_bad_file_exits_two(tmp_path, capsys):
    path = tmp_path / "broken.bmf"
    path.write_text("strands 2 labels 1,2\nZ{1,\n", encoding="utf-8")
    code, _, err = run(capsys, "validate", "--input", str(path))
    assert code == 2
    assert "error" in err


def test_validate_missing_input_exits_two(capsys):
    code, _, err = run(capsys, "validate")
    assert code == 2


def test_census_structured(capsys):
    code, out, _ = run(capsys, "census", "--fixture", "conic", "--format", "structured")
    assert code == 0
    payload = json.loads(out)
    assert payload["census"]["total"] == 12


def test_forget(capsys):
    code, out, _ = run(capsys, "forget", "--fixture", "delta-tilde", "--pair", "2")
    assert code == 0
    assert "deg f_2 = 2" in out


def test_complete_outputs_the_complete_factorization(capsys):
    code, out, _ = run(capsys, "complete", "--fixture", "delta-tilde")
    assert code == 0
    assert out.rstrip().endswith("Z{3,3'}")


def test_pi1_simplified(capsys):
    code, out, _ = run(capsys, "pi1", "--fixture", "cayley", "--simplify")
    assert code == 0
    assert "gens: γ1 γ2 γ3" in out
    assert out.count("rel: ") == 4


def test_pi1_projective_abelianized(capsys):
    code, out, _ = run(
        capsys, "pi1", "--fixture", "cayley", "--projective", "--simplify", "--abelianize"
    )
    assert code == 0
    assert "abelianization: Z/6" in out


def test_surface_pi1_rs(capsys):
    code, out, _ = run(capsys, "surface-pi1", "--fixture", "cayley", "--method", "rs")
    assert code == 0
    assert "group: Z/2" in out
    assert out.count("η_") >= 9


def test_surface_pi1_mcg(capsys):
    code, out, _ = run(capsys, "surface-pi1", "--fixture", "cayley", "--method", "mcg")
    assert code == 0
    assert "group: Z/2" in out
    assert "composition is identity: yes" in out


def test_methods_agree(capsys):
    _, rs_out, _ = run(capsys, "surface-pi1", "--fixture", "cayley", "--method", "rs")
    _, mcg_out, _ = run(capsys, "surface-pi1", "--fixture", "cayley", "--method", "mcg")
    assert rs_out.splitlines()[-1] == mcg_out.splitlines()[-1] == "group: Z/2"


def test_structured_reports_are_reproducible(capsys):
    first = run(capsys, "surface-pi1", "--fixture", "cayley", "--method", "mcg", "--format", "structured")
    second = run(capsys, "surface-pi1", "--fixture", "cayley", "--method", "mcg", "--format", "structured")
    assert first == second
    payload = json.loads(first[1])
    assert payload["group"]["invariant_factors"] == [2]


def test_regenerate_rule_three(capsys):
    code, out, _ = run(
        capsys,
        "regenerate",
        "--fixture",
        "conic",
        "--factor",
        "3",
        "--rule",
        "3",
        "--doubling",
        "second",
    )
    assert code == 0
    assert out.count("Z{2,3}^3") == 3


def test_lift_command(capsys):
    code, out, _ = run(capsys, "lift", "--fixture", "cayley")
    assert code == 0
    assert "composition is identity: yes" in out


def test_pi1_structured_dump_fields(capsys):
    code, out, _ = run(
        capsys, "pi1", "--fixture", "cayley", "--simplify", "--format", "structured"
    )
    assert code == 0
    payload = json.loads(out)
    assert set(payload) >= {"generators", "relators", "moves"}
    assert payload["generators"] == ["γ1", "γ2", "γ3"]

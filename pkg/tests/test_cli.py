import json

from liequiv.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_verify_all_theorem_dim3(capsys):
    code, out, _ = run(capsys, "verify", "--dim", "3", "--gen", "all-theorem",
                       "--format", "json")
    assert code == 0
    payload = json.loads(out)
    assert payload["status"] == "pass"
    assert len(payload["results"]) == 11
    for entry in payload["results"]:
        assert entry["infinitesimal"]["status"] == "zero"
        assert entry["finite"]["status"] == "pass"
        assert entry["agreement"] is True


def test_verify_naive_rotation_fails(capsys):
    code, out, _ = run(capsys, "verify", "--dim", "2", "--gen", "J12_naive")
    assert code == 1
    assert "nonzero" in out
    assert "witness" in out


def test_verify_dsl_generator(capsys):
    code, out, _ = run(capsys, "verify", "--dim", "1", "--gen",
                       "t*d/dx1 + d/du1", "--format", "json")
    assert code == 0
    payload = json.loads(out)
    assert payload["results"][0]["generator"] == "user"
    assert payload["results"][0]["finite"]["available"] is False


def test_usage_errors_exit_2(capsys):
    assert run(capsys, "verify", "--dim", "5", "--gen", "all")[0] == 2
    assert run(capsys, "verify", "--dim", "2", "--gen", "nonsense")[0] == 2
    assert run(capsys, "nope")[0] == 2
    code, _, err = run(capsys, "verify", "--dim", "2", "--gen", "q*d/dp")
    assert code == 2
    assert "unknown coordinate: q" in err
    assert run(capsys, "transform", "--dim", "2", "--gen", "J12_naive")[0] == 2


def test_bracket_table_cell(capsys):
    code, out, _ = run(capsys, "bracket", "--dim", "3", "--table",
                       "--format", "json")
    assert code == 0
    payload = json.loads(out)
    assert payload["closed"] is True
    names = payload["basis"]
    assert len(names) == 11
    table = payload["table"]
    assert table[names.index("X0")][names.index("Y1")] == "X1"
    assert table[names.index("Y1")][names.index("X0")] == "-X1"
    # antisymmetric with zero diagonal
    for i in range(len(names)):
        assert table[i][i] == "0"


def test_bracket_pair(capsys):
    code, out, _ = run(capsys, "bracket", "--dim", "2", "--pair", "S,Z1",
                       "--format", "json")
    assert code == 0
    payload = json.loads(out)
    assert payload["value"] == "2*S"


def test_deteq_reports_split_system(capsys):
    code, out, _ = run(capsys, "deteq", "--dim", "1", "--gen",
                       "x1*d/dx1 + u1*d/du1 + ?a*p*d/dp + ?b*Pi11*d/dPi11 + ?c*G*d/dG",
                       "--format", "json")
    assert code == 0
    payload = json.loads(out)
    eqs = payload["results"][0]["equations"]
    assert [e["equation"] for e in eqs] == ["mass", "momentum_1", "pressure"]
    momentum_terms = eqs[1]["terms"]
    assert momentum_terms, "splitting the scaling family must constrain it"
    coeffs = {t["monomial"]: t["coefficient"] for t in momentum_terms}
    assert any("?a" in c or "?b" in c or "?c" in c for c in coeffs.values())


def test_transform_scaling(capsys):
    code, out, _ = run(capsys, "transform", "--dim", "1", "--gen", "Z1",
                       "--format", "json")
    assert code == 0
    payload = json.loads(out)
    factors = {e["equation"]: e["factor"] for e in payload["equations"]}
    assert factors == {"mass": "1", "momentum_1": "exp(a)",
                       "pressure": "exp(2*a)"}
    maps = {m["coordinate"]: m["image"] for m in payload["maps"]}
    assert maps["p"] == "exp(a)**2*p"


def test_transform_with_rational_parameter(capsys):
    code, out, _ = run(capsys, "transform", "--dim", "1", "--gen", "X0",
                       "--param", "3/2", "--format", "json")
    assert code == 0
    payload = json.loads(out)
    assert payload["parameter"] == "3/2"
    maps = {m["coordinate"]: m["image"] for m in payload["maps"]}
    assert maps["t"] == "3/2 + t"


def test_list_catalog(capsys):
    code, out, _ = run(capsys, "list", "--dim", "2", "--format", "json")
    assert code == 0
    payload = json.loads(out)
    names = [e["name"] for e in payload["entries"]]
    assert names[:4] == ["X0", "X1", "X2", "S"]
    z1 = [e for e in payload["entries"] if e["name"] == "Z1"][0]
    assert z1["dsl"].startswith("x1*d/dx1 + x2*d/dx2")


def test_generator_file_selector(tmp_path, capsys):
    body = "\n".join([
        "# two equivalent boosts",
        "boost1 = t*d/dx1 + d/du1",
        "t*d/dx2 + d/du2",
        "",
    ])
    path = tmp_path / "gens.dsl"
    path.write_text(body, encoding="utf-8")
    code, out, _ = run(capsys, "verify", "--dim", "2", "--gen", f"@{path}",
                       "--format", "json")
    assert code == 0
    payload = json.loads(out)
    assert [r["generator"] for r in payload["results"]] == ["boost1", "user_3"]
    assert all(r["infinitesimal"]["status"] == "zero"
               for r in payload["results"])


def test_out_writes_file(tmp_path, capsys):
    target = tmp_path / "report.json"
    code, out, _ = run(capsys, "verify", "--dim", "1", "--gen", "X0",
                       "--format", "json", "--out", str(target))
    assert code == 0
    assert out == ""
    text = target.read_text(encoding="utf-8")
    assert text.endswith("\n")
    assert json.loads(text)["status"] == "pass"


def test_reports_are_byte_identical(tmp_path, capsys):
    a = tmp_path / "a.json"
    b = tmp_path / "b.json"
    for target in (a, b):
        code = main(["verify", "--dim", "2", "--gen", "all-theorem",
                     "--format", "json", "--out", str(target)])
        assert code == 0
        capsys.readouterr()
    assert a.read_bytes() == b.read_bytes()

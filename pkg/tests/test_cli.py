import io
import json
import subprocess
import sys

import pytest

from gabidulin_fx.cli import main, regenerate_fixture
from gabidulin_fx.config import FIXTURES, CodeConfig, fixture_dir, load_fixture
from gabidulin_fx.errors import ValidationError

KUMMER = str(fixture_dir("kummer-f16") / "config.toml")
ARTIN = str(fixture_dir("artin-schreier-f5") / "config.toml")


def run(*argv):
    out = io.StringIO()
    code = main(list(argv), out)
    return code, out.getvalue()


def write_json(tmp_path, name, obj):
    p = tmp_path / name
    p.write_text(json.dumps(obj, ensure_ascii=False), encoding="utf-8")
    return str(p)


def test_build(examples):
    code, out = run("build", KUMMER)
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "n=5 k=3 d=3 t=1"
    assert lines[2] == "G ="
    grid = lines[3:]
    assert [row.split() for row in grid] == examples["kummer_generator"]
    code, out = run("build", ARTIN)
    assert code == 0 and "y^3 + y^2 + 2*y + 3" in out


def test_build_rejects_power(tmp_path, capsys):
    cfg = tmp_path / "bad.toml"
    cfg.write_text(open(KUMMER, encoding="utf-8").read().replace('u = "x"', 'u = "x^5"'),
                   encoding="utf-8")
    assert run("build", str(cfg))[0] == 3
    assert "5th power" in capsys.readouterr().err


def test_build_reports_malformed_config(tmp_path, capsys):
    cfg = tmp_path / "bad.toml"
    cfg.write_text("[field]\np = 2\n", encoding="utf-8")
    assert run("build", str(cfg))[0] == 3
    assert run("build", str(tmp_path / "missing.toml"))[0] == 3


@pytest.mark.parametrize("name,pre", [("kummer-f16", "kummer"), ("artin-schreier-f5", "as")])
def test_encode_matches_goldens(name, pre, tmp_path, examples):
    d = fixture_dir(name)
    code, out = run("encode", str(d / "config.toml"), str(d / "message.json"),
                    "--out-dir", str(tmp_path))
    assert code == 0
    result = json.loads(out)
    assert result["codeword"] == examples[f"{pre}_codeword"]
    assert result["matrix"]["entries"] == examples[f"{pre}_matrix"]
    assert (tmp_path / "codeword.json").read_bytes() == (d / "codeword.json").read_bytes()
    assert (tmp_path / "matrix.json").read_bytes() == (d / "matrix.json").read_bytes()


def test_encode_zero_message(tmp_path):
    code, out = run("encode", KUMMER, write_json(tmp_path, "m.json", ["0", "0", "0"]))
    assert code == 0
    result = json.loads(out)
    assert result["codeword"] == ["0"] * 5
    assert result["matrix"]["entries"] == [["0"] * 5] * 5


def test_encode_errors(tmp_path):
    assert run("encode", KUMMER, write_json(tmp_path, "m.json", ["1"]))[0] == 3
    assert run("encode", KUMMER, write_json(tmp_path, "m.json", ["y^7", "0", "0"]))[0] == 3
    bad = tmp_path / "bad.json"
    bad.write_text("not json", encoding="utf-8")
    assert run("encode", KUMMER, str(bad))[0] == 3
    assert run("encode", KUMMER)[0] == 3


def test_encode_is_deterministic():
    a = run("encode", ARTIN, "--random", "5", "--error-rank", "1", "--error-seed", "2")
    b = run("encode", ARTIN, "--random", "5", "--error-rank", "1", "--error-seed", "2")
    assert a == b and a[0] == 0
    c = run("encode", ARTIN, "--random", "5", "--polynomial")[1]
    assert "/" not in "".join(json.loads(c)["codeword"])


def test_round_trip_of_emitted_strings(tmp_path):
    cfg = CodeConfig.load(KUMMER)
    ext = cfg.build_extension()
    _, out = run("encode", KUMMER, "--random", "3", "--error-rank", "1")
    result = json.loads(out)
    for key in ("message", "codeword", "error", "received"):
        for s in result[key]:
            assert str(ext.parse(s)) == s


def test_decode_corrupted_example(tmp_path, examples):
    d = fixture_dir("kummer-f16")
    _, out = run("encode", KUMMER, str(d / "message.json"), "--error-rank", "1",
                 "--error-seed", "11")
    received = write_json(tmp_path, "r.json", json.loads(out))
    code, out = run("decode", KUMMER, received, "--verbose")
    assert code == 0
    res = json.loads(out)
    assert res["success"] and res["message"] == examples["kummer_message"]
    assert res["error_rank"] == 1
    assert {"W", "N", "f", "error"} <= set(res)


def test_decode_clean(tmp_path, examples):
    path = write_json(tmp_path, "c.json", {"codeword": examples["as_codeword"]})
    code, out = run("decode", ARTIN, path)
    assert code == 0
    res = json.loads(out)
    assert res["message"] == examples["as_message"] and res["error_rank"] == 0


def test_decode_failure_exit_code(tmp_path):
    garbage = ["y^4 + x*y", "(1)/(x + 1)*y^3 + y", "x^2*y^2 + 1", "(x)/(x + β)*y", "β*y^4 + y^2"]
    code, out = run("decode", KUMMER, write_json(tmp_path, "g.json", garbage))
    assert code == 4
    assert json.loads(out) == {"success": False, "reason": "nonzero-remainder"}


def test_weight(tmp_path, examples):
    assert run("weight", KUMMER, write_json(tmp_path, "z.json", ["0"] * 5)) == (0, "0\n")
    basis = ["1", "y", "y^2", "y^3", "y^4"]
    assert run("weight", KUMMER, write_json(tmp_path, "b.json", basis)) == (0, "5\n")
    code, out = run("weight", KUMMER, write_json(tmp_path, "c.json", examples["kummer_codeword"]),
                    "-v")
    assert code == 0
    w = int(out.splitlines()[-1].split()[-1])
    assert w >= 3
    assert f"rank of coordinate matrix: {w}" in out
    assert f"θ-degree of minimal vanishing polynomial: {w}" in out
    assert run("weight", KUMMER, write_json(tmp_path, "bad.json", ["y +"]))[0] == 3


def test_simulate_is_reproducible():
    args = ("simulate", ARTIN, "--trials", "6", "--seed", "4", "--no-timing")
    a, b = run(*args), run(*args)
    assert a == b and a[0] == 0
    lines = a[1].splitlines()
    assert lines[0] == "trial,error_rank_actual,success,decode_ms"
    assert [ln.split(",")[:3] for ln in lines[1:7]] == [[str(i), "1", "1"] for i in range(6)]
    assert lines[-1].startswith("#") and "success_rate=1.0000" in lines[-1]
    assert "seed=4" in lines[-1] and "deg_bound=2" in lines[-1]


def test_simulate_parallel_matches_serial():
    args = ("simulate", ARTIN, "--trials", "4", "--seed", "9", "--no-timing")
    assert run(*args, "--jobs", "2") == run(*args)


def test_simulate_zero_and_high_rank():
    code, out = run("simulate", ARTIN, "--trials", "3", "--error-rank", "0", "--no-timing")
    assert code == 0 and "success_rate=1.0000" in out
    code, out = run("simulate", ARTIN, "--trials", "3", "--error-rank", "2", "--no-timing")
    assert code == 0 and all(ln.split(",")[1] == "2" for ln in out.splitlines()[1:4])
    assert run("simulate", ARTIN, "--error-rank", "9")[0] == 3


def test_simulate_timing_column():
    _, out = run("simulate", ARTIN, "--trials", "2")
    ms = [float(ln.split(",")[3]) for ln in out.splitlines()[1:3]]
    assert all(v > 0 for v in ms)


@pytest.mark.parametrize("name", FIXTURES)
def test_reproduce(name):
    code, out = run("reproduce", "--fixture", name)
    assert code == 0
    assert out.splitlines()[-1] == f"reproduced: {name}"


def test_reproduce_detects_mismatch(monkeypatch):
    import gabidulin_fx.cli as cli

    real = cli.regenerate_fixture

    def tampered(name):
        files = real(name)
        files["codeword.json"] = files["codeword.json"].replace("β^3", "β^4", 1)
        return files

    monkeypatch.setattr(cli, "regenerate_fixture", tampered)
    code, out = run("reproduce", "--fixture", "kummer-f16")
    assert code == 1 and "FAIL  kummer-f16/codeword.json" in out


def test_usage_errors():
    with pytest.raises(SystemExit) as exc:
        main(["reproduce", "--fixture", "nope"])
    assert exc.value.code == 2
    with pytest.raises(SystemExit) as exc:
        main([])
    assert exc.value.code == 2


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "gabidulin_fx", "reproduce", "--fixture",
                           "artin-schreier-f5"], capture_output=True, text=True)
    assert proc.returncode == 0 and "reproduced" in proc.stdout


def test_load_fixture_contents():
    cfg, files = load_fixture("kummer-f16")
    assert cfg.extension["alpha"] == "β^3"
    assert set(files) == {"message", "generator", "codeword", "matrix", "conjugates"}
    assert regenerate_fixture("kummer-f16")["matrix.json"].endswith("\n")


def test_config_validation(tmp_path):
    with pytest.raises(ValidationError):
        CodeConfig.from_dict({"field": {"p": 5}})
    base = {"field": {"p": 5}, "extension": {"kind": "artin-schreier", "u": "x"}, "code": {}}
    with pytest.raises(ValidationError):
        CodeConfig.from_dict(base).build()
    bad = dict(base, extension={"kind": "cubic", "u": "x"}, code={"k": 2})
    with pytest.raises(ValidationError):
        CodeConfig.from_dict(bad).build()
    bad = dict(base, extension={"kind": "artin-schreier", "u": "x", "n": 3}, code={"k": 2})
    with pytest.raises(ValidationError):
        CodeConfig.from_dict(bad).build()
    bad = {"field": {"p": 2, "m": 3, "modulus": [1, 1, 0, 0, 1]},
           "extension": {"kind": "kummer", "u": "x", "n": 5}, "code": {"k": 2}}
    with pytest.raises(ValidationError):
        CodeConfig.from_dict(bad).build()
    good = dict(base, code={"k": 2, "g": ["1", "y", "y^2"]})
    code = CodeConfig.from_dict(good).build()
    assert code.n == 3 and code.k == 2

import json
import subprocess
import sys
from fractions import Fraction

import pytest

from rwps import ConfigError, FieldElement, FourierTable
from rwps.cli import main, parse_config, poly_from_json, run

ULTRA_HALF = '{"kind": "ultraspherical", "alpha": "1/2"}'


def invoke(capsys, *args):
    status = main(list(args))
    out, err = capsys.readouterr()
    return status, out, err


def test_parse_config_examples():
    assert parse_config(b'{"command":"minpoly","k":5}').k == 5
    cfg = parse_config(b'{"command":"expand","family":{"kind":"ultraspherical","alpha":"1/2"},"k":2,"m":5}')
    assert cfg.m == 5 and cfg.family.c(1) == Fraction(1, 4)
    with pytest.raises(ConfigError) as info:
        parse_config(b'{"command":"expand","family":{"kind":"table","c":["3/2"]},"k":2,"m":3}')
    assert info.value.path == "family.c[0]"


@pytest.mark.parametrize(
    "text, path",
    [
        (b'{"command":"expand","k":2,"m":3}', "family"),
        (b'{"command":"minpoly"}', "k"),
        (b'{"command":"minpoly","k":0}', "k"),
        (b'{"command":"bogus"}', "command"),
        (b'{"command":"minpoly","k":3,"output":"xml"}', "output"),
        (b'{"command":"characterize","family":{"kind":"chebyshev_t"},"k":2,"horizon":3}', "horizon"),
        (b'{"command":"expand","family":{"kind":"table","c":["1/0"]},"k":2,"m":3}', "family.c[0]"),
        (b"[1, 2]", ""),
        (b"\xff", ""),
    ],
)
def test_parse_config_errors(text, path):
    with pytest.raises(ConfigError) as info:
        parse_config(text)
    assert info.value.path == path


def test_minpoly_and_expand(capsys):
    assert invoke(capsys, "minpoly", "--k", "5")[:2] == (0, "x^2 - x - 1\n")
    status, out, _ = invoke(capsys, "expand", "--family-json", ULTRA_HALF, "--k", "2", "--m", "5")
    assert (status, out) == (0, "1/2*T5 + 1/6*T3 + 1/3*T1\n")


def test_characterize_exit_codes(capsys):
    status, out, _ = invoke(capsys, "characterize", "--family-json", ULTRA_HALF, "--k", "2", "--format", "json")
    assert status == 1
    data = json.loads(out)
    assert data["conditions"][0]["n"] == 1
    sieved = '{"kind": "sieved", "k": 3, "inner": {"kind": "random", "seed": 4, "length": 20}}'
    assert invoke(capsys, "characterize", "--family-json", sieved, "--k", "3")[0] == 0
    only_multiples_of_3 = json.dumps({"kind": "table", "c": ["1/2", "1/2", "1/3", "1/2", "1/2", "1/5"] + ["1/2"] * 30})
    assert invoke(capsys, "characterize", "--family-json", only_multiples_of_3, "--k", "3")[0] == 0
    perturbed = json.dumps({"kind": "table", "c": ["1/2", "1/3", "1/3"] + ["1/2"] * 30})
    assert invoke(capsys, "characterize", "--family-json", perturbed, "--k", "3")[0] == 1


def test_weakened_mode(capsys):
    status, out, _ = invoke(capsys, "characterize", "--family-json", ULTRA_HALF, "--k", "1", "--mode", "weakened")
    assert status == 0 and "holds up to 24" in out
    status, out, _ = invoke(capsys, "characterize", "--family-json", ULTRA_HALF, "--k", "2", "--mode", "weakened")
    assert status == 1 and "fails at n=1" in out


def test_input_errors_exit_2(capsys):
    status, out, err = invoke(capsys, "expand", "--family-json", '{"kind":"table","c":["3/2"]}', "--k", "2", "--m", "3")
    assert status == 2 and out == "" and "family.c[0]" in err
    status, _, err = invoke(capsys, "expand", "--family-json", '{"kind":"table","c":["1/3"]}', "--k", "2", "--m", "9")
    assert status == 2 and "only defines c_1..c_1" in err
    assert invoke(capsys, "expand", "--family-json", "{nope", "--k", "2", "--m", "3")[0] == 2


def test_config_file_and_out_file(tmp_path, capsys):
    cfg = tmp_path / "run.json"
    cfg.write_text(json.dumps({"command": "tables", "family": json.loads(ULTRA_HALF), "N": 3, "output": "csv"}))
    target = tmp_path / "tables.csv"
    status, out, _ = invoke(capsys, "tables", "--config", str(cfg), "--out", str(target))
    assert status == 0 and out == ""
    lines = target.read_text().splitlines()
    assert lines[0] == "table,n,j,value"
    assert "p,2,0,1/6" in lines and "q,2,1,1/3" in lines


def test_json_outputs_round_trip(capsys):
    status, out, _ = invoke(capsys, "operator", "--family-json", ULTRA_HALF, "--k", "5", "--n", "3", "--format", "json")
    data = json.loads(out)
    P = poly_from_json(data["polynomial"])
    assert status == 0 and P.render() == data["text"]
    assert all(isinstance(c, FieldElement) for _, c in P.items())

    status, out, _ = invoke(capsys, "fourier", "--family-json", ULTRA_HALF, "--k", "2", "--N", "3", "--format", "json")
    table = FourierTable.from_json(json.loads(out))
    assert table.sigma(3) == FieldElement.from_rational(2, -1) / 6


def test_latex_output_is_tabular(capsys):
    status, out, _ = invoke(capsys, "tables", "--family-json", ULTRA_HALF, "--N", "4", "--format", "latex")
    assert status == 0
    assert out.count("\\begin{tabular}") == 3 and "\\frac{1}{6}" in out
    status, out, _ = invoke(capsys, "characterize", "--family-json", ULTRA_HALF, "--k", "2", "--format", "latex")
    assert "\\begin{tabular}" in out


def test_output_is_deterministic(capsys):
    args = ("characterize", "--family-json", '{"kind":"random","length":40}', "--seed", "9", "--k", "3", "--format", "json")
    first = invoke(capsys, *args)
    second = invoke(capsys, *args)
    assert first == second


def test_run_returns_status_and_text():
    status, text = run(parse_config('{"command":"minpoly","k":7,"output":"json"}'))
    assert status == 0 and json.loads(text)["coefficients"] == [1, -2, -1, 1]


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "rwps", "minpoly", "--k", "4"], capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout == "x^2 - 2\n"

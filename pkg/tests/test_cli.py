import hashlib
import io
import json
from importlib import resources

import pytest

from slopeforge import cache as cache_mod
from slopeforge.basis import WeightCharacter
from slopeforge.cli import main
from slopeforge.newton import char_series
from slopeforge.reference import EXAMPLE_SHA256, load_reference, reproduce_example
from slopeforge.upmatrix import build_truncation

W11 = WeightCharacter(1, 1)


def run(*argv):
    out = io.StringIO()
    code = main(list(argv), out)
    return code, out.getvalue()


def test_reference_file_checksum():
    raw = resources.files("slopeforge").joinpath("data/example_u4_n10.json").read_bytes()
    assert hashlib.sha256(raw).hexdigest() == EXAMPLE_SHA256
    ref = load_reference()
    assert ref.slopes.pretty() == "[2,2],[4,2],[6,4],[8,2]"
    assert sum(v.is_inf for row in ref.valuations for v in row) == 46


def test_reproduce_example_default():
    code, out = run("reproduce-example")
    assert code == 0
    assert out.strip().splitlines()[-1] == "100/100 cells match, slopes match: [2,2],[4,2],[6,4],[8,2]"


def test_reproduce_example_other_unit():
    assert run("reproduce-example", "--d2", "3")[0] == 0
    assert run("reproduce-example", "--d2", "1+2*z")[0] == 0


def test_reproduce_example_fault_names_cell():
    code, out = run("reproduce-example", "--inject-fault", "2,1")
    assert code == 1
    assert out.splitlines()[0].startswith("cell (2,1):")
    assert "99/100 cells match" in out


def test_reproduce_example_api():
    code, lines = reproduce_example(fault=(5, 5))
    assert code == 1 and lines[0] == "cell (5,5): expected 4, got 5"


@pytest.mark.parametrize("method", ["charpoly", "blocks", "serre"])
def test_slopes_methods(method):
    code, out = run("slopes", "--weight", "1,1", "--size", "10", "--method", method)
    assert code == 0
    assert out == "[2,2],[4,2],[6,4],[8,2]\n"


def test_slopes_json():
    code, out = run("slopes", "--weight", "1,1", "--size", "10", "--format", "json")
    data = json.loads(out)
    assert data["slopes"] == [[2, 1, 2], [4, 1, 2], [6, 1, 4], [8, 1, 2]]


def test_predict_pretty_and_json():
    code, out = run("predict", "--weight", "1,1", "--pairs", "5")
    assert code == 0
    assert out.splitlines()[-1] == "[2,2],[4,2],[6,4],[8,2]"
    assert out.splitlines()[1] == "(3,0) chi_tau3: [4,1],[6,1]"
    code, out = run("predict", "--weight", "1,1", "--pairs", "5", "--format", "json")
    assert json.loads(out)["pairs"][0] == {"leader": [0, 0], "char": "chi", "slopes": [[2, 1, 2]]}


def test_verify_exit_codes():
    code, out = run("verify", "--weight", "1,1", "--size", "10")
    assert code == 0 and "MATCH" in out
    code, out = run("verify", "--weight", "3,5", "--size", "12", "--format", "json")
    data = json.loads(out)
    assert code == 0 and data["match"] and len(data["per_pair"]) == 6


def test_basis_json():
    code, out = run("basis", "--weight", "1,1", "--pairs", "3")
    data = json.loads(out)
    assert code == 0
    assert data["leaders"] == [[0, 0], [3, 0], [0, 3]]
    assert data["pairs"][1] == [[3, 0], [4, 1]]


@pytest.mark.parametrize("fmt", ["csv", "json", "pretty"])
def test_matrix_valuations(fmt):
    code, out = run("matrix", "--weight", "1,1", "--size", "10", "--valuations", "--format", fmt)
    assert code == 0
    if fmt == "csv":
        assert out.splitlines()[1] == "4,*,3,3,3,3,6,2,7,2"
    elif fmt == "json":
        assert json.loads(out)["valuations"][0][:3] == ["*", "0", "0"]
    else:
        assert len(out.splitlines()) == 10


def test_matrix_entries_are_exact_strings():
    code, out = run("matrix", "--weight", "1,1", "--size", "2", "--format", "json")
    entries = json.loads(out)["entries"]
    assert entries[0][0] == "0"
    assert all(isinstance(x, str) for row in entries for x in row)


@pytest.mark.parametrize("conv", ["rowmin", "smith"])
def test_hodge(conv):
    code, out = run("hodge", "--weight", "1,1", "--size", "10", "--convention", conv, "--format", "json")
    data = json.loads(out)
    assert code == 0
    assert data["touching"][0] == 0
    assert all(k in (0, 10) for k in data["touching"])


@pytest.mark.parametrize(
    "argv",
    [
        ["slopes", "--weight", "2,1", "--size", "10"],
        ["slopes", "--weight", "1,1", "--size", "9"],
        ["slopes", "--weight", "1", "--size", "10"],
        ["predict", "--weight", "1,1", "--pairs", "0"],
        ["matrix", "--weight", "1,1", "--size", "4", "--d2", "2"],
        ["slopes", "--weight", "1,1", "--size", "24", "--method", "serre"],
        ["frobnicate"],
        [],
    ],
)
def test_usage_errors(argv, capsys):
    assert run(*argv)[0] == 2


@pytest.mark.parametrize(
    "argv",
    [
        ["matrix", "--weight", "3,5", "--size", "8", "--format", "csv"],
        ["slopes", "--weight", "3,5", "--size", "12", "--format", "json"],
        ["predict", "--weight", "5,3", "--pairs", "7", "--format", "json"],
        ["hodge", "--weight", "1,1", "--size", "8"],
    ],
)
def test_deterministic_output(argv):
    assert run(*argv) == run(*argv)


def test_cache_roundtrip(tmp_path):
    c = cache_mod.CharSeriesCache(tmp_path)
    cs = char_series(build_truncation(W11, 10))
    assert c.load(W11, 10, 1) is None
    c.store(W11, 10, 1, cs)
    assert c.load(W11, 10, 1) == cs
    assert [p.name for p in tmp_path.iterdir()] == ["w1_1_N10_d2_1.json"]


def test_cache_missing_then_present(tmp_path):
    cs = cache_mod.cached_char_series(W11, 8, cache_dir=tmp_path)
    assert cs == char_series(build_truncation(W11, 8))
    assert len(list(tmp_path.iterdir())) == 1
    assert cache_mod.cached_char_series(W11, 8, cache_dir=tmp_path) == cs


def test_cache_tampered_file(tmp_path):
    cs = cache_mod.cached_char_series(W11, 8, cache_dir=tmp_path)
    (path,) = tmp_path.iterdir()
    data = json.loads(path.read_text())
    data["coeffs"][3] = "12345"
    path.write_text(json.dumps(data))
    with pytest.warns(UserWarning, match="corrupt"):
        again = cache_mod.cached_char_series(W11, 8, cache_dir=tmp_path)
    assert again == cs
    assert json.loads(path.read_text())["coeffs"] == cs.to_strings()


def test_cache_garbage_file(tmp_path):
    c = cache_mod.CharSeriesCache(tmp_path)
    c.path(W11, 8, 1).write_text("not json")
    with pytest.warns(UserWarning):
        assert c.load(W11, 8, 1) is None


def test_cache_env_var(tmp_path, monkeypatch):
    monkeypatch.setenv(cache_mod.ENV_VAR, str(tmp_path))
    code, out = run("slopes", "--weight", "1,1", "--size", "10")
    assert code == 0
    assert (tmp_path / "w1_1_N10_d2_1.json").exists()
    assert run("slopes", "--weight", "1,1", "--size", "10") == (code, out)

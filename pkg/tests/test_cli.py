import json
import subprocess
import sys

import pytest

from hklat.cli import main
from hklat.lattice import parse_lattice


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def run_json(capsys, *argv):
    code, out, err = run(capsys, *argv)
    return code, (json.loads(out) if out else None), (json.loads(err.strip().splitlines()[-1]) if err else None)


def test_info_k3(capsys):
    code, out, _ = run_json(capsys, "info", "--catalog", "K3")
    assert code == 0
    assert out["signature"] == [3, 0, 19]
    assert out["abs_discriminant"] == 1 and out["value_divisor"] == 2 and out["even"] is True


def test_info_degenerate(capsys):
    code, out, _ = run_json(capsys, "info", "--gram", "[[0]]")
    assert code == 0 and out["signature"] == [0, 1, 0] and out["determinant"] == 0


@pytest.mark.parametrize("argv", [
    ["info", "--gram", "[[1,2],[3,4]]"],
    ["info", "--gram", "[[1,2],[2]]"],
    ["info", "--gram", "not json"],
    ["info", "--gram", "[[1.5]]"],
    ["info"],
    ["info", "--gram", "[[1]]", "--catalog", "K3"],
    ["info", "--file", "/nonexistent/lattice.json"],
    ["frobnicate"],
    ["round", "--gram", "[[0,1],[1,0]]"],
    ["round", "--gram", "[[0,1],[1,0]]", "--mbm-squares", "-2,x"],
    ["quotient", "--gram", "[[0,1],[1,0]]", "--vector", "[1, \"a\"]"],
])
def test_input_errors_exit_2(capsys, argv):
    code, out, err = run(capsys, *argv)
    assert code == 2 and out == ""
    assert json.loads(err.strip().splitlines()[-1])["error"]


def test_asymmetric_message_names_entries(capsys):
    _, _, err = run_json(capsys, "info", "--gram", "[[1,2],[3,4]]")
    assert err["message"] == "info: gram is not symmetric: entry (0,1) = 2 but (1,0) = 3"
    _, _, err = run_json(capsys, "info", "--gram", "[[1,2],[2]]")
    assert "row 1" in err["message"]


@pytest.mark.parametrize("argv", [
    ["embed-un", "--gram", "[[0,1],[1,0]]", "--min-n", "1"],
    ["embed-un", "--gram", "[[1,0,0],[0,1,0],[0,0,1]]", "--min-n", "1"],
    ["quotient", "--gram", "[[0,1],[1,0]]", "--vector", "[1,1]"],
    ["catalog", "show", "Kum_n", "--n", "1"],
    ["catalog", "show", "nope"],
    ["chambers", "--gram", "[[1,0],[0,1]]", "--mbm-squares", "-2"],
])
def test_contract_violations_exit_1(capsys, argv):
    code, out, err = run_json(capsys, *argv)
    assert code == 1 and out is None
    assert err["message"].startswith(argv[0] if argv[0] != "catalog" else "catalog")


def test_unsupported_rank_error_kind(capsys):
    _, _, err = run_json(capsys, "embed-un", "--gram", "[[0,1],[1,0]]", "--min-n", "1")
    assert err["error"] == "UnsupportedRank"


def test_embed_un_k3(capsys):
    code, out, _ = run_json(capsys, "embed-un", "--catalog", "K3", "--min-n", "2")
    assert code == 0 and out["status"] == "Witness"
    w = out["witness"]
    assert w["n"] >= 3 and w["saturation_index"] == 1
    assert w["certificate"] == {"primitive": True, "gram_check": True}
    assert w["ambient"]["rank"] == 22


def test_embed_un_exhausted_exit_3(capsys):
    code, out, _ = run_json(capsys, "embed-un", "--gram", "[[0,1,0],[1,0,0],[0,0,-2]]",
                            "--min-n", "3", "--max-candidates", "500")
    assert code == 3 and out["status"] == "Exhausted" and out["candidates_tried"] == 500


def test_round_rank2(capsys):
    code, out, _ = run_json(capsys, "round", "--gram", "[[0,5],[5,0]]", "--mbm-bound", "2")
    assert code == 0 and out["status"] == "CertifiedRound" and out["divisor"] == 10
    code, out, _ = run_json(capsys, "round", "--gram", "[[0,1],[1,0]]", "--mbm-squares", "-2")
    assert code == 0 and out["status"] == "WallFound" and out["alpha"] == [1, -1]
    code, out, _ = run_json(capsys, "round", "--gram", "[[2,0],[0,-6]]", "--mbm-squares", "-2")
    assert code == 3 and out["status"] == "Unknown"


def test_round_higher_rank(capsys):
    code, out, _ = run_json(capsys, "round", "--catalog", "K3", "--mbm-bound", "2")
    assert code == 0 and out["divisor_certificate"] == {"value_divisor": 6, "exceeds_mbm_bound": True}


def test_isotropic(capsys):
    code, out, _ = run_json(capsys, "isotropic", "--gram", "[[1,0,0],[0,1,0],[0,0,-2]]")
    assert code == 0 and out["status"] == "Found" and out["strategy"] == "box"
    code, out, _ = run_json(capsys, "isotropic", "--gram", "[[2,0],[0,4]]")
    assert code == 0 and out["status"] == "ProvablyNone"
    code, out, _ = run_json(capsys, "isotropic", "--gram", "[[2,0],[0,-6]]", "--bound", "20")
    assert code == 3 and out["status"] == "Unknown"
    code, out, _ = run_json(capsys, "isotropic", "--gram", "[[0,1],[1,0]]", "--enumerate", "--bound", "3")
    assert out["rays"] == [[0, 1], [1, 0]]


def test_pairs_and_invariants(capsys):
    code, out, _ = run_json(capsys, "pairs", "--gram", "[[0,2],[2,0]]", "--bound", "3")
    assert code == 0 and out["count"] == len(out["pairs"]) == 1
    assert out["pairs"][0]["n"] == 2
    code, out, _ = run_json(capsys, "invariants", "--gram",
                            "[[0,1,0,0],[1,0,0,0],[0,0,0,1],[0,0,1,0]]", "--bound", "2")
    assert code == 0 and out["count"] == len(out["invariants"]) >= 2


def test_chambers(capsys):
    code, out, _ = run_json(capsys, "chambers", "--gram", "[[0,3],[3,0]]", "--mbm-squares", "-2")
    assert code == 0 and (out["wall_count"], out["chamber_count"], out["truncated"]) == (0, 1, False)
    code, out, _ = run_json(capsys, "chambers", "--gram", "[[2,0],[0,-2]]", "--mbm-squares", "-2")
    assert out["walls"][0]["alpha"] == [0, 1] and out["chamber_count"] == 2


def test_quotient_and_saturate(capsys):
    uu = "[[0,1,0,0],[1,0,0,0],[0,0,0,1],[0,0,1,0]]"
    code, out, _ = run_json(capsys, "quotient", "--gram", uu, "--vector", "[1,0,0,0]")
    assert code == 0 and out["signature"] == [1, 0, 1]
    code, out, _ = run_json(capsys, "saturate", "--gram", uu, "--vectors", "[[2,0,0,0],[0,0,2,2]]")
    assert code == 0 and out["index"] == 4
    assert out["basis"] == [[1, 0, 0, 0], [0, 0, 1, 1]]


def test_catalog_commands(capsys, tmp_path):
    code, out, _ = run_json(capsys, "catalog", "list")
    assert code == 0 and out["keys"] == sorted(out["keys"]) and "K3" in out["keys"]
    code, out, _ = run_json(capsys, "catalog", "show", "K3^[n]", "--n", "3")
    assert code == 0 and out["b2"] == 23
    path = tmp_path / "k3n.json"
    path.write_text(json.dumps(out["lattice"]))
    code, info, _ = run_json(capsys, "info", "--file", str(path))
    assert code == 0 and info["lattice"]["rank"] == 23
    assert parse_lattice(out["lattice"]).gram == parse_lattice(json.loads(path.read_text())).gram
    code, direct, _ = run_json(capsys, "info", "--catalog", "K3^[n]", "--n", "3")
    assert direct["lattice"]["hash"] == info["lattice"]["hash"]


def test_determinism(capsys):
    argv = ["embed-un", "--catalog", "OG10", "--min-n", "10"]
    outs = [run(capsys, *argv)[1] for _ in range(2)]
    assert outs[0] == outs[1]


def test_env_budget_override(capsys, monkeypatch):
    monkeypatch.setenv("HKLAT_MAX_CANDIDATES", "200")
    code, out, _ = run_json(capsys, "embed-un", "--gram", "[[0,1,0],[1,0,0],[0,0,-2]]", "--min-n", "3")
    assert code == 3 and out["candidates_tried"] == 200
    monkeypatch.setenv("HKLAT_MAX_CANDIDATES", "lots")
    code, _, err = run_json(capsys, "info", "--catalog", "K3")
    assert code == 0  # info never consults the budget
    code, _, err = run_json(capsys, "isotropic", "--catalog", "K3")
    assert code == 2 and "HKLAT_MAX_CANDIDATES" in err["message"]


def test_text_format(capsys):
    code, out, _ = run(capsys, "info", "--catalog", "OG6", "--format", "text")
    assert code == 0
    assert "signature: [3, 0, 5]" in out and "lattice:" in out


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "hklat", "catalog", "list"], capture_output=True, text=True)
    assert proc.returncode == 0 and "OG10" in json.loads(proc.stdout)["keys"]

import json
import subprocess
import sys

import pytest

from resonator import catalog, specio
from resonator.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, (json.loads(out.out) if out.out else None), out.err


def test_profile_fat_triangle(capsys):
    code, rep, _ = run(capsys, "profile", "@fat-triangle", "--vector", "1,-1,0,0,0,0")
    assert code == 0
    assert rep["results"]["dims"][0] == 1 and rep["exact"]


def test_profile_zero_vector(capsys):
    code, rep, _ = run(capsys, "profile", "@u23")
    assert code == 0 and rep["results"]["dims"] == [1, 3, 2]


def test_profile_field_mismatch(capsys, tmp_path):
    path = tmp_path / "m.json"
    path.write_text(json.dumps({"kind": "matrix", "field": "F3", "columns": [[1, 0], [0, 1], [1, 1]]}))
    code, _, err = run(capsys, "profile", str(path), "--field", "Q")
    assert code == 3 and "F3" in err


def test_parse_errors(capsys, tmp_path):
    path = tmp_path / "bad.json"
    path.write_text("{")
    assert run(capsys, "profile", str(path))[0] == 2
    assert run(capsys, "profile", "@nope")[0] == 2
    assert run(capsys, "profile", "@u23", "--vector", "1,2")[0] == 2
    with pytest.raises(SystemExit) as exc:
        main(["frobnicate"])
    assert exc.value.code == 2


def test_semantic_error_for_prime_denominator(capsys):
    assert run(capsys, "profile", "@u23", "--field", "F3", "--vector", "1/3,0,0")[0] == 3


def test_bound_x_graph(capsys):
    code, rep, _ = run(capsys, "bound", "@x-graph", "--degree", "2", "--compare", "--mode", "symbolic")
    assert code == 0
    comps = rep["results"]["components"]
    assert len(comps) == 4 and all(c["verdict"]["status"] == "contained" for c in comps)
    assert rep["exact"]


def test_bound_pyramid_reports_gap_with_bound(capsys):
    code, rep, _ = run(capsys, "bound", "@pyramid", "--degree", "2", "--compare")
    statuses = [c["verdict"]["status"] for c in rep["results"]["components"]]
    assert "not_contained" in statuses
    assert rep["failure_bounds"] and not rep["exact"]


def test_bound_top_degree(capsys):
    code, rep, _ = run(capsys, "bound", "@pyramid", "--degree", "4")
    assert [c["dim"] for c in rep["results"]["components"]] == [7]


def test_bound_truncated(capsys):
    code, rep, err = run(capsys, "bound", "@k5", "--degree", "2", "--cap", "2")
    assert code == 0 and rep["results"]["truncated"] and "warning" in err


def test_multinet_commands(capsys):
    code, rep, _ = run(capsys, "multinet", "@b3-doubled", "--verify", "1,2,11,12|3,4,9,10|5,6,7,8")
    assert code == 0 and rep["results"]["valid"]
    code, rep, _ = run(capsys, "multinet", "@b3-doubled", "--search")
    assert any(mn["k"] == 3 and mn["d"] == 4 for mn in rep["results"]["multinets"])
    code, rep, _ = run(capsys, "multinet", "@free4", "--search")
    assert rep["results"]["multinets"] == []
    code, _, _ = run(capsys, "multinet", "@b3-doubled", "--verify", "1,2,3,4|5,6,7,8|9,10,11,12")
    assert code == 1


def test_singular_command(capsys):
    rows = ";".join(",".join(str(x) for x in r) for r in catalog.pyramid_phi_basis())
    code, rep, _ = run(capsys, "singular", "@pyramid", f"--subspace={rows}", "--q", "2")
    assert code == 0
    report = rep["results"]["report"]
    assert (report["dim"], report["rank"], report["singular"]) == (3, 2, True)
    assert rep["results"]["factorization"]["injective_degree1"]


def test_check_commands(capsys):
    code, rep, _ = run(capsys, "check", "@u23", "--vector", "1,-2,1")
    assert code == 0
    code, rep, _ = run(capsys, "check", "@k5",
                       "--subspace=-1,1,0,0,0,0,0,0,0,0;0,0,1,-1,0,0,0,0,0,0;0,0,0,0,-1,1,0,0,0,0",
                       "--degree", "2")
    assert code == 1 and rep["results"]["containment"]["status"] == "not_contained"


def test_corpus_single_case(capsys):
    code, rep, _ = run(capsys, "corpus", "--case", "char2-membership")
    assert code == 0 and list(rep["results"]["cases"]) == ["char2-membership"]


def test_corpus_override_with_wrong_circuit(capsys, tmp_path):
    bad = dict(catalog.SPECS["fat-triangle"])
    bad["edges"] = [[1, 2], [1, 2], [2, 3], [2, 3], [3, 1], [1, 3]][:5] + [[1, 1]]
    bad["allow_self_loops"] = True
    path = tmp_path / "bad.json"
    path.write_text(specio.emit(bad))
    code, rep, _ = run(capsys, "corpus", "--case", "fat-triangle-r0", "--override", f"fat-triangle={path}")
    assert code == 1 and rep["results"]["failed"] == ["fat-triangle-r0"]


def test_report_is_deterministic(capsys):
    a = run(capsys, "bound", "@pyramid", "--degree", "2", "--compare", "--seed", "7")[1]
    b = run(capsys, "bound", "@pyramid", "--degree", "2", "--compare", "--seed", "7")[1]
    assert a == b and "wall_time" not in a


def test_stdin_spec():
    spec = specio.emit(catalog.SPECS["u23"])
    proc = subprocess.run([sys.executable, "-m", "resonator.cli", "profile", "-", "--vector", "1,-2,1"],
                          input=spec, capture_output=True, text=True, check=False)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["results"]["dims"] == [0, 1, 1]


def test_output_file(tmp_path, capsys):
    out = tmp_path / "r.json"
    assert main(["profile", "@u23", "--output", str(out), "--timing"]) == 0
    assert "wall_time" in json.loads(out.read_text())

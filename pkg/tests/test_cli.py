import json
import subprocess
import sys

import mpmath
import pytest

from tcompile import cli
from tcompile.errors import SynthesisFailure
from tcompile.mpnum import matrix_to_json, random_unitary


@pytest.fixture
def hadamard_file(tmp_path):
    p = tmp_path / "h.json"
    p.write_text(json.dumps([["0.70710678118654752440084436210484903928483593768847", "0.70710678118654752440084436210484903928483593768847"],
                             ["0.70710678118654752440084436210484903928483593768847", "-0.70710678118654752440084436210484903928483593768847"]]))
    return p


def test_zrot_prints_word(capsys):
    assert cli.main(["zrot", "--theta", "pi/4", "--epsilon", "1e-6", "--up-to-phase"]) == 0
    assert capsys.readouterr().out.strip() == "T"


def test_zrot_json(capsys):
    assert cli.main(["zrot", "--theta", "0.3", "--epsilon", "1e-4", "--json"]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out["t_count"] == out["gates"].count("T") and float(out["error"]) <= 1e-4


def test_su2_then_verify(tmp_path, hadamard_file, capsys):
    circ = tmp_path / "c.json"
    assert cli.main(["su2", "--matrix", str(hadamard_file), "--epsilon", "1e-5", "--out", str(circ)]) == 0
    rep = json.loads(capsys.readouterr().out)["report"]
    assert rep["t_count"] == 0
    assert cli.main(["verify", "--matrix", str(hadamard_file), "--circuit", str(circ), "--epsilon", "1e-5"]) == 0


def test_verify_failure_exit_code(tmp_path, capsys):
    m = tmp_path / "z.json"
    m.write_text(json.dumps([[1, 0], [0, -1]]))
    c = tmp_path / "c.json"
    c.write_text(json.dumps({"wires": 1, "gates": [], "phase_w": 0}))
    assert cli.main(["verify", "--matrix", str(m), "--circuit", str(c), "--epsilon", "1e-3"]) == 3


def test_synthesis_failure_exit_code(tmp_path, hadamard_file, monkeypatch):
    def boom(*a, **k):
        raise SynthesisFailure("no candidates")

    monkeypatch.setattr(cli, "approximate_unitary", boom)
    assert cli.main(["su2", "--matrix", str(hadamard_file), "--epsilon", "1e-3"]) == 2


def test_synth_two_qubit_partial(tmp_path, capsys, rng):
    with mpmath.workdps(60):
        p = tmp_path / "u.json"
        p.write_text(json.dumps(matrix_to_json(random_unitary(4, rng))))
    assert cli.main(["synth", "--matrix", str(p), "--qubits", "2", "--epsilon", "1e-3", "--partial"]) == 0
    out = json.loads(capsys.readouterr().out)
    assert set(out["phase_bank"]) == {"phi_c", "phi_d", "psi"}
    assert out["circuit"]["wires"] == 2


def test_synth_roundtrip_through_verify(tmp_path, capsys, rng):
    with mpmath.workdps(60):
        p = tmp_path / "u.json"
        p.write_text(json.dumps(matrix_to_json(random_unitary(4, rng))))
    c = tmp_path / "c.json"
    assert cli.main(["synth", "--matrix", str(p), "--epsilon", "1e-2", "--out", str(c)]) == 0
    capsys.readouterr()
    assert cli.main(["verify", "--matrix", str(p), "--circuit", str(c), "--epsilon", "1e-2"]) == 0
    assert json.loads(capsys.readouterr().out)["ok"]


def test_mixed_command(hadamard_file, capsys):
    assert cli.main(["mixed", "--matrix", str(hadamard_file), "--epsilon", "3e-2", "--candidates", "4"]) == 0
    out = json.loads(capsys.readouterr().out)
    assert len(out["circuits"]) == 4 and abs(sum(out["probabilities"]) - 1) < 1e-9


def test_bench_csv_is_byte_identical(tmp_path, capsys):
    paths = [tmp_path / "a.csv", tmp_path / "b.csv"]
    for p in paths:
        assert cli.main(["bench-unitary", "--qubits", "1", "--zrot", "--epsilons", "1e-2,1e-3", "--trials", "2",
                         "--out", str(p)]) == 0
    assert paths[0].read_bytes() == paths[1].read_bytes()
    summary, _ = json.JSONDecoder().raw_decode(capsys.readouterr().out)
    assert summary["violations"] == 0


def test_bench_mixed(tmp_path, capsys):
    p = tmp_path / "m.csv"
    assert cli.main(["bench-mixed", "--epsilons", "3e-2,1e-2", "--candidates", "4", "--out", str(p)]) == 0
    assert p.read_text().splitlines()[0].startswith("n,eps,pre,post")


def test_console_script_help():
    r = subprocess.run([sys.executable, "-m", "tcompile.cli", "--help"], capture_output=True, text=True)
    assert r.returncode == 0
    for sub in ("zrot", "su2", "synth", "mixed", "bench-unitary", "bench-mixed", "verify"):
        assert sub in r.stdout

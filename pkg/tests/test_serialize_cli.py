"""JSON schemas and the command-line front end."""

import json

import numpy as np
import pytest

from gzgw.cli import main
from gzgw.errors import SchemaError
from gzgw.fiber import random_torus_element, torus_from_angles
from gzgw.pattern import sample_interior
from gzgw.serialize import (matrix_from_obj, matrix_to_obj, pattern_from_obj,
                            pattern_to_obj, torus_from_obj, torus_to_obj)


def test_matrix_roundtrip_exact():
    rng = np.random.default_rng(1)
    m = rng.normal(size=(3, 3)) + 1j * rng.normal(size=(3, 3))
    a = 0.5 * (m + m.conj().T)
    blob = json.dumps(matrix_to_obj(a))
    back = matrix_from_obj(json.loads(blob))
    assert np.array_equal(back, a)


def test_matrix_validation():
    with pytest.raises(SchemaError):
        matrix_from_obj({"n": 2, "entries": [[[0, 0]]]})
    with pytest.raises(SchemaError):
        matrix_from_obj({"n": 2, "entries": [[[0, 0], [1, 0]], [[0, 0], [0, 0]]]})


def test_pattern_roundtrip_exact():
    p = sample_interior(4, 7)
    blob = json.dumps(pattern_to_obj(p))
    back = pattern_from_obj(json.loads(blob))
    assert np.array_equal(back.flatten(), p.flatten())


def test_torus_roundtrip():
    rng = np.random.default_rng(2)
    t = random_torus_element(4, rng)
    blob = json.dumps(torus_to_obj(t))
    back = torus_from_obj(json.loads(blob))
    for a, b in zip(t.phases, back.phases):
        assert abs(a - b).max() <= 1e-15


def test_torus_angles_in_range():
    t = torus_from_angles(3, [[3.0], [-3.0, 0.1]])
    for lv in t.angles():
        assert np.all(lv > -np.pi) and np.all(lv <= np.pi)


def write_matrix(tmp_path, name, a):
    path = tmp_path / name
    path.write_text(json.dumps(matrix_to_obj(a)))
    return str(path)


def test_cli_pattern_exchange(tmp_path, capsys):
    path = write_matrix(tmp_path, "ex.json",
                        np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex))
    assert main(["pattern", path]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out["levels"][0] == [0.0]
    assert out["levels"][1] == pytest.approx([-1.0, 1.0], abs=1e-12)
    assert out["classification"] == "interior"


def test_cli_pattern_boundary_and_log(tmp_path, capsys):
    path = write_matrix(tmp_path, "z.json", np.zeros((2, 2), dtype=complex))
    assert main(["pattern", path]) == 0
    assert json.loads(capsys.readouterr().out)["classification"] == "boundary"
    path = write_matrix(tmp_path, "p.json", np.diag([np.e, np.e ** 2]).astype(complex))
    assert main(["pattern", path, "--log"]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out["levels"][1] == pytest.approx([1.0, 2.0], abs=1e-12)


def test_cli_pattern_corrupt_file(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text("{nope")
    assert main(["pattern", str(bad)]) == 2


def test_cli_map_roundtrip(tmp_path, capsys):
    a = np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex)
    path = write_matrix(tmp_path, "ex.json", a)
    assert main(["map", path]) == 0
    image = matrix_from_obj(json.loads(capsys.readouterr().out))
    assert image[0, 1].real == pytest.approx(1.042190, abs=1e-6)
    back = write_matrix(tmp_path, "img.json", image)
    assert main(["map", back, "--inverse"]) == 0
    recovered = matrix_from_obj(json.loads(capsys.readouterr().out))
    assert abs(recovered - a).max() <= 1e-9


def test_cli_map_zero_matrix(tmp_path, capsys):
    path = write_matrix(tmp_path, "z.json", np.zeros((3, 3), dtype=complex))
    assert main(["map", path]) == 0
    image = matrix_from_obj(json.loads(capsys.readouterr().out))
    assert np.array_equal(image, np.eye(3))


def test_cli_map_boundary_exit_code(tmp_path, capsys):
    a = np.diag([1.0, 2.0]).astype(complex)
    a[0, 1] = a[1, 0] = 1e-13
    path = write_matrix(tmp_path, "b.json", a)
    assert main(["map", path]) == 3
    assert "margin" in capsys.readouterr().err


def test_cli_map_psi(tmp_path, capsys):
    path = write_matrix(tmp_path, "ex.json",
                        np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex))
    assert main(["map", path, "--psi"]) == 0
    out = json.loads(capsys.readouterr().out)
    psi = matrix_from_obj({"n": out["n"], "entries": out["entries"]},
                          hermitian_tol=np.inf)
    assert abs(psi @ psi.T - np.eye(2)).max() <= 1e-10
    assert out["det_defect"] <= 1e-9


def test_cli_demo_n2(capsys):
    assert main(["demo-n2", "--grid-points", "5"]) == 0
    out = capsys.readouterr().out
    assert "max deviation" in out


def test_cli_verify_small(capsys):
    assert main(["verify", "--samples", "2", "--size", "2"]) == 0
    records = json.loads(capsys.readouterr().out)
    assert records and all(r["pass"] for r in records)
    for key in ("name", "n", "samples", "seed", "fd_step", "max_residual",
                "tolerance", "pass"):
        assert key in records[0]


def test_cli_verify_empty(capsys):
    assert main(["verify", "--samples", "0"]) == 0
    assert json.loads(capsys.readouterr().out) == []


def test_cli_verify_tampered_tolerance(capsys):
    rc = main(["verify", "--samples", "2", "--size", "2",
               "--tolerance", "poisson_pushforward=1e-15"])
    captured = capsys.readouterr()
    assert rc == 1
    assert "FAILED" in captured.err
    assert any(not r["pass"] for r in json.loads(captured.out))


def test_cli_verify_unknown_tolerance(capsys):
    assert main(["verify", "--samples", "1", "--tolerance", "nope=1"]) == 2


def test_cli_verify_deterministic(tmp_path):
    out1 = tmp_path / "r1.json"
    out2 = tmp_path / "r2.json"
    assert main(["verify", "--samples", "2", "--size", "2", "--out", str(out1)]) == 0
    assert main(["verify", "--samples", "2", "--size", "2", "--out", str(out2)]) == 0
    assert out1.read_text() == out2.read_text()


def test_cli_verify_config_file(tmp_path, capsys):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"samples": 2, "size": 2}))
    assert main(["verify", "--config", str(cfg)]) == 0
    records = json.loads(capsys.readouterr().out)
    assert all(r["samples"] <= 2 for r in records if r["samples"] > 0)

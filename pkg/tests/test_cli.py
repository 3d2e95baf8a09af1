import json
import subprocess
import sys
from pathlib import Path

import numpy as np
import pytest

from qschur.cli import main

DATA = Path(__file__).parent / "data"


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, (json.loads(out) if out.strip() else None), err


def write(tmp_path, obj, name="in.json"):
    path = tmp_path / name
    path.write_text(json.dumps(obj) if not isinstance(obj, str) else obj)
    return path


# certify-series


def test_certify_identity_passes(capsys):
    code, rep, _ = run(capsys, "certify-series", DATA / "series_z.json")
    assert code == 0 and rep["verdict"] == "pass"
    assert rep["params"]["order"] == 64


def test_certify_constant_fails_at_order_one(capsys):
    code, rep, _ = run(capsys, "certify-series", DATA / "series_const_1_1.json")
    assert code == 1
    assert rep["witness"]["order"] == 1


def test_certify_fixture_records_order(capsys):
    code, rep, _ = run(capsys, "certify-series", DATA / "series_fixture.json")
    assert code == 0
    assert rep["params"]["order"] == 64 and rep["config"]["order"] == 64
    assert "no violation found up to order 64" in rep["notes"][0]


def test_order_flag_overrides_file_config(capsys, tmp_path):
    obj = json.loads((DATA / "series_z.json").read_text())
    obj["config"] = {"order": 5}
    path = write(tmp_path, obj)
    assert run(capsys, "certify-series", path)[1]["params"]["order"] == 5
    assert run(capsys, "certify-series", path, "--order", "7")[1]["params"]["order"] == 7


# pick


def test_pick_one_point(capsys):
    code, rep, _ = run(capsys, "pick", DATA / "pick_one_point.json")
    assert code == 0 and rep["psd"] is True
    assert rep["matrix"]["entries"][0] == pytest.approx([4 / 3, 0, 0, 0], abs=1e-15)
    code, rep, _ = run(capsys, "pick", DATA / "pick_one_point_dual.json")
    assert code == 0 and rep["side"] == "dual"
    assert rep["matrix"]["entries"][0] == pytest.approx([4 / 3, 0, 0, 0], abs=1e-15)


def test_pick_matches_golden_file(capsys):
    code, rep, _ = run(capsys, "pick", DATA / "pick_slice3.json")
    golden = json.loads((DATA / "pick_slice3_golden.json").read_text())
    assert code == 0
    got = np.array(rep["matrix"]["entries"])
    assert np.abs(got - np.array(golden["entries"])).max() <= 1e-10
    assert rep["hermitian_residual"] <= 1e-11 and rep["stein_relative"] <= 1e-10


def test_golden_file_is_reproducible():
    sys.path.insert(0, str(DATA))
    try:
        import generate
    finally:
        sys.path.remove(str(DATA))
    fresh = generate.build()
    for name, obj in fresh.items():
        assert json.loads((DATA / name).read_text()) == json.loads(json.dumps(obj)), name


def test_pick_outside_ball_is_an_error(capsys):
    code, rep, err = run(capsys, "pick", DATA / "pick_outside.json")
    assert code == 2 and rep is None
    assert "outside the open unit ball" in err


def test_pick_not_psd_exits_one(capsys, tmp_path):
    path = write(tmp_path, {"points": [[0, 0.5, 0, 0]], "values": [[2, 0, 0, 0]]})
    code, rep, _ = run(capsys, "pick", path)
    assert code == 1 and rep["psd"] is False and rep["min_eigenvalue"] < 0


# malformed input


@pytest.mark.parametrize(
    "command, obj, field",
    [
        ("certify-series", {"coefs": []}, "coefficients"),
        ("certify-series", {"coefficients": [[1, 0, 0]]}, "coefficients[0]"),
        ("certify-series", {"coefficients": [[0, 0, 0, 0]], "config": {"tol": "small"}}, "tol"),
        ("certify-series", {"coefficients": [[0, 0, 0, 0]], "config": {"bogus": 1}}, "bogus"),
        ("certify-series", {"coefficients": [[0, 0, 0, 0]], "config": {"radius": 2}}, "radius"),
        ("pick", {"points": [[0, 0, 0, 0]]}, "values"),
        ("pick", {"points": [[0, 0, 0, 0]], "values": [["a", 0, 0, 0]]}, "values[0]"),
        ("hindmarsh", {"series": {"coefficients": [[0, 0, 0, 0]]}, "corruption": {"shift": 1}}, "shift"),
        ("hindmarsh", {"constant": [1, 2]}, "constant"),
        ("hindmarsh", {}, "series"),
        ("decompose", {"coefficients": "none"}, "coefficients"),
        ("eval", {"coefficients": [[0, 0, 0, 0], [1, 0, 0]]}, "coefficients[1]"),
    ],
)
def test_malformed_input_names_the_field(capsys, tmp_path, command, obj, field):
    code, rep, err = run(capsys, command, write(tmp_path, obj))
    assert code == 2 and rep is None
    assert field in err


def test_invalid_json_and_missing_file(capsys, tmp_path):
    code, _, err = run(capsys, "pick", write(tmp_path, "{not json"))
    assert code == 2 and "not valid JSON" in err
    code, _, err = run(capsys, "pick", tmp_path / "missing.json")
    assert code == 2 and "cannot read" in err


def test_bad_flags_exit_two(capsys):
    assert main(["certify-series"]) == 2
    assert main(["no-such-command"]) == 2
    assert main(["eval", str(DATA / "series_z.json"), "--at", "1,2"]) == 2
    capsys.readouterr()


def test_errors_never_print_a_traceback(tmp_path):
    bad = write(tmp_path, {"coefficients": [[1e300, 0, 0, 0], [1e308, 1e308, 0, 0]]})
    proc = subprocess.run(
        [sys.executable, "-m", "qschur.cli", "certify-series", str(bad)], capture_output=True, text=True
    )
    assert proc.returncode == 2
    assert "Traceback" not in proc.stderr
    assert proc.stderr.startswith("qschur: error:")


# determinism and output


def test_reports_are_byte_identical(tmp_path):
    outs = []
    for k in range(2):
        out = tmp_path / f"r{k}.json"
        assert main(["hindmarsh", str(DATA / "hindmarsh_offslice.json"), "--seed", "3", "--out", str(out)]) == 1
        outs.append(out.read_bytes())
    assert outs[0] == outs[1]


def test_seed_environment_variable(tmp_path, monkeypatch):
    spec = DATA / "hindmarsh_offslice.json"
    monkeypatch.setenv("QSCHUR_SEED", "5")
    main(["hindmarsh", str(spec), "--out", str(tmp_path / "env.json")])
    env = json.loads((tmp_path / "env.json").read_text())
    assert env["config"]["seed"] == 5 and env["params"]["seed"] == 5
    # an explicit flag wins over the environment
    main(["hindmarsh", str(spec), "--seed", "0", "--out", str(tmp_path / "flag.json")])
    assert json.loads((tmp_path / "flag.json").read_text())["config"]["seed"] == 0
    monkeypatch.setenv("QSCHUR_SEED", "abc")
    assert main(["hindmarsh", str(spec)]) == 2


def test_out_is_written_atomically(tmp_path):
    out = tmp_path / "sub" / "report.json"
    assert main(["certify-series", str(DATA / "series_z.json"), "--out", str(out)]) == 0
    assert json.loads(out.read_text())["verdict"] == "pass"
    assert sorted(p.name for p in out.parent.iterdir()) == ["report.json"]


def test_failed_run_leaves_previous_output(tmp_path):
    out = tmp_path / "report.json"
    out.write_text("previous")
    assert main(["certify-series", str(tmp_path / "missing.json"), "--out", str(out)]) == 2
    assert out.read_text() == "previous"


def test_numbers_round_trip_exactly(capsys):
    _, rep, _ = run(capsys, "pick", DATA / "pick_slice3.json")
    for row in rep["matrix"]["entries"]:
        for v in row:
            assert float(repr(v)) == v


# hindmarsh


def test_hindmarsh_inner_fixture_passes(capsys):
    code, rep, _ = run(capsys, "hindmarsh", DATA / "hindmarsh_inner.json")
    assert code == 0 and rep["verdict"] == "pass"
    truth = json.loads((DATA / "series_inner.json").read_text())["coefficients"]
    got = rep["reconstructed"]["coefficients"]
    for k, c in enumerate(truth):
        assert np.abs(np.array(got[k]) - c).max() <= 1e-6
    assert {"aliasing", "noise"} <= set(rep["tail_bounds"])


def test_hindmarsh_offslice_corruption(capsys):
    code, rep, _ = run(capsys, "hindmarsh", DATA / "hindmarsh_offslice.json")
    assert code == 1 and rep["verdict"] == "fail"
    w = rep["witness"]
    assert w["kind"] == "structured_triple" and len(w["points"]) == 3
    a, ab, g = (np.array(p) for p in w["points"])
    # (a, conj a, g) with a on the slice and g on the same sphere
    assert np.array_equal(ab, a * [1, -1, -1, -1]) and a[2] == a[3] == 0
    assert abs(np.linalg.norm(a) - np.linalg.norm(g)) < 1e-14 and a[0] == g[0]


def test_hindmarsh_constant_two(capsys):
    code, rep, _ = run(capsys, "hindmarsh", DATA / "hindmarsh_const2.json")
    assert code == 1
    assert rep["witness"]["kind"] == "one_point" and len(rep["witness"]["points"]) == 1


def test_hindmarsh_dual(capsys):
    code, rep, _ = run(capsys, "hindmarsh", DATA / "hindmarsh_const2.json", "--dual")
    assert code == 1 and rep["kind"] == "dual" and rep["witness"]["side"] == "dual"


# decompose


def test_decompose_constant(capsys, tmp_path):
    code, rep, _ = run(
        capsys,
        "decompose",
        DATA / "series_3_4k.json",
        "--s-out",
        tmp_path / "s.json",
        "--h-out",
        tmp_path / "h.json",
    )
    assert rep["s"]["coefficients"] == [[3.0, 0.0]]
    assert rep["h"]["coefficients"] == [[0.0, 4.0]]
    assert rep["slice_identity_residual"] == 0.0
    assert json.loads((tmp_path / "h.json").read_text()) == rep["h"]
    # |g| = 5: not Schur, and both criteria say so
    assert code == 1 and rep["verdicts_agree"]


def test_decompose_unimodular_boundary(capsys):
    code, rep, _ = run(capsys, "decompose", DATA / "series_unimodular.json", "--order", "1")
    assert code == 0
    assert rep["block_criterion"]["psd"] is True
    assert abs(rep["block_criterion"]["min_eigenvalue"]) < 1e-15


@pytest.mark.parametrize("name", ["series_fixture.json", "series_inner.json", "series_z.json", "series_const_1_1.json"])
def test_decompose_agrees_with_certify(capsys, name):
    code, rep, _ = run(capsys, "decompose", DATA / name)
    certify_code, cert, _ = run(capsys, "certify-series", DATA / name)
    assert rep["verdicts_agree"]
    assert rep["certify_schur_verdict"] == cert["verdict"]
    assert code == certify_code
    assert rep["slice_identity_residual"] <= 1e-14


# eval


def test_eval_left_and_right(capsys, tmp_path):
    path = write(tmp_path, {"coefficients": [[0, 0, 0, 0], [0, 1, 0, 0]]})
    _, rep, _ = run(capsys, "eval", path, "--at", "0,0,1,0")
    assert rep["results"][0]["value"] == [0.0, 0.0, 0.0, -1.0]
    _, rep, _ = run(capsys, "eval", path, "--at", "0,0,1,0", "--side", "right", "--at", "0.5,0,0,0")
    assert [r["value"] for r in rep["results"]] == [[0.0, 0.0, 0.0, 1.0], [0.0, 0.5, 0.0, 0.0]]


def test_module_entry_point(tmp_path):
    proc = subprocess.run(
        [sys.executable, "-m", "qschur.cli", "eval", str(DATA / "series_z.json"), "--at", "0,0.5,0,0"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["results"][0]["value"] == [0.0, 0.5, 0.0, 0.0]

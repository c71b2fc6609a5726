"""Command-line surface: schemas, determinism, exit codes."""

import csv
import io
import json

import numpy as np

from triform.cli import main


def run_cli(args, tmp_path, name="out.txt"):
    path = tmp_path / name
    code = main(args + ["--out", str(path)])
    return code, path.read_text(encoding="utf-8")


def parse_csv(text):
    meta = {}
    lines = text.splitlines()
    body = []
    for ln in lines:
        if ln.startswith("# "):
            key, val = ln[2:].split("=", 1)
            meta[key] = json.loads(val)
        else:
            body.append(ln)
    rows = list(csv.DictReader(io.StringIO("\n".join(body))))
    return meta, rows


def test_empty_grid_ok(tmp_path):
    code, text = run_cli(["closed-form", "--triples", ""], tmp_path)
    assert code == 0
    meta, rows = parse_csv(text)
    assert rows == []
    assert meta["schema"] == "triform.table.v1"


def test_closed_form_origin_row(tmp_path):
    code, text = run_cli(["closed-form", "--triples", "0,0,0"], tmp_path)
    assert code == 0
    _, rows = parse_csv(text)
    assert len(rows) == 1
    assert abs(float(rows[0]["abs_value"]) - 5.5728157187) < 1e-6


def test_pole_row_flags_exit_code(tmp_path):
    code, text = run_cli(
        ["closed-form", "--triples", "0,0,0;0.5+0j,0.5+0j,0+0j"], tmp_path)
    assert code == 1
    _, rows = parse_csv(text)
    assert rows[0]["error"] == ""
    assert rows[1]["error"].startswith("pole:")


def test_reproducible_byte_determinism(tmp_path):
    args = ["closed-form", "--cube", "0,1", "--reproducible"]
    _, a = run_cli(args, tmp_path, "a.txt")
    _, b = run_cli(args, tmp_path, "b.txt")
    assert a == b


def test_json_format_meta(tmp_path):
    code, text = run_cli(["closed-form", "--triples", "0,0,0",
                          "--format", "json", "--reproducible"], tmp_path)
    assert code == 0
    payload = json.loads(text)
    meta = payload["meta"]
    for key in ("schema", "command", "config", "seed", "version"):
        assert key in meta
    assert len(payload["rows"]) == 1


def test_quadrature_check_single_point(tmp_path):
    code, text = run_cli(["quadrature-check", "--triples", "0,0,0",
                          "--target", "1e-6"], tmp_path)
    assert code == 0
    meta, rows = parse_csv(text)
    assert float(rows[0]["rel_deviation"]) <= 1e-4
    assert meta["max_rel_deviation"] <= 1e-4
    # consistency with the closed-form command
    _, text2 = run_cli(["closed-form", "--triples", "0,0,0"], tmp_path, "c.txt")
    _, rows2 = parse_csv(text2)
    assert abs(float(rows[0]["closed_re"]) - float(rows2[0]["abs_value"])) < 1e-9


def test_gaussian_check(tmp_path):
    code, text = run_cli(["gaussian-check", "--samples", "30000",
                          "--seed", "20240901"], tmp_path)
    assert code == 0
    meta, rows = parse_csv(text)
    assert meta["max_zscore"] <= 4.0
    names = {r["identity"] for r in rows}
    assert names == {"radius-moment", "linear-moment", "det-moment",
                     "homogeneous-reduction", "minor-pullback",
                     "kernel-gaussian"}


def test_gaussian_check_seed_determinism(tmp_path):
    args = ["gaussian-check", "--samples", "5000", "--reproducible"]
    _, a = run_cli(args, tmp_path, "a.txt")
    _, b = run_cli(args, tmp_path, "b.txt")
    assert a == b


def test_gaussian_check_tiny_samples_well_formed(tmp_path):
    # wide error bars are fine; the table must still be complete
    code, text = run_cli(["gaussian-check", "--samples", "100"], tmp_path)
    _, rows = parse_csv(text)
    assert len(rows) == 35
    assert all(r["mc_3sigma"] != "" for r in rows)


def test_decay_scan_single_rung(tmp_path):
    code, text = run_cli(["decay-scan", "--ladder", "50"], tmp_path)
    assert code == 0
    meta, rows = parse_csv(text)
    assert len(rows) == 1
    assert "extrapolated_constant" not in meta


def test_decay_scan_symmetry(tmp_path):
    a = run_cli(["decay-scan", "--tau", "1", "--tau-prime", "2",
                 "--ladder", "25,50", "--reproducible"], tmp_path, "a.txt")[1]
    b = run_cli(["decay-scan", "--tau", "2", "--tau-prime", "1",
                 "--ladder", "25,50", "--reproducible"], tmp_path, "b.txt")[1]
    ma, ra = parse_csv(a)
    mb, rb = parse_csv(b)
    assert [r["normalized"] for r in ra] == [r["normalized"] for r in rb]


def test_sobolev_trace_l0_is_plain_trace(tmp_path):
    code, text = run_cli(["sobolev-trace", "--l", "0", "--t-ladder", "2",
                          "--max-mode", "6", "--k-modes", "4"], tmp_path)
    assert code == 0
    _, rows = parse_csv(text)
    rho = float(rows[0]["rho"])
    from triform import induced_form
    tr = float(np.real(np.trace(induced_form(2j, 0.0, 0.0, 6, 4).matrix)))
    assert abs(rho - tr) <= 1e-8 * tr


def test_bad_config_exit_code():
    assert main(["quadrature-check", "--quad-levels", "0",
                 "--triples", "0,0,0"]) == 2

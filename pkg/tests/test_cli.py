import json
import math

import numpy as np
import pytest

from czic import sample_channel, save_channel
from czic.cli import main
from czic.regions import load_frontier

HL7 = 1.4036774610288021
HL151 = 3.6192023696625395

FAST_GRIDS = ["--alpha-grid", "101", "--rho-grid", "41", "--r2-grid", "201"]


def run(capsys, argv):
    code = main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


def test_classify(capsys):
    code, out, _ = run(capsys, ["classify", "--a", "4", "--p1", "6", "--p2", "6"])
    assert code == 0
    doc = json.loads(out)
    assert doc["regime"] == "VeryStrong"
    assert doc["thresholds"][0] == 1.0
    assert doc["thresholds"][1] == pytest.approx(1.3627702877384938, rel=1e-12)
    assert doc["thresholds"][2] == pytest.approx(2.6457513110645906, rel=1e-12)
    assert doc["thresholds"][3] == pytest.approx(12.557438524302001, rel=1e-12)


def test_conditions(capsys):
    code, out, _ = run(capsys, ["conditions", "--a", "1", "--p1", "6", "--p2", "6"])
    assert code == 0
    doc = json.loads(out)
    assert doc["strong_interference"] is True
    assert doc["more_capable_sufficient"] is False
    code, _, _ = run(capsys, ["conditions", "--a", "1", "--p2", "0"])
    assert code == 4  # p2 = 0 leaves the sufficient condition undefined


def test_region_inner(tmp_path, capsys):
    out_csv = tmp_path / "inner.csv"
    code, out, _ = run(capsys, ["region", "inner", "--out", str(out_csv)] + FAST_GRIDS)
    assert code == 0
    fr = load_frontier(out_csv)
    assert fr.r1_at(0.0) == pytest.approx(HL151, abs=1e-9)
    sidecar = json.loads((tmp_path / "inner.json").read_text())
    assert sidecar["bound"] == "inner"
    assert sidecar["params"] == {"a": 4.0, "p1": 6.0, "p2": 6.0}
    assert sidecar["grids"] == {"alpha": 101, "rho": 41, "r2": 201}
    assert sidecar["convexified"] is False
    assert json.loads(out)["csv"] == str(out_csv)


def test_region_weak_interference_free(tmp_path, capsys):
    out_csv = tmp_path / "weak.csv"
    code, _, _ = run(capsys, ["region", "weak", "--a", "0", "--out", str(out_csv)] + FAST_GRIDS)
    assert code == 0
    fr = load_frontier(out_csv)
    # a = 0 decouples the links: rectangle at (half log2 7, half log2 7)
    assert fr.r2_max == pytest.approx(HL7, abs=1e-9)
    assert fr.r1_at(0.0) == pytest.approx(HL7, abs=1e-9)
    assert fr.r1_at(fr.r2_max) == pytest.approx(HL7, abs=1e-9)


def test_region_regime_violation_exit_code(tmp_path, capsys):
    code, _, err = run(capsys, ["region", "thm3", "--a", "2", "--out", str(tmp_path / "x.csv")])
    assert code == 2
    assert err.strip() == "regime precondition failed: requires |a| >= 2.6457513110645907"


def test_region_io_error(capsys):
    code, _, err = run(capsys, ["region", "inner", "--out", "/nonexistent-dir/x.csv"] + FAST_GRIDS)
    assert code == 3


def test_region_bad_bound_id(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["region", "bogus"])
    assert exc.value.code == 4


def test_region_malformed_value(capsys):
    code, _, err = run(capsys, ["region", "inner", "--p1", "-3"])
    assert code == 4


def test_compare_lemma1_cor1(capsys):
    code, out, _ = run(capsys, ["compare", "lemma1,cor1"] + FAST_GRIDS)
    assert code == 0
    doc = json.loads(out)
    by_pair = {(p["outer"], p["inner"]): p for p in doc["pairs"]}
    assert by_pair[("cor1", "lemma1")]["directed_gap"] >= 0.5
    assert by_pair[("cor1", "lemma1")]["max_gap_r2"] > 0.0
    assert by_pair[("lemma1", "cor1")]["contained"] is True


def test_compare_inner_thm3(capsys):
    code, out, _ = run(capsys, ["compare", "inner,thm3"] + FAST_GRIDS)
    assert code == 0
    doc = json.loads(out)
    assert all(abs(p["directed_gap"]) <= 0.02 for p in doc["pairs"])


def test_compare_same_bound_twice(capsys):
    code, out, _ = run(capsys, ["compare", "inner,inner"] + FAST_GRIDS)
    assert code == 0
    doc = json.loads(out)
    assert [p["directed_gap"] for p in doc["pairs"]] == [0.0, 0.0]


def test_compare_needs_two(capsys):
    code, _, _ = run(capsys, ["compare", "inner"])
    assert code == 4


def test_figure4_reproducible(tmp_path, capsys):
    outdir = tmp_path / "fig"
    argv = ["figure4", "--out", str(outdir)] + FAST_GRIDS
    code, out, _ = run(capsys, argv)
    assert code == 0
    blobs = {name: (outdir / f"{name}.csv").read_bytes() for name in ("lemma1", "cor1", "inner")}
    report = json.loads((outdir / "report.json").read_text())
    by_pair = {(p["outer"], p["inner"]): p for p in report["pairs"]}
    assert by_pair[("lemma1", "cor1")]["contained"] is True
    assert by_pair[("cor1", "lemma1")]["directed_gap"] >= 0.5
    # rerun is byte-identical
    code, _, _ = run(capsys, argv)
    assert code == 0
    for name, blob in blobs.items():
        assert (outdir / f"{name}.csv").read_bytes() == blob
    # larger |a| widens the gap
    outdir8 = tmp_path / "fig8"
    code, out8, _ = run(capsys, ["figure4", "--a", "8", "--out", str(outdir8)] + FAST_GRIDS)
    assert code == 0
    rep8 = json.loads((outdir8 / "report.json").read_text())
    gap8 = {(p["outer"], p["inner"]): p["directed_gap"] for p in rep8["pairs"]}
    assert gap8[("cor1", "lemma1")] > by_pair[("cor1", "lemma1")]["directed_gap"]


def test_dm_oracle(tmp_path, capsys):
    ch = sample_channel(2, 2, 2, 2, seed=21)
    path = tmp_path / "channel.json"
    save_channel(ch, path)
    code, out, _ = run(capsys, ["dm-oracle", str(path), "--budget", "480", "--seed", "1",
                                "--r2-grid", "101"])
    assert code == 0
    doc = json.loads(out)
    assert doc["checks"]["more_capable"]["status"] in ("holds", "violated")
    assert doc["inner_within_outer"] is True
    assert len(doc["inner_frontier"]) >= 1
    r2s = [row[0] for row in doc["inner_frontier"]]
    assert r2s == sorted(r2s, reverse=True)


def test_dm_oracle_missing_file(capsys):
    code, _, _ = run(capsys, ["dm-oracle", "/no/such/channel.json"])
    assert code == 3


def test_simulate_zero_rates(capsys):
    code, out, _ = run(capsys, ["simulate", "--r1", "0", "--r2", "0", "--trials", "25",
                                "--n", "6"])
    assert code == 0
    doc = json.loads(out)
    assert doc["err1_rate"] == 0.0 and doc["err2_rate"] == 0.0
    assert doc["config"]["m1"] == 1
    assert len(doc["ci1"]) == 2 and len(doc["empirical_power"]) == 2


def test_simulate_malformed(capsys):
    code, _, _ = run(capsys, ["simulate", "--alpha", "2.0"])
    assert code == 4


def test_simulate_cap_exceeded(capsys):
    code, _, err = run(capsys, ["simulate", "--r1", "3", "--r2", "1", "--n", "12",
                                "--trials", "5"])
    assert code == 4
    assert "cap" in err

import math
from fractions import Fraction

import pytest

import ffharm.expsums
from ffharm import ExponentPair, FieldCtx, SearchConfig, SumValue, build_variety, rnorm_search
from ffharm.cli import ScanSpec, cmd_restrict_scan, cmd_sum, cmd_verify_lemma1, main


def test_sum_kloosterman_output(capsys):
    assert main(["sum", "kloosterman", "--q", "3", "--a", "1", "--b", "1"]) == 0
    out = capsys.readouterr().out
    assert "-1.000000" in out
    assert "PASS" in out


def test_sum_gauss_magnitude(capsys):
    assert main(["sum", "gauss", "--q", "5", "--a", "1"]) == 0
    out = capsys.readouterr().out
    assert f"{math.sqrt(5):.6f}" in out


def test_sum_rejects_composite_q():
    with pytest.raises(SystemExit) as info:
        main(["sum", "gauss", "--q", "4", "--a", "1"])
    assert info.value.code == 2


def test_sum_requires_b_for_kloosterman():
    with pytest.raises(SystemExit) as info:
        main(["sum", "kloosterman", "--q", "3", "--a", "1"])
    assert info.value.code == 2


def test_sphere_count_and_ft(capsys):
    assert main(["sphere", "count", "--q", "3", "--d", "2", "--j", "1"]) == 0
    assert "enumerated=4" in capsys.readouterr().out
    assert main(["sphere", "ft", "--q", "3", "--d", "2", "--j", "1", "--x", "1,1"]) == 0
    out = capsys.readouterr().out
    assert "-2.000000" in out


def test_verify_lemma1_passes(capsys):
    assert cmd_verify_lemma1([3, 5], [2, 3]) == 0
    out = capsys.readouterr().out
    assert out.count("PASS") == 4


def test_verify_lemma1_catches_tampered_gauss(monkeypatch, capsys):
    original = ffharm.expsums.gauss

    def negated(ctx, a):
        sv = original(ctx, a)
        return SumValue(-sv.value, sv.kind, sv.params)

    monkeypatch.setattr(ffharm.expsums, "gauss", negated)
    assert cmd_verify_lemma1([3], [3]) == 1
    out = capsys.readouterr().out
    assert "FAIL" in out
    assert "first j=" in out


def test_variety_info_and_intersect(capsys):
    assert main(["variety", "info", "--q", "3", "--d", "3", "--variety", "paraboloid"]) == 0
    out = capsys.readouterr().out
    assert "|V|=9" in out and "|V cap S_0|=5" in out
    assert main(["variety", "intersect", "--q", "3", "--d", "3", "--variety", "plane"]) == 0
    assert main(["variety", "intersect", "--q", "3", "--d", "3", "--variety", "sphere:0"]) == 1


def test_restrict_norm_methods(capsys):
    base = ["restrict", "norm", "--q", "5", "--d", "3", "--variety", "paraboloid"]
    assert main(base + ["--p", "3/2", "--r", "2"]) == 0
    assert main(base + ["--p", "2", "--r", "2", "--method", "exact22"]) == 0
    assert main(base + ["--p", "2", "--r", "2", "--method", "witness"]) == 0
    with pytest.raises(SystemExit) as info:
        main(base + ["--p", "3/2", "--r", "2", "--method", "exact22"])
    assert info.value.code == 2


def test_restrict_norm_rejects_decimal_exponent():
    with pytest.raises(SystemExit) as info:
        main(
            ["restrict", "norm", "--q", "5", "--d", "3", "--variety", "plane",
             "--p", "1.5", "--r", "2"]
        )
    assert info.value.code == 2


def test_restrict_region_output(capsys):
    assert main(["restrict", "region", "--d", "3", "--p", "3/2", "--r", "2"]) == 0
    out = capsys.readouterr().out
    assert "(2/3, 1/2)" in out
    assert "necessary region (d=3): True" in out
    assert "= 0" in out


def test_ft_selftest(capsys):
    assert main(["ft", "selftest", "--q", "3", "--d", "2", "--trials", "3"]) == 0
    assert capsys.readouterr().out.count("PASS") == 3


def _spec(tmp_path, name, seed=7):
    return ScanSpec(
        variety="paraboloid",
        d=3,
        qs=[3, 5, 7],
        pair=ExponentPair(Fraction(3, 2), Fraction(2)),
        method="search",
        seed=seed,
        sign_mode="signed",
        out=str(tmp_path / name),
    )


def test_scan_deterministic(tmp_path, capsys):
    spec_a = _spec(tmp_path, "a.csv")
    spec_b = _spec(tmp_path, "b.csv")
    assert cmd_restrict_scan(spec_a) == 0
    assert cmd_restrict_scan(spec_b) == 0
    a = (tmp_path / "a.csv").read_bytes()
    b = (tmp_path / "b.csv").read_bytes()
    assert a == b
    assert a.startswith(b"q,d,variety,p,r,method,sign_mode,estimate,")
    assert b"\r" not in a  # LF endings


def test_scan_worker_count_does_not_change_output(tmp_path, monkeypatch):
    spec_a = _spec(tmp_path, "serial.csv")
    monkeypatch.setenv("FFHARM_THREADS", "1")
    cmd_restrict_scan(spec_a)
    monkeypatch.setenv("FFHARM_THREADS", "4")
    spec_b = _spec(tmp_path, "threaded.csv")
    cmd_restrict_scan(spec_b)
    assert (tmp_path / "serial.csv").read_bytes() == (tmp_path / "threaded.csv").read_bytes()


def test_scan_rows_match_single_runs(tmp_path):
    spec = _spec(tmp_path, "match.csv", seed=3)
    cmd_restrict_scan(spec)
    lines = (tmp_path / "match.csv").read_text().strip().split("\n")[1:]
    for line in lines:
        fields = line.split(",")
        q, estimate = int(fields[0]), float(fields[7])
        v = build_variety(FieldCtx(q, 3), "paraboloid")
        rep = rnorm_search(v, spec.pair, SearchConfig(seed=3, sign_mode="signed"))
        assert abs(rep.estimate - estimate) < 1e-9


def test_scan_flushes_partial_results_on_failure(tmp_path, capsys):
    spec = ScanSpec(
        variety="poly:1",  # empty variety: every q fails
        d=2,
        qs=[3, 5],
        pair=ExponentPair(Fraction(2), Fraction(2)),
        method="search",
        out=str(tmp_path / "fail.csv"),
    )
    with pytest.warns(UserWarning):
        assert cmd_restrict_scan(spec) == 1
    text = (tmp_path / "fail.csv").read_text()
    assert text.startswith("q,d,")
    assert len(text.strip().split("\n")) == 1  # header only


def test_scan_spec_rejects_bad_q():
    with pytest.raises(ValueError):
        ScanSpec(
            variety="plane",
            d=3,
            qs=[4],
            pair=ExponentPair(Fraction(2), Fraction(2)),
            out="x.csv",
        )


def test_cmd_sum_direct():
    assert cmd_sum("gauss", 7, 3) == 0
    assert cmd_sum("salie", 7, 2, 5) == 0

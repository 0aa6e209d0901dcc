from fractions import Fraction

import pytest

import derand


def test_names():
    assert "maxcut" in derand.construction_names()
    assert len(derand.construction_names()) == 16
    assert "even-odds" in derand.game_names()


def test_rng_golden():
    assert derand.stream_values(0, 0, 2) == [0x99EC5F36CB75F2B4, 0xBF6E1F784956452A]
    assert derand.stream_values(42, 7, 1) == [0x11A904479C05B3DA]


def test_verify_maxcut():
    res = derand.verify("maxcut", gen="triangle", trials=20000, seed=7)
    assert res.exit_code == derand.EXIT_OK
    assert res.report["verdict"] == "CONSISTENT"
    assert res.report["claimed_bound"] == 0.25
    assert abs(res.report["p_hat"] - 0.75) < 0.02


def test_verify_deterministic():
    a = derand.verify("coloring", gen="petersen", colors=8, trials=5000, seed=3, threads=1)
    b = derand.verify("coloring", gen="petersen", colors=8, trials=5000, seed=3, threads=4)
    a.report.pop("wall_ms")
    b.report.pop("wall_ms")
    assert a.report == b.report


def test_refuted_exit_code():
    res = derand.verify("maxcut", gen="triangle", claim=0.99, trials=20000)
    assert res.exit_code == derand.EXIT_REFUTED
    assert res.report["verdict"] == "REFUTED"


def test_exact_fraction():
    assert derand.exact_good_fraction("maxcut", gen="triangle") == pytest.approx(0.75)
    assert derand.exact_good_fraction("coloring", gen="triangle", colors=6) == pytest.approx(5 / 9)


def test_even_odds():
    assert derand.even_odds_win_fraction(16) == Fraction(14893, 65536)
    res = derand.game("even-odds", rounds=9, trials=20000)
    assert res.exit_code == derand.EXIT_OK


def test_solve_and_generate():
    res = derand.solve("maxcut", gen="petersen")
    assert res.exit_code == derand.EXIT_OK
    assert res.report["params"]["results"]["valid"]
    assert derand.generate("cycle5").startswith("5 5")


def test_errors():
    res = derand.verify("no-such-construction", gen="triangle")
    assert res.exit_code == derand.EXIT_ERROR
    with pytest.raises(derand.DerandError):
        derand.generate("kcnf:n=3")

import json
import math
from fractions import Fraction

import pytest

import floorsum


def test_floor_sum_small():
    assert floorsum.floor_sum("tau2", 10) == 17
    assert floorsum.floor_sum("tau2", 10, method="direct") == 17
    assert floorsum.floor_sum("tau3", 12345, method="dual") == floorsum.floor_sum("tau3", 12345)
    lam = floorsum.floor_sum("lambda", 10)
    assert math.isclose(lam, math.log(2 * 2 * 3 * 5))


def test_blocks():
    blocks = floorsum.distinct_quotients(100)
    assert len(blocks) == 19
    assert blocks[0] == (100, 1, 1)
    assert blocks[-1][2] == 100


def test_sieve():
    assert floorsum.sieve("mu", 1, 11) == [1, -1, -1, 0, -1, 1, -1, 0, 0, 1]
    assert floorsum.sieve("tau2", 1, 7) == [1, 2, 2, 3, 2, 4]


def test_exponent_pair():
    k, l = floorsum.eval_word("BA^5", Fraction(13, 84), Fraction(55, 84))
    assert (k, l) == (Fraction(1653, 3494), Fraction(1760, 3494))


def test_balance():
    sol = floorsum.minimize_max(["7/15 + r", "11/24 + 7w/12", "1/2 - w - r"], ["r", "w"])
    assert sol["assignment"] == {"r": Fraction(1, 195), "w": Fraction(3, 130)}
    assert sol["value"] == Fraction(92, 195)
    with pytest.raises(ValueError):
        floorsum.minimize_max(["1 - t"], ["t"], {"t": (0, None)})


def test_constant_and_vaughan():
    b = floorsum.main_constant("tau2", 100000)
    assert b["lo"] < b["hi"] < b["lo"] + 1e-3
    v = floorsum.vaughan_check(1000, seed=3)
    assert v["rel_err"] < 1e-9
    r = floorsum.vaaler_check(10, 2000)
    assert r["max_violation"] <= 1e-12


def test_expsum_and_classify():
    z = floorsum.expsum("monomial1d", N=100, x=10**6)
    assert abs(z) <= 100
    assert floorsum.classify(3, 1000, [10, 10, 10])["case"] == "II"


def test_cli_in_process():
    code, out, _ = floorsum.run_cli(["exppair", "--word", "BA^5", "--base", "13/84,55/84"])
    assert code == 0
    assert json.loads(out)["kappa"] == {"num": "1653", "den": "3494"}
    code, _, err = floorsum.run_cli(["floorsum", "--f", "tau2", "--x", "0"])
    assert code == 3 and err


def test_errors():
    with pytest.raises(floorsum.DomainError):
        floorsum.sieve("mu", 0, 10)
    with pytest.raises(floorsum.ParseError):
        floorsum.floor_sum("sigma", 10)

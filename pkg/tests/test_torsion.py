from fractions import Fraction

import pytest

from l2latt.realforms import derive, product
from l2latt.torsion import (
    HYPERBOLIC_CONSTANTS,
    LedgerError,
    StratumLedger,
    boundary_ledger,
    corner_strata,
    torsion_verdict,
)


def test_sl_verdicts():
    for n in (5, 6, 9, 10):
        assert torsion_verdict(derive("SL", n)).kind == "Zero"
    for n in (3, 4, 7, 8):
        v = torsion_verdict(derive("SL", n))
        assert v.kind == "OddOpen" and v.euler_char_zero


def test_hyperbolic_constants():
    expected = {1: Fraction(-1, 6), 2: Fraction(31, 45), 3: Fraction(-221, 70)}
    for n, const in expected.items():
        v = torsion_verdict(derive("SO", 2 * n + 1, 1))
        assert v.kind == "HyperbolicOddProportional"
        assert v.rational_constant == const == HYPERBOLIC_CONSTANTS[n]
        assert v.pi_power == n
        assert v.to_json()["constant"] == {"rational": str(const), "pi_power": -n}


def test_hyperbolic_beyond_table():
    v = torsion_verdict(derive("SO", 9, 1))
    assert v.kind == "HyperbolicOddProportional"
    assert v.rational_constant is None
    assert "not tabulated" in v.note


def test_not_acyclic_witness():
    v = torsion_verdict(derive("SO", 4, 1))
    assert v.kind == "NotAcyclic"
    assert v.witness_degree == 2
    assert not v.euler_char_zero


def test_product_routing():
    two_pos = product(derive("SL", 3), derive("SO", 3, 1))
    assert torsion_verdict(two_pos).kind == "Zero"
    one_pos = product(derive("SO", 3, 1), derive("SO", 2, 2))
    v = torsion_verdict(one_pos)
    assert v.kind == "HyperbolicOddProportional"
    none_pos = product(derive("SO", 2, 2), derive("SU", 2, 1))
    v = torsion_verdict(none_pos)
    assert v.kind == "NotAcyclic" and v.witness_degree == (4 + 4) // 2


def test_verdict_consistency():
    for g in (derive("SL", 3), derive("SL", 6), derive("SO", 4, 1),
              derive("SO", 3, 1), derive("SO", 3, 3)):
        v = torsion_verdict(g)
        if v.kind == "Zero":
            assert v.euler_char_zero
        if v.kind == "NotAcyclic":
            assert v.deficiency == 0
            assert g.dim_X == 2 * v.witness_degree


def test_ledger_pushout():
    led = StratumLedger()
    led.assign("X0", Fraction(1, 2))
    led.assign("X1", 2)
    led.assign("X2", 3)
    led.add_pushout("X0", "X1", "X2", "X")
    out = led.propagate()
    assert out.values["X"] == Fraction(9, 2)


def test_ledger_unknown_blame():
    led = StratumLedger()
    led.assign("X0", 0)
    led.assign("X1", "unknown")
    led.assign("X2", 1)
    led.add_pushout("X0", "X1", "X2", "X")
    led.add_pushout("X0", "X", "X2", "Y")
    out = led.propagate()
    assert out.values["X"].startswith("unknown (blame: X1")
    assert out.values["Y"].startswith("unknown (blame: X")


def test_ledger_cycle_detected():
    led = StratumLedger()
    led.assign("A", 0)
    led.add_pushout("A", "B", "A", "C")
    led.add_pushout("A", "C", "A", "B")
    with pytest.raises(LedgerError):
        led.propagate()


def test_ledger_duplicate_result_rejected():
    led = StratumLedger()
    led.add_pushout("A", "B", "C", "X")
    led.add_pushout("A", "B", "D", "X")
    with pytest.raises(LedgerError):
        led.propagate()


def test_boundary_ledger_vanishes():
    for r in (1, 2, 3, 4):
        out = boundary_ledger(r).propagate()
        assert out.values["X1"] == 0


def test_corner_strata_counts():
    for l in range(11):
        strata = corner_strata(l)
        assert len(strata) == 2 ** l
        total = sum(s["contribution"] for s in strata)
        assert total == (1 if l == 0 else 0)
        assert {s["dim"] for s in strata} == set(range(l + 1))

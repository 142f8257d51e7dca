from math import comb

import pytest

from trisys.detect import parse_configs
from trisys.formulas import ENTRIES, Status, all_config_sets, formula_entry, formula_value


def test_fifteen_entries():
    sets = all_config_sets()
    assert len(sets) == 15 == len(set(sets)) == len(ENTRIES)
    assert sets[0] == parse_configs("ABCD")


@pytest.mark.parametrize("n, S, value, status", [
    (20, "CD", 90, Status.EXACT),
    (13, "D", 52, Status.EXACT),
    (18, "D", 96, Status.EXACT_FOR_LARGE_N),
    (7, "ABD", 8, Status.EXACT),
    (16, "ABD", 32, Status.EXACT),
    (40, "B", 13 * 13 * 14, Status.EXACT),
    (20, "B", 6 * 7 * 7, Status.EXACT_FOR_LARGE_N),
    (9, "AC", 17, Status.EXACT),
    (10, "AD", 22, Status.EXACT),
    (9, "A", 28, Status.EXACT_FOR_LARGE_N),
])
def test_values(n, S, value, status):
    fv = formula_value(n, S)
    assert fv.value == value and fv.status is status


def test_open_and_asymptotic():
    assert formula_value(10, "C").status is Status.OPEN
    assert formula_value(10, "C").value is None
    assert formula_value(30, "BCD").status is Status.ASYMPTOTIC_ONLY


def test_trivial_rule():
    for n in range(0, 6):
        fv = formula_value(n, "A")
        assert fv.value == comb(n, 3) and fv.exact and fv.trivial
    assert formula_value(3, "C").value == 1
    assert not formula_value(6, "A").trivial


@pytest.mark.parametrize("n, expected", [(4, 4), (13, 52), (16, 80), (12, 40), (15, 65)])
def test_d_exact_residues(n, expected):
    for S in ("D", "BD"):
        fv = formula_value(n, S)
        assert fv.value == expected and fv.exact and (fv.upper_bound or fv.trivial)


def test_d_residue_table():
    for n in range(5, 200):
        r = n % 12
        v = formula_value(n, "D").value
        vb = formula_value(n, "BD").value
        if r in (1, 4):
            assert v == vb == n * (n - 1) // 3
        elif r in (7, 10):
            assert v == vb == n * (n - 1) // 3 - 4
        elif r in (0, 2, 3, 8):
            assert v == vb == n * (n - 2) // 3
        elif r in (5, 11):
            assert v == vb == n * (n - 2) // 3 - 1
        else:
            assert v == n * (n - 2) // 3 and vb == v - 1


def test_value_defined_whenever_exact():
    for S in all_config_sets():
        for n in range(0, 60):
            fv = formula_value(n, S)
            if fv.status in (Status.EXACT, Status.EXACT_FOR_LARGE_N):
                assert isinstance(fv.value, int)


def test_entry_rejects():
    with pytest.raises(ValueError):
        formula_entry("A+")
    with pytest.raises(ValueError):
        formula_entry("")
    with pytest.raises(ValueError):
        formula_value(-1, "A")


def test_status_text():
    assert formula_entry("ABCD").status_text == "exact"
    assert formula_entry("C").status_text == "open"
    assert "mod 12" in formula_entry("D").status_text

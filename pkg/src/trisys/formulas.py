"""Closed forms for ex(n, S) over the fifteen non-empty S ⊆ {A, B, C, D}."""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass
from math import comb
from typing import Callable, Iterable

from .detect import BASIC, Config, config_label, parse_configs

VERTICES_NEEDED = {Config.A: 6, Config.B: 5, Config.C: 4, Config.D: 5, Config.APlus: 6, Config.BPlus: 5}


class Status(enum.Enum):
    EXACT = "exact"
    EXACT_FOR_LARGE_N = "exact_for_large_n"
    ASYMPTOTIC_ONLY = "asymptotic_only"
    OPEN = "open"
    UNSTATED = "unstated"  # n outside every stated range of the entry


@dataclass(frozen=True)
class FormulaEntry:
    configs: frozenset
    formula: str
    validity: str
    status_rule: Callable[[int], Status]
    value_rule: Callable[[int], int | None]
    status_note: str = ""  # summary when the status depends on n

    @property
    def status_text(self) -> str:
        return self.status_note or self.status_rule(40).value

    @property
    def label(self) -> str:
        return config_label(self.configs)


@dataclass(frozen=True)
class FormulaValue:
    configs: frozenset
    n: int
    value: int | None
    status: Status
    upper_bound: bool = False  # value is a valid upper bound for every n
    trivial: bool = False  # no forbidden configuration fits on n vertices

    @property
    def exact(self) -> bool:
        return self.status is Status.EXACT and self.value is not None


def quarter(n: int) -> int:
    return (n - 1) ** 2 // 4


def eighth(n: int) -> int:
    return n * n // 8


def tripartite(n: int) -> int:
    return (n // 3) * ((n + 1) // 3) * ((n + 2) // 3)


def ac_value(n: int) -> int:
    if n % 2 == 0 or n in (1, 3):
        return quarter(n)
    return quarter(n) + 1


def ad_value(n: int) -> int | None:
    if n % 2 == 1:
        return quarter(n)
    return quarter(n) + 2 if n >= 4 else None


def dbd_value(n: int, with_b: bool) -> int:
    r = n % 12
    if r in (1, 4):
        return n * (n - 1) // 3
    if r in (7, 10):
        return n * (n - 1) // 3 - 4
    if r in (0, 2, 3, 8):
        return n * (n - 2) // 3
    if r in (5, 11):
        return n * (n - 2) // 3 - 1
    return n * (n - 2) // 3 - (1 if with_b else 0)


def abd_value(n: int) -> int | None:
    if n >= 8:
        return eighth(n)
    if n == 7:
        return 8
    return None


def _always(status: Status) -> Callable[[int], Status]:
    return lambda n: status


def _dbd_status(n: int) -> Status:
    return Status.EXACT if n % 12 in (0, 1, 3, 4) else Status.EXACT_FOR_LARGE_N


_DBD_NOTE = "exact for n ≡ 0,1,3,4 (mod 12); exact_for_large_n otherwise"


def _entry(label: str, formula: str, validity: str, status_rule, value_rule, note: str = "") -> FormulaEntry:
    return FormulaEntry(parse_configs(label), formula, validity, status_rule, value_rule, note)


ENTRIES: dict[frozenset, FormulaEntry] = {
    e.configs: e
    for e in (
        _entry("ABCD", "⌊n²/8⌋", "n ≥ 1", _always(Status.EXACT), eighth),
        _entry(
            "ABD",
            "⌊n²/8⌋ (n ≥ 8); 8 at n = 7",
            "n ≥ 7",
            lambda n: Status.EXACT if n >= 7 else Status.UNSTATED,
            abd_value,
            "exact for n ≥ 7",
        ),
        _entry("ABC", "⌊(n−1)²/4⌋", "n ≥ 1", _always(Status.EXACT), quarter),
        _entry("ACD", "⌊(n−1)²/4⌋", "n ≥ 1", _always(Status.EXACT), quarter),
        _entry("CD", "⌊(n−1)²/4⌋", "n ≥ 1", _always(Status.EXACT), quarter),
        _entry("AB", "C(n−1,2)", "n ≥ 5", lambda n: Status.EXACT if n >= 5 else Status.UNSTATED,
               lambda n: comb(n - 1, 2) if n >= 5 else None),
        _entry("AC", "⌊(n−1)²/4⌋ (n even or n ≤ 3); (n−1)²/4 + 1 (n odd ≥ 5)", "n ≥ 1",
               _always(Status.EXACT), ac_value),
        _entry("AD", "⌊(n−1)²/4⌋ + 2 (n even ≥ 4); (n−1)²/4 (n odd)", "n odd, or n even ≥ 4",
               lambda n: Status.EXACT if (n % 2 == 1 or n >= 4) else Status.UNSTATED, ad_value),
        _entry("BC", "⌊n/3⌋⌊(n+1)/3⌋⌊(n+2)/3⌋", "n ≥ 1", _always(Status.EXACT), tripartite),
        _entry("BCD", "n²/4 (1 − o(1))", "asymptotic", _always(Status.ASYMPTOTIC_ONLY), lambda n: None),
        _entry("BD", "residue classes mod 12", "n ≥ n₀; exact for n ≡ 0,1,3,4 (mod 12)",
               _dbd_status, lambda n: dbd_value(n, True), _DBD_NOTE),
        _entry("D", "residue classes mod 12", "n ≥ n₀; exact for n ≡ 0,1,3,4 (mod 12)",
               _dbd_status, lambda n: dbd_value(n, False), _DBD_NOTE),
        _entry("A", "C(n−1,2)", "n ≥ n₀", _always(Status.EXACT_FOR_LARGE_N), lambda n: comb(n - 1, 2)),
        _entry("B", "⌊n/3⌋⌊(n+1)/3⌋⌊(n+2)/3⌋", "n ≥ 33",
               lambda n: Status.EXACT if n >= 33 else Status.EXACT_FOR_LARGE_N, tripartite,
               "exact for n ≥ 33"),
        _entry("C", "unknown; between (2/7)C(n,3) and 0.287 C(n,3) asymptotically", "open",
               _always(Status.OPEN), lambda n: None),
    )
}

# entries whose value bounds ex(n, S) from above for every n
UPPER_BOUND_EVERYWHERE = {parse_configs("D"), parse_configs("BD")}


def formula_entry(S: Iterable[Config | str] | str) -> FormulaEntry:
    key = parse_configs(S)
    if not key or not key <= set(BASIC):
        raise ValueError("S must be a non-empty subset of {A, B, C, D}")
    return ENTRIES[key]


def formula_value(n: int, S: Iterable[Config | str] | str) -> FormulaValue:
    """Evaluate the catalog at ``n``.

    When no configuration of ``S`` fits on ``n`` vertices the answer is C(n, 3)
    with exact status, whatever the large-n entry says.
    """
    if n < 0:
        raise ValueError("n must be non-negative")
    entry = formula_entry(S)
    key = entry.configs
    if n < min(VERTICES_NEEDED[c] for c in key):
        return FormulaValue(key, n, comb(n, 3), Status.EXACT, trivial=True)
    status = entry.status_rule(n)
    value = entry.value_rule(n)
    if value is None and status is Status.EXACT:
        status = Status.UNSTATED
    return FormulaValue(key, n, value, status, upper_bound=key in UPPER_BOUND_EVERYWHERE and value is not None)


def all_config_sets() -> list[frozenset]:
    """The fifteen non-empty subsets, largest first, then alphabetical."""
    subsets = []
    for r in range(4, 0, -1):
        for combo in itertools.combinations(BASIC, r):
            subsets.append(frozenset(combo))
    return subsets

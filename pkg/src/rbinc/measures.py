"""Classical and rule-based inconsistency measures.

Every measure maps a rule base to a non-negative exact rational.  Measures
built on minimal inconsistent subsets share one :class:`~rbinc.mis.Universe`
so a Shapley sweep over all coalitions enumerates MIs only once.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, product
from typing import Callable, Iterable

from .core import Rule, RuleBase
from .limits import check_atoms
from .mis import Universe, checked_universe

__all__ = [
    "Measure",
    "MEASURES",
    "CLASSICAL",
    "RULE_BASED",
    "UnknownMeasure",
    "get_measure",
    "contension",
    "i_drastic",
    "i_mi",
    "i_problematic",
    "i_contension",
    "i_rb_drastic",
    "i_rb_mi",
    "i_rb_problematic",
    "i_rb_contension",
    "MeasureReport",
    "measure_report",
]


class UnknownMeasure(KeyError):
    pass


def contension(rules: Iterable[Rule], limit: int | None = None) -> int:
    """Fewest atoms valued ``b`` in a three-valued model of ``rules``.

    Tries paradoxical sets D in ascending size (lexicographic within a size)
    and, for each, every two-valued assignment of the remaining atoms.
    """
    rules = list(rules)
    atoms = sorted({a for r in rules for a in r.atoms})
    check_atoms(len(atoms), limit)
    pos = {a: i for i, a in enumerate(atoms)}
    # a literal is (atom index, positive); its value is v or 2 - v
    compiled = [
        ((pos[r.head.atom], r.head.positive), [(pos[l.atom], l.positive) for l in r.body])
        for r in rules
    ]

    def satisfied(v: list[int]) -> bool:
        for (h, hp), body in compiled:
            hv = v[h] if hp else 2 - v[h]
            if hv >= 1:
                continue
            # negated body literal is designated iff the literal is not t
            if not any((v[a] if p else 2 - v[a]) <= 1 for a, p in body):
                return False
        return True

    n = len(atoms)
    for k in range(n + 1):
        for paradox in combinations(range(n), k):
            rest = [i for i in range(n) if i not in paradox]
            v = [0] * n
            for i in paradox:
                v[i] = 1
            for bits in product((2, 0), repeat=len(rest)):
                for i, x in zip(rest, bits):
                    v[i] = x
                if satisfied(v):
                    return k
    raise AssertionError("unreachable: all-b interpretation satisfies every rule")


@dataclass(frozen=True)
class Measure:
    """A named inconsistency measure.

    ``on_subset(universe, mask)`` evaluates the measure on the sub-base
    selected by ``mask``; calling the measure on a rule base evaluates it on
    the whole base.
    """

    name: str
    label: str
    rule_based: bool
    on_subset: Callable[[Universe, int], Fraction] = field(repr=False)

    def __call__(self, base: RuleBase, limit: int | None = None) -> Fraction:
        u = Universe(base, limit) if limit is not None else checked_universe(base)
        return self.on_subset(u, u.full)


def _popcount(x: int) -> int:
    return bin(x).count("1")


def _drastic(u: Universe, mask: int) -> Fraction:
    return Fraction(0 if u.is_consistent(mask) else 1)


def _mi(u: Universe, mask: int) -> Fraction:
    return Fraction(len(u.mis_within(mask)))


def _problematic(u: Universe, mask: int) -> Fraction:
    return Fraction(_popcount(u.involved(mask)))


def _cached_contension(u: Universe, mask: int) -> Fraction:
    cache = u.__dict__.setdefault("_contension", {})
    if mask not in cache:
        cache[mask] = Fraction(contension(u.rules_of(mask)))
    return cache[mask]


def _contension(u: Universe, mask: int) -> Fraction:
    return _cached_contension(u, mask)


def _rb_union(u: Universe, mask: int) -> int:
    union = 0
    for m in u.mis_without_facts_within(mask):
        union |= m
    return union


def _rb_drastic(u: Universe, mask: int) -> Fraction:
    return Fraction(1 if u.mis_without_facts_within(mask) else 0)


def _rb_mi(u: Universe, mask: int) -> Fraction:
    return Fraction(len(u.mis_without_facts_within(mask)))


def _rb_problematic(u: Universe, mask: int) -> Fraction:
    return Fraction(_popcount(_rb_union(u, mask) & u.rule_mask))


def _rb_contension(u: Universe, mask: int) -> Fraction:
    union = _rb_union(u, mask)
    if not union:
        return Fraction(0)
    return _cached_contension(u, union)


MEASURES: dict[str, Measure] = {
    m.name: m
    for m in (
        Measure("drastic", "I_d", False, _drastic),
        Measure("mi", "I_MI", False, _mi),
        Measure("problematic", "I_p", False, _problematic),
        Measure("contension", "I_c", False, _contension),
        Measure("rb-drastic", "I^RB_d", True, _rb_drastic),
        Measure("rb-mi", "I^RB_MI", True, _rb_mi),
        Measure("rb-problematic", "I^RB_p", True, _rb_problematic),
        Measure("rb-contension", "I^RB_c", True, _rb_contension),
    )
}
CLASSICAL = tuple(n for n, m in MEASURES.items() if not m.rule_based)
RULE_BASED = tuple(n for n, m in MEASURES.items() if m.rule_based)


def get_measure(name: str | Measure) -> Measure:
    if isinstance(name, Measure):
        return name
    try:
        return MEASURES[name]
    except KeyError:
        raise UnknownMeasure(name) from None


i_drastic = MEASURES["drastic"]
i_mi = MEASURES["mi"]
i_problematic = MEASURES["problematic"]
i_contension = MEASURES["contension"]
i_rb_drastic = MEASURES["rb-drastic"]
i_rb_mi = MEASURES["rb-mi"]
i_rb_problematic = MEASURES["rb-problematic"]
i_rb_contension = MEASURES["rb-contension"]


@dataclass(frozen=True)
class MeasureReport:
    values: dict[str, Fraction]
    mi: list[RuleBase]
    mi_without_facts: list[RuleBase]


def measure_report(base: RuleBase, names: Iterable[str] = tuple(MEASURES)) -> MeasureReport:
    u = checked_universe(base)
    values = {n: get_measure(n).on_subset(u, u.full) for n in names}
    return MeasureReport(
        values=values,
        mi=[u.sub_base(m) for m in u.mis],
        mi_without_facts=[u.sub_base(m) for m in u.mis_without_facts],
    )

"""Shapley inconsistency values and their fact-aware adjustment.

The classical value splits the inconsistency of a rule base among all of its
elements.  The adjusted value keeps facts at zero and hands the share a fact
would have received in each coalition to the rules of that coalition that
take part in some minimal inconsistent subset.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from typing import Callable, Iterable, Iterator, Union

from .core import Rule, RuleBase
from .measures import Measure, get_measure
from .mis import checked_universe

__all__ = [
    "ElementNotInBase",
    "NotARule",
    "ShapleyVector",
    "CulpabilityRanking",
    "coal_payoff",
    "shapley_value",
    "shapley_vector",
    "add_payoff",
    "adjusted_shapley_value",
    "adjusted_shapley_vector",
    "max_adjusted",
    "culpability_ranking",
    "rule_involvement_bound",
]

MeasureLike = Union[Measure, str, Callable[[RuleBase], object]]


class ElementNotInBase(KeyError):
    pass


class NotARule(ValueError):
    pass


def _popcount(x: int) -> int:
    return bin(x).count("1")


class _Game:
    """Coalition game over the elements of a rule base, values cached by mask."""

    def __init__(self, measure: MeasureLike, base: RuleBase):
        self.u = u = checked_universe(base)
        self.n = u.n
        if isinstance(measure, str):
            measure = get_measure(measure)
        if isinstance(measure, Measure):
            self._eval = lambda mask: measure.on_subset(u, mask)
        else:
            self._eval = lambda mask: Fraction(measure(u.sub_base(mask)))
        self._values: dict[int, Fraction] = {}
        fn = factorial(self.n)
        self.weights = [Fraction(0)] + [
            Fraction(factorial(b - 1) * factorial(self.n - b), fn) for b in range(1, self.n + 1)
        ]

    def value(self, mask: int) -> Fraction:
        v = self._values.get(mask)
        if v is None:
            v = self._values[mask] = self._eval(mask)
        return v

    def index(self, element: Rule) -> int:
        try:
            return self.u.index[element]
        except KeyError:
            raise ElementNotInBase(str(element)) from None

    def mask(self, coalition: Iterable[Rule]) -> int:
        mask = 0
        for r in coalition:
            mask |= 1 << self.index(r)
        return mask

    def coal(self, i: int, mask: int) -> Fraction:
        if not mask >> i & 1:
            return Fraction(0)
        w = self.weights[_popcount(mask)]
        return w * (self.value(mask) - self.value(mask & ~(1 << i)))

    def add(self, i: int, mask: int) -> Fraction:
        if not mask >> i & 1:
            return Fraction(0)
        involved = self.u.involved(mask)
        if not involved >> i & 1:
            return Fraction(0)
        blamable = _popcount(involved & self.u.rule_mask)
        fact_share = sum((self.coal(f, mask) for f in self.u.members(mask & self.u.fact_mask)), Fraction(0))
        if not fact_share:
            return Fraction(0)
        return fact_share / blamable

    def sweep(self) -> tuple[list[Fraction], list[Fraction]]:
        """Classical and adjusted values for every element in one pass."""
        n, u = self.n, self.u
        classical = [Fraction(0)] * n
        adjusted = [Fraction(0)] * n
        for mask in range(1, u.full + 1):
            w = self.weights[_popcount(mask)]
            here = self.value(mask)
            fact_share = Fraction(0)
            for i in u.members(mask):
                d = here - self.value(mask & ~(1 << i))
                if not d:
                    continue
                c = w * d
                classical[i] += c
                if u.fact_mask >> i & 1:
                    fact_share += c
                else:
                    adjusted[i] += c
            if fact_share:
                blamable = u.involved(mask) & u.rule_mask
                k = _popcount(blamable)
                if k:
                    share = fact_share / k
                    for i in u.members(blamable):
                        adjusted[i] += share
        return classical, adjusted


@dataclass(frozen=True)
class ShapleyVector:
    """Per-element values in canonical element order."""

    entries: tuple[tuple[Rule, Fraction], ...]

    @property
    def elements(self) -> tuple[Rule, ...]:
        return tuple(e for e, _ in self.entries)

    @property
    def values(self) -> tuple[Fraction, ...]:
        return tuple(v for _, v in self.entries)

    def total(self) -> Fraction:
        return sum(self.values, Fraction(0))

    def as_dict(self) -> dict[Rule, Fraction]:
        return dict(self.entries)

    def __getitem__(self, element: Rule) -> Fraction:
        for e, v in self.entries:
            if e == element:
                return v
        raise ElementNotInBase(str(element))

    def __iter__(self) -> Iterator[tuple[Rule, Fraction]]:
        return iter(self.entries)

    def __len__(self) -> int:
        return len(self.entries)


@dataclass(frozen=True)
class CulpabilityRanking:
    entries: tuple[tuple[Rule, Fraction], ...]

    @property
    def order(self) -> tuple[Rule, ...]:
        return tuple(e for e, _ in self.entries)

    def without_facts(self) -> CulpabilityRanking:
        return CulpabilityRanking(tuple((e, v) for e, v in self.entries if not e.is_fact))

    def __iter__(self):
        return iter(self.entries)

    def __len__(self) -> int:
        return len(self.entries)


def coal_payoff(measure: MeasureLike, base: RuleBase, element: Rule, coalition: Iterable[Rule]) -> Fraction:
    g = _Game(measure, base)
    return g.coal(g.index(element), g.mask(coalition))


def shapley_value(measure: MeasureLike, base: RuleBase, element: Rule) -> Fraction:
    g = _Game(measure, base)
    i = g.index(element)
    bit = 1 << i
    return sum((g.coal(i, m) for m in range(1, g.u.full + 1) if m & bit), Fraction(0))


def shapley_vector(measure: MeasureLike, base: RuleBase) -> ShapleyVector:
    g = _Game(measure, base)
    classical, _ = g.sweep()
    return ShapleyVector(tuple(zip(g.u.elements, classical)))


def add_payoff(measure: MeasureLike, base: RuleBase, rule: Rule, coalition: Iterable[Rule]) -> Fraction:
    if rule.is_fact:
        raise NotARule(str(rule))
    g = _Game(measure, base)
    return g.add(g.index(rule), g.mask(coalition))


def adjusted_shapley_value(measure: MeasureLike, base: RuleBase, element: Rule) -> Fraction:
    g = _Game(measure, base)
    i = g.index(element)
    if element.is_fact:
        return Fraction(0)
    bit = 1 << i
    total = Fraction(0)
    for m in range(1, g.u.full + 1):
        if m & bit:
            total += g.coal(i, m) + g.add(i, m)
    return total


def adjusted_shapley_vector(measure: MeasureLike, base: RuleBase) -> ShapleyVector:
    g = _Game(measure, base)
    _, adjusted = g.sweep()
    return ShapleyVector(tuple(zip(g.u.elements, adjusted)))


def max_adjusted(measure: MeasureLike, base: RuleBase) -> Fraction:
    return max(adjusted_shapley_vector(measure, base).values, default=Fraction(0))


def culpability_ranking(measure: MeasureLike, base: RuleBase) -> CulpabilityRanking:
    vec = adjusted_shapley_vector(measure, base)
    order = sorted(range(len(vec)), key=lambda i: (-vec.entries[i][1], i))
    return CulpabilityRanking(tuple(vec.entries[i] for i in order))


def rule_involvement_bound(base: RuleBase, rule: Rule) -> Fraction | None:
    """Lower bound on the adjusted value of a non-free rule.

    Taken from the coalition equal to the smallest MI containing the rule:
    its own marginal plus the even split of the facts' marginals, each
    marginal at least one.  Returns None for facts and free rules.
    """
    if rule.is_fact:
        return None
    u = checked_universe(base)
    bit = 1 << u.index[rule]
    containing = [m for m in u.mis if m & bit]
    if not containing:
        return None
    n = u.n
    best = None
    smallest = min(_popcount(m) for m in containing)
    for m in containing:
        if _popcount(m) != smallest:
            continue
        w = Fraction(factorial(smallest - 1) * factorial(n - smallest), factorial(n))
        nfacts = _popcount(m & u.fact_mask)
        nrules = _popcount(m & u.rule_mask)
        bound = w + nfacts * w / nrules
        best = bound if best is None or bound > best else best
    return best

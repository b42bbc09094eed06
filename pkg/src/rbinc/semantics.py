"""Minimal-model consistency and three-valued (paraconsistent) evaluation."""

from __future__ import annotations

from collections import defaultdict, deque
from dataclasses import dataclass
from enum import IntEnum
from typing import Iterable, Mapping

from .core import Atom, Literal, Rule, RuleBase

__all__ = [
    "TruthValue",
    "ThreeValuedInterpretation",
    "UnknownAtom",
    "minimal_model",
    "is_consistent",
    "is_consistent_literals",
    "eval3",
    "satisfies3",
]


class UnknownAtom(KeyError):
    pass


class TruthValue(IntEnum):
    """Truth values under the truth order f < b < t."""

    F = 0
    B = 1
    T = 2

    def neg(self) -> TruthValue:
        return TruthValue(2 - self)

    @property
    def designated(self) -> bool:
        return self is not TruthValue.F

    def __str__(self) -> str:
        return self.name.lower()


@dataclass(frozen=True)
class ThreeValuedInterpretation:
    assignment: Mapping[Atom, TruthValue]

    def __init__(self, assignment: Mapping[Atom | str, TruthValue | str]):
        norm = {}
        for atom, value in assignment.items():
            if isinstance(atom, str):
                atom = Atom(atom)
            if isinstance(value, str):
                value = TruthValue[value.upper()]
            norm[atom] = TruthValue(value)
        object.__setattr__(self, "assignment", norm)

    @property
    def signature(self) -> frozenset[Atom]:
        return frozenset(self.assignment)

    def __getitem__(self, atom: Atom) -> TruthValue:
        try:
            return self.assignment[atom]
        except KeyError:
            raise UnknownAtom(atom.name) from None

    def value(self, lit: Literal) -> TruthValue:
        v = self[lit.atom]
        return v if lit.positive else v.neg()

    def paradoxical(self) -> frozenset[Atom]:
        return frozenset(a for a, v in self.assignment.items() if v is TruthValue.B)

    def __hash__(self):
        return hash(frozenset(self.assignment.items()))


def minimal_model(b: RuleBase | Iterable[Rule]) -> frozenset[Literal]:
    """Least closed set of literals, by worklist forward chaining."""
    rules = list(b)
    waiting: dict[Literal, list[int]] = defaultdict(list)
    missing = []
    queue: deque[Literal] = deque()
    for i, r in enumerate(rules):
        missing.append(len(r.body))
        for l in r.body:
            waiting[l].append(i)
        if not r.body:
            queue.append(r.head)
    model: set[Literal] = set()
    while queue:
        lit = queue.popleft()
        if lit in model:
            continue
        model.add(lit)
        for i in waiting.get(lit, ()):
            missing[i] -= 1
            if missing[i] == 0:
                queue.append(rules[i].head)
    return frozenset(model)


def is_consistent_literals(lits: Iterable[Literal]) -> bool:
    lits = set(lits)
    return not any(l.complement() in lits for l in lits)


def is_consistent(b: RuleBase | Iterable[Rule]) -> bool:
    return is_consistent_literals(minimal_model(b))


def eval3(v: ThreeValuedInterpretation, r: Rule) -> TruthValue:
    """Value of a rule read as the disjunction ``!l1 | ... | !lm | l0``."""
    result = v.value(r.head)
    for l in r.body:
        result = max(result, v.value(l).neg())
    return result


def satisfies3(v: ThreeValuedInterpretation, rules: Iterable[Rule]) -> bool:
    return all(eval3(v, r).designated for r in rules)

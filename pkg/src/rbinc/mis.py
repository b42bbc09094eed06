"""Minimal inconsistent subsets, pure fact sets and free formulas."""

from __future__ import annotations

from functools import lru_cache
from itertools import combinations
from typing import Iterable

from .core import Rule, RuleBase
from .limits import check_subsets

__all__ = [
    "Universe",
    "universe",
    "checked_universe",
    "enumerate_mi",
    "enumerate_mi_without_facts",
    "is_pure_fact_set",
    "free_formulas",
    "ordered_mis",
]

MISet = frozenset  # frozenset[frozenset[Rule]]


def is_pure_fact_set(m: Iterable[Rule]) -> bool:
    heads = {r.head for r in m if r.is_fact}
    return any(h.complement() in heads for h in heads)


def _popcount(x: int) -> int:
    return bin(x).count("1")


class Universe:
    """A rule base indexed by bit position in canonical element order.

    Subsets are ints: bit ``i`` set means ``elements[i]`` is present.  The MI
    family of the whole base is computed once; the MI family of any subset is
    the restriction ``{M in MI(B) | M <= C}``.
    """

    def __init__(self, base: RuleBase, limit: int | None = None):
        check_subsets(len(base), limit)
        self.base = base
        self.elements: tuple[Rule, ...] = base.elements
        self.n = len(self.elements)
        self.full = (1 << self.n) - 1
        self.index = {e: i for i, e in enumerate(self.elements)}

        atoms = sorted(base.signature)
        atom_id = {a: i for i, a in enumerate(atoms)}

        def lit_id(l):
            return 2 * atom_id[l.atom] + (1 if l.positive else 0)

        # literal sets are ints: bit 2k is !atom_k, bit 2k+1 is atom_k
        self._heads = [1 << lit_id(r.head) for r in self.elements]
        self._bodies = [sum(1 << lit_id(l) for l in r.body) for r in self.elements]
        self._neg_bits = sum(1 << (2 * k) for k in range(len(atoms)))
        self.fact_mask = sum(1 << i for i, r in enumerate(self.elements) if r.is_fact)
        self.rule_mask = self.full & ~self.fact_mask
        self._consistent: dict[int, bool] = {}
        self._mis: tuple[int, ...] | None = None
        self._pure: tuple[bool, ...] | None = None

    # -- subsets -------------------------------------------------------------

    def mask_of(self, rules: Iterable[Rule]) -> int:
        mask = 0
        for r in rules:
            mask |= 1 << self.index[r]
        return mask

    def members(self, mask: int) -> list[int]:
        out = []
        while mask:
            low = mask & -mask
            out.append(low.bit_length() - 1)
            mask ^= low
        return out

    def rules_of(self, mask: int) -> frozenset[Rule]:
        return frozenset(self.elements[i] for i in self.members(mask))

    def sub_base(self, mask: int) -> RuleBase:
        return RuleBase(self.rules_of(mask))

    # -- consistency -----------------------------------------------------------

    def is_consistent(self, mask: int) -> bool:
        hit = self._consistent.get(mask)
        if hit is None:
            hit = self._chain(mask)
            self._consistent[mask] = hit
        return hit

    def _chain(self, mask: int) -> bool:
        heads, bodies = self._heads, self._bodies
        pending = self.members(mask)
        model = 0
        changed = True
        while changed:
            changed = False
            rest = []
            for i in pending:
                if bodies[i] & ~model:
                    rest.append(i)
                else:
                    model |= heads[i]
                    changed = True
            pending = rest
        return not (model & (model >> 1) & self._neg_bits)

    # -- minimal inconsistent subsets -------------------------------------------

    @property
    def mis(self) -> tuple[int, ...]:
        if self._mis is None:
            found: list[int] = []
            bits = [1 << i for i in range(self.n)]
            for k in range(1, self.n + 1):
                for combo in combinations(bits, k):
                    mask = sum(combo)
                    if any(m & mask == m for m in found):
                        continue
                    if not self._chain(mask):
                        found.append(mask)
            self._mis = tuple(found)
            self._pure = tuple(is_pure_fact_set(self.rules_of(m)) for m in found)
        return self._mis

    @property
    def mis_without_facts(self) -> tuple[int, ...]:
        mis = self.mis
        return tuple(m for m, p in zip(mis, self._pure) if not p)

    def mis_within(self, mask: int) -> list[int]:
        return [m for m in self.mis if m & mask == m]

    def mis_without_facts_within(self, mask: int) -> list[int]:
        return [m for m, p in zip(self.mis, self._pure) if not p and m & mask == m]

    def involved(self, mask: int) -> int:
        """Union of the MIs contained in ``mask``; its complement is Free."""
        u = 0
        for m in self.mis_within(mask):
            u |= m
        return u

    def free(self, mask: int) -> int:
        return mask & ~self.involved(mask)


@lru_cache(maxsize=4096)
def universe(base: RuleBase) -> Universe:
    """Shared :class:`Universe` for ``base``; callers enforce the size limit."""
    return Universe(base, limit=len(base))


def checked_universe(b: RuleBase) -> Universe:
    check_subsets(len(b))
    return universe(b)


def _as_family(u: Universe, masks: Iterable[int]) -> frozenset[frozenset[Rule]]:
    return frozenset(u.rules_of(m) for m in masks)


def enumerate_mi(b: RuleBase, limit: int | None = None) -> frozenset[frozenset[Rule]]:
    u = Universe(b, limit) if limit is not None else checked_universe(b)
    return _as_family(u, u.mis)


def enumerate_mi_without_facts(b: RuleBase, limit: int | None = None) -> frozenset[frozenset[Rule]]:
    u = Universe(b, limit) if limit is not None else checked_universe(b)
    return _as_family(u, u.mis_without_facts)


def ordered_mis(b: RuleBase, without_facts: bool = False, limit: int | None = None) -> list[RuleBase]:
    """MI members as rule bases, ordered by size then canonical membership."""
    u = Universe(b, limit) if limit is not None else checked_universe(b)
    masks = u.mis_without_facts if without_facts else u.mis
    return [u.sub_base(m) for m in masks]


def free_formulas(b: RuleBase, limit: int | None = None) -> frozenset[Rule]:
    u = Universe(b, limit) if limit is not None else checked_universe(b)
    return u.rules_of(u.free(u.full))

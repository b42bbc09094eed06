"""Executable rationality postulates and a seeded rule base generator.

A postulate check is evidence on one instance, never a proof.  Campaigns run
a check over many generated instances and report the first violation.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field, replace
from enum import Enum
from fractions import Fraction
from itertools import combinations
from math import comb
from typing import Iterable, Iterator

from .core import Atom, Literal, Rule, RuleBase, parse_rule, parse_rule_base
from .limits import check_subsets
from .measures import Measure, get_measure
from .mis import checked_universe
from .semantics import is_consistent
from .shapley import _Game, rule_involvement_bound

__all__ = [
    "Verdict",
    "PostulateCheck",
    "GeneratorConfig",
    "ShapeInfeasible",
    "UnknownPostulate",
    "PRNG_ALGORITHM",
    "POSTULATES",
    "SHAPLEY_PROPERTIES",
    "is_rule_consistent",
    "check_rc",
    "check_fe",
    "check_re",
    "check_co",
    "check_mo",
    "check_in",
    "check_shapley_properties",
    "generate_rule_base",
    "fresh_free_rule",
    "CampaignResult",
    "run_campaign",
    "search_counterexample",
]

PRNG_ALGORITHM = "python-random-mt19937"


class Verdict(str, Enum):
    HOLDS = "holds"
    VIOLATED = "violated"
    INAPPLICABLE = "inapplicable"


class ShapeInfeasible(ValueError):
    pass


class UnknownPostulate(KeyError):
    pass


@dataclass(frozen=True)
class PostulateCheck:
    postulate: str
    measure: str
    base: RuleBase
    verdict: Verdict
    extra: Literal | Rule | RuleBase | None = None
    witness: dict = field(default_factory=dict, compare=False)

    @property
    def holds(self) -> bool:
        return self.verdict is Verdict.HOLDS

    @property
    def violated(self) -> bool:
        return self.verdict is Verdict.VIOLATED

    def replay(self) -> PostulateCheck | list[PostulateCheck]:
        """Re-run the predicate on the recorded inputs."""
        if self.postulate in SHAPLEY_PROPERTIES:
            checks = check_shapley_properties(self.measure, self.base, self.extra)
            return next(c for c in checks if c.postulate == self.postulate)
        fn = _CHECKS[self.postulate]
        if self.extra is None:
            return fn(self.measure, self.base)
        return fn(self.measure, self.base, self.extra)


def _verdict(ok: bool) -> Verdict:
    return Verdict.HOLDS if ok else Verdict.VIOLATED


def _fmt(x) -> str:
    return str(x)


def is_rule_consistent(b: RuleBase) -> bool:
    """True iff ``R(b) | F'`` is consistent for every consistent ``F' <= F(b)``."""
    facts = sorted(b.facts)
    check_subsets(len(facts))
    rules = list(b.rules_only)
    for k in range(len(facts) + 1):
        for chosen in combinations(facts, k):
            if not is_consistent(chosen):
                continue
            if not is_consistent(rules + list(chosen)):
                return False
    return True


def check_rc(measure, b: RuleBase) -> PostulateCheck:
    m = get_measure(measure)
    value = m(b)
    rc = is_rule_consistent(b)
    return PostulateCheck(
        "RC", m.name, b, _verdict((value == 0) == rc),
        witness={"value": _fmt(value), "rule_consistent": rc},
    )


def check_fe(measure, b: RuleBase, alpha: Literal) -> PostulateCheck:
    m = get_measure(measure)
    if any(r.head == alpha for r in b.rules_only):
        return PostulateCheck("FE", m.name, b, Verdict.INAPPLICABLE, alpha)
    extended = b | Rule.fact(alpha.complement())
    before, after = m(b), m(extended)
    return PostulateCheck(
        "FE", m.name, b, _verdict(before == after), alpha,
        witness={"value": _fmt(before), "extended_value": _fmt(after), "added_fact": str(alpha.complement())},
    )


def check_re(measure, b: RuleBase, rule: Rule) -> PostulateCheck:
    m = get_measure(measure)
    if rule.is_fact or rule in b:
        return PostulateCheck("RE", m.name, b, Verdict.INAPPLICABLE, rule)
    with_rule = b | rule
    u = checked_universe(with_rule)
    if u.free(u.full) >> u.index[rule] & 1:
        return PostulateCheck("RE", m.name, b, Verdict.INAPPLICABLE, rule)
    with_head = b | Rule.fact(rule.head)
    v_rule, v_head = m(with_rule), m(with_head)
    return PostulateCheck(
        "RE", m.name, b, _verdict(v_rule > v_head), rule,
        witness={"with_rule": _fmt(v_rule), "with_head": _fmt(v_head)},
    )


def check_co(measure, b: RuleBase) -> PostulateCheck:
    m = get_measure(measure)
    value = m(b)
    consistent = is_consistent(b)
    return PostulateCheck(
        "CO", m.name, b, _verdict((value == 0) == consistent),
        witness={"value": _fmt(value), "consistent": consistent},
    )


def check_mo(measure, b: RuleBase, bigger: RuleBase) -> PostulateCheck:
    m = get_measure(measure)
    if not b <= bigger:
        return PostulateCheck("MO", m.name, b, Verdict.INAPPLICABLE, bigger)
    small, large = m(b), m(bigger)
    return PostulateCheck(
        "MO", m.name, b, _verdict(small <= large), bigger,
        witness={"value": _fmt(small), "superset_value": _fmt(large)},
    )


def check_in(measure, b: RuleBase, alpha: Rule) -> PostulateCheck:
    m = get_measure(measure)
    u = checked_universe(b)
    if alpha not in b or not u.free(u.full) >> u.index[alpha] & 1:
        return PostulateCheck("IN", m.name, b, Verdict.INAPPLICABLE, alpha)
    with_alpha, without = m(b), m(b - alpha)
    return PostulateCheck(
        "IN", m.name, b, _verdict(with_alpha == without), alpha,
        witness={"value": _fmt(with_alpha), "without_value": _fmt(without)},
    )


_CHECKS = {"RC": check_rc, "FE": check_fe, "RE": check_re, "CO": check_co, "MO": check_mo, "IN": check_in}
POSTULATES = tuple(_CHECKS)

SHAPLEY_PROPERTIES = (
    "Distribution",
    "Minimality",
    "Fact-Minimality",
    "Rule-Involvement",
    "Rule Consistency'",
    "Free formula independence'",
    "Upper Bound",
)


def fresh_free_rule(b: RuleBase) -> Rule:
    """A rule concluding a fresh atom; it cannot take part in any conflict."""
    names = {a.name for a in b.signature}
    i = 0
    while f"fresh{i}" in names:
        i += 1
    head = Literal(Atom(f"fresh{i}"))
    lits = sorted(Literal(a, p) for a in b.signature for p in (True, False))
    return Rule(frozenset(lits[:1]), head)


def check_shapley_properties(measure, b: RuleBase, free_formula: Rule | None = None) -> list[PostulateCheck]:
    """One verdict per Shapley value property, in :data:`SHAPLEY_PROPERTIES` order."""
    m = get_measure(measure)
    g = _Game(m, b)
    u = g.u
    total = g.value(u.full)
    classical, adjusted = g.sweep()
    elems = u.elements
    free = u.free(u.full)
    out: list[PostulateCheck] = []

    def add(name, verdict, extra=None, **witness):
        out.append(PostulateCheck(name, m.name, b, verdict, extra, {k: _fmt(v) for k, v in witness.items()}))

    s_classical, s_adjusted = sum(classical, Fraction(0)), sum(adjusted, Fraction(0))
    add("Distribution", _verdict(s_classical == total and s_adjusted == total),
        value=total, classical_sum=s_classical, adjusted_sum=s_adjusted)

    bad, checked = [], 0
    free_members = u.members(free)
    for i in free_members:
        if g.value(u.full & ~(1 << i)) != total:
            continue  # IN fails for this formula, property not applicable
        checked += 1
        if classical[i] or adjusted[i]:
            bad.append(str(elems[i]))
    # no free formulas at all makes the property hold vacuously
    applicable = checked or not free_members
    add("Minimality", _verdict(not bad) if applicable else Verdict.INAPPLICABLE, offenders=bad)

    bad = [str(elems[i]) for i in u.members(u.fact_mask) if adjusted[i]]
    add("Fact-Minimality", _verdict(not bad), offenders=bad)

    nonfree_rules = u.members(u.rule_mask & ~free)
    if not check_rc(m, b).holds:
        add("Rule-Involvement", Verdict.INAPPLICABLE)
    else:
        bad = []
        for i in nonfree_rules:
            bound = rule_involvement_bound(b, elems[i])
            if not (adjusted[i] > 0 and adjusted[i] >= bound):
                bad.append(f"{elems[i]}: {adjusted[i]} < {bound}")
        add("Rule-Involvement", _verdict(not bad), offenders=bad)

    top = max(adjusted, default=Fraction(0))
    rc = is_rule_consistent(b)
    add("Rule Consistency'", _verdict((top == 0) == rc), max_adjusted=top, rule_consistent=rc)

    alpha = free_formula if free_formula is not None else fresh_free_rule(b)
    extended = b | alpha
    ge = _Game(m, extended)
    alpha_free = alpha not in b and ge.u.free(ge.u.full) >> ge.u.index[alpha] & 1
    if not alpha_free or ge.value(ge.u.full) != total:
        add("Free formula independence'", Verdict.INAPPLICABLE, alpha)
    else:
        top_ext = max(ge.sweep()[1], default=Fraction(0))
        add("Free formula independence'", _verdict(top_ext == top), alpha,
            max_adjusted=top, extended_max_adjusted=top_ext)

    add("Upper Bound", _verdict(top <= total), max_adjusted=top, value=total)
    return out


# ---------------------------------------------------------------------------
# generator


@dataclass(frozen=True)
class GeneratorConfig:
    seed: int = 0
    atom_count: int = 4
    fact_count: int = 3
    rule_count: int = 4
    max_body_size: int = 2
    negation_probability: Fraction = Fraction(1, 2)

    def __post_init__(self):
        if not 0 <= self.seed < 2**64:
            raise ValueError("seed must be a 64-bit unsigned integer")
        p = Fraction(self.negation_probability)
        if not 0 <= p <= 1:
            raise ValueError("negation_probability must lie in [0, 1]")
        object.__setattr__(self, "negation_probability", p)

    def with_seed(self, seed: int) -> GeneratorConfig:
        return replace(self, seed=seed % 2**64)


def _atom_name(i: int) -> str:
    letters = "abcdefghijklmnopqrstuvwxyz"
    return letters[i] if i < 26 else f"a{i}"


def generate_rule_base(config: GeneratorConfig) -> RuleBase:
    if config.fact_count + config.rule_count < 1 or config.atom_count < 1:
        raise ShapeInfeasible("need at least one atom and one element")
    if config.fact_count < 0 or config.rule_count < 0 or config.max_body_size < (1 if config.rule_count else 0):
        raise ShapeInfeasible("negative counts or empty rule bodies requested")
    nlits = 2 * config.atom_count
    body_max = min(config.max_body_size, nlits)
    rule_space = nlits * sum(comb(nlits, k) for k in range(1, body_max + 1))
    if config.fact_count > nlits or config.rule_count > rule_space:
        raise ShapeInfeasible(
            f"cannot draw {config.fact_count} distinct facts and {config.rule_count} distinct rules "
            f"over {config.atom_count} atoms"
        )

    rng = random.Random(config.seed)
    atoms = [Atom(_atom_name(i)) for i in range(config.atom_count)]
    p = config.negation_probability

    def literal() -> Literal:
        atom = atoms[rng.randrange(len(atoms))]
        negated = rng.randrange(p.denominator) < p.numerator
        return Literal(atom, not negated)

    def draw(count: int, make) -> set[Rule]:
        out: set[Rule] = set()
        tries = 0
        while len(out) < count:
            tries += 1
            if tries > 1000 * (count + 1):
                raise ShapeInfeasible("retry cap reached while drawing distinct elements")
            out.add(make())
        return out

    def make_rule() -> Rule:
        size = rng.randint(1, body_max)
        body: set[Literal] = set()
        while len(body) < size:
            body.add(literal())
        return Rule(frozenset(body), literal())

    facts = draw(config.fact_count, lambda: Rule.fact(literal()))
    rules = draw(config.rule_count, make_rule)
    return RuleBase(facts | rules)


# ---------------------------------------------------------------------------
# campaigns


def _b(text: str) -> RuleBase:
    return parse_rule_base(text)


# regression instances checked before any generated one
FIXTURES: dict[str, list[tuple]] = {
    "RC": [(_b("a. !a."),), (_b("a. a -> b. a -> !b."),), (_b("a. a -> b. a -> !b. c. !c."),), (_b("a. a -> b. !b."),)],
    "CO": [(_b("a. !a."),), (_b("a. a -> b. a -> !b."),), (_b("a. a -> b. !b."),)],
    "FE": [(_b("a. a -> b. a -> !b. c."), Literal(Atom("c")))],
    "RE": [
        (_b("a. b. a -> !a."), parse_rule("b -> !b")),
        (_b("a. !c. b -> c."), parse_rule("a -> b")),
    ],
    "MO": [(_b("a. a -> b. a -> !b."), _b("a. a -> b. a -> !b. c. !c."))],
    "IN": [],
}


def _candidates(postulate: str, b: RuleBase) -> Iterator[tuple]:
    if postulate in ("RC", "CO"):
        yield (b,)
    elif postulate == "FE":
        lits = sorted(Literal(a, p) for a in b.signature for p in (False, True))
        lits.append(fresh_free_rule(b).head)
        for alpha in lits:
            yield (b, alpha)
    elif postulate == "RE":
        for r in b.elements:
            if not r.is_fact:
                yield (b - r, r)
    elif postulate == "MO":
        for e in b.elements:
            yield (b - e, b)
    elif postulate == "IN":
        u = checked_universe(b)
        for i in u.members(u.free(u.full)):
            yield (b, u.elements[i])
    else:
        raise UnknownPostulate(postulate)


@dataclass
class CampaignResult:
    measure: str
    postulate: str
    budget: int
    seed: int
    prng: str = PRNG_ALGORITHM
    holds: int = 0
    violated: int = 0
    inapplicable: int = 0
    first_witness: PostulateCheck | None = None
    first_witness_seed: int | None = None  # None for a fixed regression instance

    @property
    def instances(self) -> int:
        return self.holds + self.violated + self.inapplicable


def _instance_verdict(check, measure: Measure, postulate: str, inputs: Iterable[tuple]):
    seen_holds = False
    for args in inputs:
        c = check(measure, *args)
        if c.violated:
            return c
        seen_holds = seen_holds or c.holds
    return Verdict.HOLDS if seen_holds else Verdict.INAPPLICABLE


def run_campaign(
    measure,
    postulate: str,
    budget: int = 1000,
    config: GeneratorConfig | None = None,
    fixtures: bool = True,
    stop_at_first: bool = False,
) -> CampaignResult:
    """Check ``postulate`` on the regression fixtures and ``budget`` generated bases.

    Instance ``i`` is generated with seed ``config.seed + i``.  An instance
    counts as violated if any candidate extension violates the postulate.
    """
    if postulate not in _CHECKS:
        raise UnknownPostulate(postulate)
    if budget < 1:
        raise ValueError("budget must be at least 1")
    m = get_measure(measure)
    config = config or GeneratorConfig()
    check = _CHECKS[postulate]
    result = CampaignResult(m.name, postulate, budget, config.seed)

    def record(outcome, seed):
        if isinstance(outcome, PostulateCheck):
            result.violated += 1
            if result.first_witness is None:
                result.first_witness = outcome
                result.first_witness_seed = seed
        elif outcome is Verdict.HOLDS:
            result.holds += 1
        else:
            result.inapplicable += 1

    if fixtures:
        for args in FIXTURES[postulate]:
            record(_instance_verdict(check, m, postulate, [args]), None)
            if stop_at_first and result.first_witness:
                return result
    for i in range(budget):
        cfg = config.with_seed(config.seed + i)
        b = generate_rule_base(cfg)
        record(_instance_verdict(check, m, postulate, _candidates(postulate, b)), cfg.seed)
        if stop_at_first and result.first_witness:
            return result
    return result


def search_counterexample(
    measure, postulate: str, budget: int = 1000, config: GeneratorConfig | None = None, fixtures: bool = True
) -> PostulateCheck | None:
    return run_campaign(measure, postulate, budget, config, fixtures, stop_at_first=True).first_witness

"""Inconsistency measurement and localization for rule bases of facts and rules."""

from .core import Atom, Literal, ParseError, Rule, RuleBase, format_rule_base, parse_literal, parse_rule, parse_rule_base
from .limits import DEFAULT_ATOM_LIMIT, DEFAULT_SUBSET_LIMIT, SizeLimitExceeded, limits
from .measures import CLASSICAL, MEASURES, RULE_BASED, Measure, UnknownMeasure, contension, get_measure, measure_report
from .mis import enumerate_mi, enumerate_mi_without_facts, free_formulas, is_pure_fact_set
from .postulates import (
    POSTULATES,
    GeneratorConfig,
    PostulateCheck,
    ShapeInfeasible,
    UnknownPostulate,
    Verdict,
    check_shapley_properties,
    generate_rule_base,
    run_campaign,
    search_counterexample,
)
from .semantics import ThreeValuedInterpretation, TruthValue, is_consistent, minimal_model, satisfies3
from .shapley import (
    ElementNotInBase,
    NotARule,
    adjusted_shapley_value,
    adjusted_shapley_vector,
    culpability_ranking,
    max_adjusted,
    shapley_value,
    shapley_vector,
)

__version__ = "0.1.0"

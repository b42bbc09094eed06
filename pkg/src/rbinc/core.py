"""Rule base data model and the textual rule DSL.

A rule base is a finite set of rules ``l1, ..., lm -> l0`` over literals.
Rules with an empty body are facts.  The concrete syntax is::

    # comment
    platinumCustomer.
    mentalCondition.
    platinumCustomer -> creditWorthy.
    mentalCondition -> !creditWorthy.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Iterable, Iterator

__all__ = [
    "Atom",
    "Literal",
    "Rule",
    "RuleBase",
    "ParseError",
    "parse_rule_base",
    "parse_rule",
    "parse_literal",
    "format_rule_base",
    "facts",
    "rules_only",
]

IDENTIFIER = re.compile(r"[A-Za-z_][A-Za-z0-9_]*")


class ParseError(ValueError):
    """Raised on any violation of the rule DSL grammar."""

    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"line {line}, column {column}: {message}")
        self.message = message
        self.line = line
        self.column = column


@dataclass(frozen=True, order=True)
class Atom:
    name: str

    def __post_init__(self):
        if not isinstance(self.name, str) or not IDENTIFIER.fullmatch(self.name):
            raise ValueError(f"invalid atom name: {self.name!r}")

    def __str__(self) -> str:
        return self.name


@dataclass(frozen=True)
class Literal:
    atom: Atom
    positive: bool = True

    def complement(self) -> Literal:
        return Literal(self.atom, not self.positive)

    @property
    def sort_key(self) -> tuple[str, bool]:
        # negative before positive for the same atom: "!a" < "a"
        return (self.atom.name, self.positive)

    def __lt__(self, other: Literal) -> bool:
        return self.sort_key < other.sort_key

    def __str__(self) -> str:
        return self.atom.name if self.positive else "!" + self.atom.name


@dataclass(frozen=True)
class Rule:
    body: frozenset[Literal]
    head: Literal

    def __post_init__(self):
        if not isinstance(self.body, frozenset):
            object.__setattr__(self, "body", frozenset(self.body))

    @classmethod
    def fact(cls, head: Literal) -> Rule:
        return cls(frozenset(), head)

    @property
    def is_fact(self) -> bool:
        return not self.body

    @property
    def atoms(self) -> frozenset[Atom]:
        return frozenset(l.atom for l in self.body) | {self.head.atom}

    @property
    def sort_key(self) -> tuple:
        return (self.head.sort_key, tuple(l.sort_key for l in sorted(self.body)))

    def __lt__(self, other: Rule) -> bool:
        return (not self.is_fact, self.sort_key) < (not other.is_fact, other.sort_key)

    def __str__(self) -> str:
        if self.is_fact:
            return str(self.head)
        body = ", ".join(str(l) for l in sorted(self.body))
        return f"{body} -> {self.head}"


@dataclass(frozen=True)
class RuleBase:
    """An immutable set of rules.

    Iteration and :attr:`elements` follow the canonical order: facts first,
    then rules, each sorted by head and then body.
    """

    rules: frozenset[Rule] = field(default_factory=frozenset)

    def __init__(self, rules: Iterable[Rule] = ()):
        object.__setattr__(self, "rules", frozenset(rules))

    @property
    def elements(self) -> tuple[Rule, ...]:
        try:
            return self.__dict__["_elements"]
        except KeyError:
            elems = tuple(sorted(self.rules))
            object.__setattr__(self, "_elements", elems)
            return elems

    @property
    def signature(self) -> frozenset[Atom]:
        atoms: set[Atom] = set()
        for r in self.rules:
            atoms |= r.atoms
        return frozenset(atoms)

    @property
    def facts(self) -> frozenset[Rule]:
        return frozenset(r for r in self.rules if r.is_fact)

    @property
    def rules_only(self) -> frozenset[Rule]:
        return frozenset(r for r in self.rules if not r.is_fact)

    def __iter__(self) -> Iterator[Rule]:
        return iter(self.elements)

    def __len__(self) -> int:
        return len(self.rules)

    def __contains__(self, item: object) -> bool:
        return item in self.rules

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, RuleBase):
            return NotImplemented
        return self.rules == other.rules

    def __hash__(self) -> int:
        return hash(self.rules)

    def __le__(self, other: RuleBase) -> bool:
        return self.rules <= other.rules

    def __or__(self, other: RuleBase | Rule | Iterable[Rule]) -> RuleBase:
        if isinstance(other, Rule):
            return RuleBase(self.rules | {other})
        return RuleBase(self.rules | frozenset(other))

    def __sub__(self, other: RuleBase | Rule | Iterable[Rule]) -> RuleBase:
        if isinstance(other, Rule):
            return RuleBase(self.rules - {other})
        return RuleBase(self.rules - frozenset(other))

    def __repr__(self) -> str:
        return "RuleBase({" + "; ".join(str(r) for r in self.elements) + "})"

    def __str__(self) -> str:
        return format_rule_base(self)


def facts(b: RuleBase) -> frozenset[Rule]:
    return b.facts


def rules_only(b: RuleBase) -> frozenset[Rule]:
    return b.rules_only


def format_rule_base(b: RuleBase) -> str:
    return "".join(f"{r}.\n" for r in b.elements)


# ---------------------------------------------------------------------------
# parser

_TOKEN = re.compile(
    r"(?P<ws>[ \t\r\n]+)|(?P<comment>#[^\n]*)|(?P<arrow>->)"
    r"|(?P<ident>[A-Za-z_][A-Za-z0-9_]*)|(?P<punct>[!,.])"
)

_DESCRIBE = {"ident": "identifier", "!": "'!'", ",": "','", ".": "'.'", "->": "'->'", "eof": "end of input"}


@dataclass
class _Token:
    kind: str  # "ident", "!", ",", ".", "->", "eof"
    text: str
    line: int
    column: int


def _tokenize(text: str) -> list[_Token]:
    tokens: list[_Token] = []
    pos, line, line_start = 0, 1, 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        col = pos - line_start + 1
        if m is None:
            raise ParseError(f"unexpected character {text[pos]!r}", line, col)
        kind = m.lastgroup
        chunk = m.group()
        if kind == "ident":
            tokens.append(_Token("ident", chunk, line, col))
        elif kind in ("arrow", "punct"):
            tokens.append(_Token(chunk, chunk, line, col))
        newlines = chunk.count("\n")
        if newlines:
            line += newlines
            line_start = pos + chunk.rfind("\n") + 1
        pos = m.end()
    tokens.append(_Token("eof", "", line, pos - line_start + 1))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self) -> _Token:
        return self.tokens[self.i]

    def expect(self, *kinds: str) -> _Token:
        tok = self.peek()
        if tok.kind not in kinds:
            wanted = " or ".join(_DESCRIBE[k] for k in kinds)
            found = _DESCRIBE["eof"] if tok.kind == "eof" else repr(tok.text)
            raise ParseError(f"expected {wanted}, found {found}", tok.line, tok.column)
        self.i += 1
        return tok

    def literal(self) -> Literal:
        positive = True
        if self.peek().kind == "!":
            self.i += 1
            positive = False
        name = self.expect("ident").text
        return Literal(Atom(name), positive)

    def statement(self, terminated: bool = True) -> Rule:
        lits = [self.literal()]
        while self.peek().kind == ",":
            self.i += 1
            lits.append(self.literal())
        if len(lits) == 1 and self.peek().kind != "->":
            if terminated:
                self.expect(".", "->", ",")
            return Rule.fact(lits[0])
        self.expect("->")
        head = self.literal()
        if terminated:
            self.expect(".")
        return Rule(frozenset(lits), head)

    def rule_base(self) -> RuleBase:
        rules = []
        while self.peek().kind != "eof":
            rules.append(self.statement())
        return RuleBase(rules)


def parse_rule_base(text: str) -> RuleBase:
    """Parse DSL text into a rule base; duplicate statements collapse."""
    return _Parser(text).rule_base()


def parse_rule(text: str) -> Rule:
    """Parse a single statement; the trailing ``.`` is optional."""
    p = _Parser(text)
    r = p.statement(terminated=False)
    if p.peek().kind == ".":
        p.i += 1
    p.expect("eof")
    return r


def parse_literal(text: str) -> Literal:
    p = _Parser(text)
    lit = p.literal()
    p.expect("eof")
    return lit

import pytest

from rbinc import parse_rule_base

B1 = """
platinumCustomer.
mentalCondition.
platinumCustomer -> creditWorthy.
mentalCondition -> !creditWorthy.
"""
B1_PRIME = """
customer.
mentalCondition.
platinumCustomer.
customer -> contractuallyCapable.
mentalCondition -> !contractuallyCapable.
mentalCondition -> !platinumCustomer.
"""
B2 = "a. !a."
B3 = "a. a -> b. a -> !b."
B4 = "a. a -> b. a -> !b. c. !c."
B5 = "a. a -> b. !b."
B6 = "a. a -> b. a -> c. d."
B7 = "a. a -> b. a -> !b. !a."

BASES = {
    "B1": B1,
    "B1'": B1_PRIME,
    "B2": B2,
    "B3": B3,
    "B4": B4,
    "B5": B5,
    "B6": B6,
    "B7": B7,
}


@pytest.fixture
def bases():
    return {k: parse_rule_base(v) for k, v in BASES.items()}


def pytest_terminal_summary(terminalreporter):
    import sys

    mod = sys.modules.get("test_acceptance")
    if not mod or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in mod.summary_lines():
        terminalreporter.write_line(line)

"""Guard limits for the exponential-cost enumerations."""

from __future__ import annotations

from contextlib import contextmanager
from contextvars import ContextVar

DEFAULT_SUBSET_LIMIT = 22
DEFAULT_ATOM_LIMIT = 14

_subset_limit: ContextVar[int] = ContextVar("subset_limit", default=DEFAULT_SUBSET_LIMIT)
_atom_limit: ContextVar[int] = ContextVar("atom_limit", default=DEFAULT_ATOM_LIMIT)


class SizeLimitExceeded(RuntimeError):
    """Input is beyond the configured desk-scale enumeration bound."""

    def __init__(self, what: str, size: int, limit: int):
        super().__init__(f"{what} of size {size} exceeds limit {limit}")
        self.what = what
        self.size = size
        self.limit = limit


def subset_limit() -> int:
    return _subset_limit.get()


def atom_limit() -> int:
    return _atom_limit.get()


@contextmanager
def limits(subsets: int | None = None, atoms: int | None = None):
    """Temporarily override the limits for the current context."""
    tokens = []
    if subsets is not None:
        tokens.append((_subset_limit, _subset_limit.set(subsets)))
    if atoms is not None:
        tokens.append((_atom_limit, _atom_limit.set(atoms)))
    try:
        yield
    finally:
        for var, tok in reversed(tokens):
            var.reset(tok)


def check_subsets(n: int, limit: int | None = None) -> None:
    limit = subset_limit() if limit is None else limit
    if n > limit:
        raise SizeLimitExceeded("rule base", n, limit)


def check_atoms(n: int, limit: int | None = None) -> None:
    limit = atom_limit() if limit is None else limit
    if n > limit:
        raise SizeLimitExceeded("signature", n, limit)

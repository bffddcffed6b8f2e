"""Enumeration guards shared by every module.

Exceeding a guard raises :class:`GuardExceeded`; nothing is ever truncated
silently.  The CLI overrides the defaults through :func:`use_guards`.
"""
from __future__ import annotations

import contextlib
import dataclasses
from dataclasses import dataclass


class GuardExceeded(ValueError):
    """An enumeration would exceed a configured size limit."""


@dataclass(frozen=True)
class Guards:
    degree: int = 12           # max d for full enumeration of set partitions
    subsets: int = 20          # max |E| for edge-subset enumeration
    words: int = 10**6         # max n_vars**degree for the word oracle
    colorings: int = 10**7     # max n**d for brute-force coloring counts
    orientations: int = 20     # max non-loop edges for orientation enumeration
    isomorphism: int = 8       # max d for permutation-search isomorphism / trees


GUARDS = Guards()


def guards() -> Guards:
    return GUARDS


@contextlib.contextmanager
def use_guards(**overrides):
    """Temporarily replace guard values, e.g. ``with use_guards(degree=6): ...``."""
    global GUARDS
    old = GUARDS
    GUARDS = dataclasses.replace(old, **overrides)
    try:
        yield GUARDS
    finally:
        GUARDS = old


def set_guards(**overrides) -> Guards:
    global GUARDS
    GUARDS = dataclasses.replace(GUARDS, **overrides)
    return GUARDS


def check(value: int, limit: int, what: str) -> None:
    if value > limit:
        raise GuardExceeded(f"{what} = {value} exceeds the limit {limit}")

"""Python bindings for propkit.

Models are passed as text in the model language; results come back as
plain dicts and lists.
"""

from ._propkit import (
    Error,
    ParseError,
    check,
    example_names,
    gen,
    normalize,
    propagate,
    rule_names,
    solve,
    split_rule_names,
    suite,
)

__all__ = [
    "Error",
    "ParseError",
    "check",
    "example_names",
    "gen",
    "normalize",
    "propagate",
    "rule_names",
    "solve",
    "split_rule_names",
    "suite",
]

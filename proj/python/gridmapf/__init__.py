"""Grid MAPF: two-direction solver, exhaustive oracles and the monotone planar 3-SAT reduction."""

from ._core import *  # noqa: F401,F403
from ._core import __doc__  # noqa: F401


def compile_text(text):
    """Parse a formula file's contents and compile it."""
    return compile(parse_formula(text))  # noqa: F405

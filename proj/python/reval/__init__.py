"""Synonym-aware evaluation of hashtag recommendations.

Thin wrapper around the compiled ``_reval`` extension.
"""

from ._reval import *  # noqa: F401,F403
from ._reval import (  # noqa: F401
    DegenerateError,
    DomainError,
    InputError,
    IntegrityError,
    __doc__,
)

__version__ = "0.1.0"

"""Shared numeric policy knobs.

The divergence heuristic is configured here once and used by both the function
classifier (pair ratios) and the preservation search (image triplet constants),
so the two modules cannot drift apart.
"""

from __future__ import annotations

import os
from dataclasses import dataclass

from .errors import PreconditionViolated

#: Relative tolerance used by float-side comparisons (monotonicity, defects,
#: region bounds). Exact rational paths never use it.
REL_TOL = 1e-9

THREADS_ENV_VAR = "GMETRIX_THREADS"


@dataclass(frozen=True)
class DivergenceConfig:
    """When a running sup of ratios counts as divergence.

    Fires only if the sup exceeds ``absolute_threshold`` and grew by at least
    ``octave_growth`` between the top scale octave and everything below it.
    Large-but-bounded functions plateau across octaves and never fire.
    """

    absolute_threshold: float = 1e6
    octave_growth: float = 10.0


DEFAULT_DIVERGENCE = DivergenceConfig()


def worker_cap() -> int:
    """Upper bound on worker-pool size, from ``GMETRIX_THREADS`` (default 1).

    Present computations run single-threaded; the cap is validated and honored
    as a ceiling so the setting is meaningful and checkable either way.
    """
    raw = os.environ.get(THREADS_ENV_VAR)
    if raw is None:
        return 1
    try:
        value = int(raw)
    except ValueError:
        raise PreconditionViolated(
            f"{THREADS_ENV_VAR} must be an integer >= 1, got {raw!r}") from None
    if value < 1:
        raise PreconditionViolated(
            f"{THREADS_ENV_VAR} must be an integer >= 1, got {raw!r}")
    return value

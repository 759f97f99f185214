"""Triangle triplets, their relaxed variants, planar realization, samplers.

A triplet (a, b, c) is three candidate side lengths. The relaxed membership
predicates mirror the axiom checks entrywise: plain triangle conditions, one
scalar bound s, or one bound per component.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational
from typing import Iterator, Union

from .errors import (
    InvalidS,
    InvalidTheta,
    NonPositiveEntry,
    NotATriplet,
    PreconditionViolated,
)

Length = Union[int, float, Fraction]


@dataclass(frozen=True)
class Triplet:
    a: Length
    b: Length
    c: Length

    def __post_init__(self) -> None:
        for name in ("a", "b", "c"):
            value = getattr(self, name)
            if isinstance(value, float) and not math.isfinite(value):
                raise PreconditionViolated(f"{name} = {value!r} is not finite")
            if value < 0:
                raise PreconditionViolated(f"{name} = {value!r} is negative")

    @property
    def mode(self) -> str:
        """"exact" when all entries are rationals, "float" otherwise."""
        exact = all(isinstance(v, Rational)
                    for v in (self.a, self.b, self.c))
        return "exact" if exact else "float"

    def as_tuple(self) -> tuple[Length, Length, Length]:
        return (self.a, self.b, self.c)


def is_triangle_triplet(t: Triplet) -> bool:
    """Each entry at most the sum of the other two."""
    a, b, c = t.as_tuple()
    return a <= b + c and b <= a + c and c <= a + b


def is_s_triplet(t: Triplet, s: Length) -> bool:
    """Each entry at most s times the sum of the other two."""
    if s < 1:
        raise InvalidS(f"s = {s!r} is below 1")
    a, b, c = t.as_tuple()
    return a <= s * (b + c) and b <= s * (a + c) and c <= s * (a + b)


def is_theta_triplet(t: Triplet, bound_a: Length, bound_b: Length,
                     bound_c: Length) -> bool:
    """Entrywise bounds: each entry gets its own relaxation factor."""
    for bound in (bound_a, bound_b, bound_c):
        if bound < 1:
            raise InvalidTheta(f"bound {bound!r} is below 1")
    a, b, c = t.as_tuple()
    return (a <= bound_a * (b + c)
            and b <= bound_b * (a + c)
            and c <= bound_c * (a + b))


def _ratio(num: Length, den: Length):
    if den == 0:
        return math.inf if num > 0 else 0
    return num / den


def triplet_constant(t: Triplet):
    """Smallest s >= 1 making (a, b, c) an s-triplet; +inf if none exists.

    Exact-mode triplets give an exact rational (so the minimality property
    `not is_s_triplet(t, s - eps)` is testable); float-mode gives a float.
    """
    exact = t.mode == "exact"
    a, b, c = ((Fraction(v) for v in t.as_tuple()) if exact
               else (float(v) for v in t.as_tuple()))
    ratios = (_ratio(a, b + c), _ratio(b, a + c), _ratio(c, a + b))
    if any(r == math.inf for r in ratios):
        return math.inf
    floor = Fraction(1) if exact else 1.0
    return max(floor, *ratios)


@dataclass(frozen=True)
class PlanarPoint:
    x: float
    y: float

    def distance_to(self, other: "PlanarPoint") -> float:
        return math.hypot(self.x - other.x, self.y - other.y)

    def as_tuple(self) -> tuple[float, float]:
        return (self.x, self.y)


def realize_in_plane(t: Triplet) -> tuple[PlanarPoint, PlanarPoint, PlanarPoint]:
    """Three plane points realizing the side lengths (a, b, c).

    Places u at the origin, v at (a, 0), and w in the closed upper half plane
    with |u - w| = b and |v - w| = c. Requires strictly positive entries that
    satisfy the triangle conditions; degenerate (collinear) triplets land on
    the x-axis.
    """
    a, b, c = (float(v) for v in t.as_tuple())
    if min(a, b, c) <= 0:
        raise NonPositiveEntry(f"side lengths must be positive, got {t.as_tuple()}")
    if not is_triangle_triplet(Triplet(a, b, c)):
        raise NotATriplet(f"{(a, b, c)} violates the triangle conditions")
    wx = (a * a + b * b - c * c) / (2 * a)
    wy_sq = b * b - wx * wx
    wy = math.sqrt(wy_sq) if wy_sq > 0 else 0.0  # clamp float fuzz at collinear
    return (PlanarPoint(0.0, 0.0), PlanarPoint(a, 0.0), PlanarPoint(wx, wy))


# --- samplers -------------------------------------------------------------------

@dataclass(frozen=True)
class GridStrategy:
    """All triplets over {step, 2*step, ..., max} passing the triangle check."""

    step: Length
    max: Length

    def __post_init__(self) -> None:
        if self.step <= 0 or self.max < self.step:
            raise PreconditionViolated("need 0 < step <= max")


@dataclass(frozen=True)
class RandomStrategy:
    """Seeded random triplets with entries in (0, scale]."""

    seed: int
    count: int
    scale: float = 10.0

    def __post_init__(self) -> None:
        if self.count < 0 or self.scale <= 0:
            raise PreconditionViolated("need count >= 0 and scale > 0")


@dataclass(frozen=True)
class BoundaryStrategy:
    """Seeded degenerate triplets with a = b + c exactly (as floats)."""

    seed: int
    count: int
    scale: float = 10.0

    def __post_init__(self) -> None:
        if self.count < 0 or self.scale <= 0:
            raise PreconditionViolated("need count >= 0 and scale > 0")


Strategy = Union[GridStrategy, RandomStrategy, BoundaryStrategy]


def _grid_triplets(strategy: GridStrategy) -> Iterator[Triplet]:
    step, top = strategy.step, strategy.max
    count = int(top / step)  # exact for the int/Fraction case
    if isinstance(step, float) or isinstance(top, float):
        count = int(float(top) / float(step) + 1e-9)
    values = [step * k for k in range(1, count + 1)]
    for a in values:
        for b in values:
            for c in values:
                t = Triplet(a, b, c)
                if is_triangle_triplet(t):
                    yield t


def _random_triplets(strategy: RandomStrategy) -> Iterator[Triplet]:
    rng = random.Random(f"triplet-random|{strategy.seed}")
    produced = 0
    while produced < strategy.count:
        b = rng.uniform(0.0, strategy.scale)
        c = rng.uniform(0.0, strategy.scale)
        a = rng.uniform(abs(b - c), b + c)
        if min(a, b, c) <= 0.0:
            continue
        t = Triplet(a, b, c)
        if not is_triangle_triplet(t):  # reject 1-ulp overshoots
            continue
        produced += 1
        yield t


def _boundary_triplets(strategy: BoundaryStrategy) -> Iterator[Triplet]:
    rng = random.Random(f"triplet-boundary|{strategy.seed}")
    produced = 0
    while produced < strategy.count:
        b = rng.uniform(0.0, strategy.scale)
        c = rng.uniform(0.0, strategy.scale)
        if b <= 0.0 or c <= 0.0:
            continue
        produced += 1
        yield Triplet(b + c, b, c)


def sample_triplets(strategy: Strategy) -> Iterator[Triplet]:
    """Deterministic triplet stream; every emitted triplet passes the triangle
    check and has strictly positive entries (so it is always realizable)."""
    if isinstance(strategy, GridStrategy):
        return _grid_triplets(strategy)
    if isinstance(strategy, RandomStrategy):
        return _random_triplets(strategy)
    if isinstance(strategy, BoundaryStrategy):
        return _boundary_triplets(strategy)
    raise PreconditionViolated(f"unknown sampling strategy {strategy!r}")

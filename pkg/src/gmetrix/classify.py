"""Grid-based behavioral profile of a nonnegative function expression.

Verdicts on this float path are evidence-level: Holds means "no violation on
the sampled grid" (the note says so), while Fails is definitive because it
carries a concrete witness that re-evaluates to the same violation.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from typing import Iterator, Optional

from .config import DEFAULT_DIVERGENCE, REL_TOL, DivergenceConfig
from .dsl import RealFn, eval_fn
from .errors import PreconditionViolated
from .model import Verdict, Witness, encode_value, fails, holds, inconclusive


@dataclass(frozen=True)
class GridSpec:
    """Sampling plan: uniform grid on [0, x_max], a geometric tail toward 0,
    and seeded random fill-ins."""

    x_max: float = 20.0
    n_points: int = 2000
    seed: int = 1

    def __post_init__(self) -> None:
        if not (self.x_max > 0 and math.isfinite(self.x_max)):
            raise PreconditionViolated("x_max must be positive and finite")
        if self.n_points < 2:
            raise PreconditionViolated("n_points must be at least 2")

    def to_json(self):
        return {"x_max": self.x_max, "n_points": self.n_points,
                "seed": self.seed}


DEFAULT_GRID = GridSpec()

_GEO_FLOOR = 1e-9  # geometric tail stops here; below it float noise dominates


def sample_points(grid: GridSpec) -> list[float]:
    """Deterministic sorted sample set for a grid spec (includes 0.0)."""
    rng = random.Random(f"classify-points|{grid.seed}")
    pts = {0.0, grid.x_max}
    step = grid.x_max / (grid.n_points - 1)
    for i in range(grid.n_points):
        pts.add(i * step)
    k = 1
    while True:
        x = grid.x_max * 2.0 ** -k
        if x < _GEO_FLOOR:
            break
        pts.add(x)
        k += 1
    for _ in range(min(1000, grid.n_points)):
        pts.add(rng.uniform(0.0, grid.x_max))
    if grid.x_max >= 1.0:
        pts.add(1.0)
    return sorted(pts)


def sample_pairs(grid: GridSpec, points: list[float]
                 ) -> Iterator[tuple[float, float]]:
    """Pair schedule for the subadditivity scans: every diagonal pair (a, a)
    in ascending order, then n_points seeded random pairs. Sums reach
    2 * x_max, which is what lets the divergence heuristic see growth."""
    positive = [p for p in points if p > 0.0]
    for a in positive:
        yield (a, a)
    rng = random.Random(f"classify-pairs|{grid.seed}")
    for _ in range(grid.n_points):
        yield (rng.choice(positive), rng.choice(positive))


@dataclass(frozen=True)
class FnProfile:
    """Classification record for one function expression on one grid."""

    source: str
    grid: GridSpec
    amenable: Verdict
    increasing: Verdict
    subadditive: Verdict
    quasi_subadditive: Verdict
    limit_at_zero: Optional[float]
    plateau: Optional[tuple[float, float]]  # (value a, edge b), if verified

    @property
    def s_star_estimate(self) -> float:
        return float(self.quasi_subadditive.constants["s_star_estimate"])

    def to_json(self):
        return {
            "source": self.source,
            "grid": self.grid.to_json(),
            "amenable": self.amenable.to_json(),
            "increasing": self.increasing.to_json(),
            "subadditive": self.subadditive.to_json(),
            "quasi_subadditive": self.quasi_subadditive.to_json(),
            "limit_at_zero": self.limit_at_zero,
            "plateau": encode_value(self.plateau),
        }


def _geometric_tail(top: float, floor: float) -> list[float]:
    """top, top/2, top/4, ... down to floor (descending)."""
    out = []
    x = top
    while x >= floor:
        out.append(x)
        x /= 2.0
    return out


def verify_plateau(f: RealFn, b: float, *, rel_tol: float = REL_TOL
                   ) -> Optional[tuple[float, float]]:
    """(a, b) if f equals a = f(b) on all geometric samples in (0, b].

    The edge b always comes from the caller; it is never inferred from data.
    """
    if not (b > 0 and math.isfinite(b)):
        raise PreconditionViolated("plateau edge b must be positive and finite")
    a = eval_fn(f, b)
    for x in _geometric_tail(b, b * 2.0 ** -30):
        value = eval_fn(f, x)
        if abs(value - a) > rel_tol * max(1.0, abs(a)):
            return None
    if a <= 0.0:
        return None
    return (a, b)


def _amenability(f: RealFn, points: list[float], f_at) -> Verdict:
    if f_at(0.0) != 0.0:
        return fails(Witness(
            description=f"f(0) = {f_at(0.0)!r} but amenability needs f(0) = 0",
            lhs=f_at(0.0), rhs=0.0, data={"x": 0.0}))
    probes = []
    if 1.0 in points:
        probes.append(1.0)  # canonical first probe
    probes.extend(p for p in points if p > 0.0 and p != 1.0)
    for x in probes:
        if f_at(x) == 0.0:
            return fails(Witness(
                description=f"f({x!r}) = 0 although x > 0",
                lhs=0.0, rhs=0.0, data={"x": x}))
    return holds(note=f"grid-verified on {len(probes)} positive samples")


def _monotonicity(points: list[float], f_at) -> Verdict:
    previous_x = points[0]
    previous = f_at(previous_x)
    for x in points[1:]:
        value = f_at(x)
        if value < previous - REL_TOL * max(1.0, abs(previous)):
            return fails(Witness(
                description=(f"f({previous_x!r}) = {previous!r} > "
                             f"{value!r} = f({x!r}) with {previous_x!r} < {x!r}"),
                lhs=previous, rhs=value,
                data={"x_left": previous_x, "x_right": x}))
        previous_x, previous = x, value
    return holds(note=f"nondecreasing across {len(points)} sorted samples")


def _limit_at_zero(f_at, x_max: float) -> Optional[float]:
    """Estimate lim f at 0+ from the geometric tail.

    Values shrinking by a factor <= 0.75 per halving for the last probes give
    0.0; values stable within 1e-6 relative give the smallest-x value; mixed
    behavior gives None.
    """
    tail = _geometric_tail(x_max, max(_GEO_FLOOR, x_max * 2.0 ** -30))
    if len(tail) < 4:
        return None
    smallest_first = list(reversed(tail))[:4]  # four smallest samples
    values = [f_at(x) for x in smallest_first]
    vanishing = all(abs(values[i]) <= 0.75 * abs(values[i + 1]) + 1e-300
                    for i in range(len(values) - 1))
    if vanishing:
        return 0.0
    stable = all(abs(values[i] - values[i + 1])
                 <= 1e-6 * max(1.0, abs(values[i]), abs(values[i + 1]))
                 for i in range(len(values) - 1))
    if stable:
        return values[0]
    return None


def classify_fn(f: RealFn, grid: GridSpec = DEFAULT_GRID,
                plateau_b: Optional[float] = None,
                divergence: DivergenceConfig = DEFAULT_DIVERGENCE) -> FnProfile:
    """Profile f on the grid: amenability, monotonicity, subadditivity, and
    the quasi-subadditivity estimate with the shared divergence heuristic.

    Evaluation errors (domain, codomain, overflow) propagate with the
    offending x. Deterministic for fixed (f, grid): reports serialize to
    byte-identical JSON across runs.
    """
    points = sample_points(grid)
    cache: dict[float, float] = {}

    def f_at(x: float) -> float:
        if x not in cache:
            cache[x] = eval_fn(f, x)
        return cache[x]

    amenable = _amenability(f, points, f_at)
    increasing = _monotonicity(points, f_at)

    # one pass over the pair schedule feeds both subadditivity views
    max_defect = -math.inf
    defect_witness: Optional[Witness] = None
    defect_violates = False
    sup_ratio = 0.0
    sup_top = 0.0      # pairs with a + b in (x_max, 2 * x_max]
    sup_below = 0.0    # pairs with a + b <= x_max
    ratio_witness: Optional[Witness] = None
    pair_count = 0
    octave_split = grid.x_max
    for a, b in sample_pairs(grid, points):
        pair_count += 1
        fa, fb = f_at(a), f_at(b)
        fab = f_at(a + b)
        defect = fab - fa - fb
        if defect > max_defect:
            max_defect = defect
            defect_witness = Witness(
                description=(f"f({a!r} + {b!r}) = {fab!r} > "
                             f"{fa + fb!r} = f({a!r}) + f({b!r})"),
                lhs=fab, rhs=fa + fb,
                data={"a": a, "b": b, "f_a": fa, "f_b": fb, "f_sum": fab,
                      "defect": defect})
        if defect > REL_TOL * max(1.0, abs(fab)):
            defect_violates = True
        denom = fa + fb
        if denom > 0.0:
            ratio = fab / denom
            if ratio > sup_ratio:
                sup_ratio = ratio
                ratio_witness = Witness(
                    description=(f"f({a!r} + {b!r}) / (f({a!r}) + f({b!r})) "
                                 f"= {ratio!r}"),
                    lhs=fab, rhs=denom,
                    data={"a": a, "b": b, "f_a": fa, "f_b": fb,
                          "f_sum": fab, "ratio": ratio})
            if a + b > octave_split:
                sup_top = max(sup_top, ratio)
            else:
                sup_below = max(sup_below, ratio)

    if defect_violates:
        subadditive = fails(defect_witness, {"max_defect": max_defect})
    else:
        subadditive = holds({"max_defect": max_defect},
                            note=f"no defect above tolerance on {pair_count} pairs")

    s_star = max(1.0, sup_ratio)
    diverged = (sup_ratio > divergence.absolute_threshold
                and (sup_below <= 0.0
                     or sup_top >= divergence.octave_growth * sup_below))
    if diverged:
        quasi = fails(ratio_witness, {"s_star_estimate": s_star,
                                      "sup_top_octave": sup_top,
                                      "sup_below": sup_below})
    else:
        quasi = inconclusive(
            note=(f"largest ratio {s_star!r} on {pair_count} pairs; "
                  "no divergence across scale octaves"),
            constants={"s_star_estimate": s_star})

    return FnProfile(
        source=f.source,
        grid=grid,
        amenable=amenable,
        increasing=increasing,
        subadditive=subadditive,
        quasi_subadditive=quasi,
        limit_at_zero=_limit_at_zero(f_at, grid.x_max),
        plateau=None if plateau_b is None else verify_plateau(f, plateau_b),
    )

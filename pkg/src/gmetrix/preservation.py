"""Pushforwards, preservation checks, class membership, counterexample search.

The membership decision ladder is evidence-honest:

* necessary screens (amenability, bounded quasi-subadditivity) can refute
  membership outright with a concrete witness;
* sufficient screens certify membership when their grid-verified premises
  fire (monotone route for the extended class, bounded image-triplet route
  for the three coinciding relaxed classes);
* everything else stays Inconclusive with the collected evidence.

Scalar divergence refutes the relaxed classes and, through the inclusion of
ultrametric preservation in them, the ultrametric class too; for the extended
class it stays Inconclusive because a point-dependent bound table could still
exist.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from itertools import islice, product
from typing import Mapping, Optional

from . import axioms
from .classify import GridSpec, classify_fn
from .config import DEFAULT_DIVERGENCE, DivergenceConfig
from .dsl import RealFn, eval_exact, eval_fn, exact_capable, parse_fn
from .errors import SourceClassViolated, UnsupportedClass
from .model import (
    ClassTag,
    DistanceTable,
    Verdict,
    Witness,
    constant_theta,
    encode_value,
    holds,
    new_theta_table,
    random_space,
)
from .region import RegionSpec, region_check
from .triplets import (
    BoundaryStrategy,
    GridStrategy,
    PlanarPoint,
    RandomStrategy,
    Triplet,
    is_s_triplet,
    is_theta_triplet,
    realize_in_plane,
    sample_triplets,
    triplet_constant,
)

# --- pushforward -----------------------------------------------------------------

def pushforward(f: RealFn, table: DistanceTable) -> DistanceTable:
    """Apply f entrywise; exact when the expression allows it.

    Expressions in the exact fragment (+, *, min, max, literals, x) are
    evaluated over rationals, so e.g. the identity expression reproduces the
    table bit for bit. Everything else evaluates in floats and converts the
    result exactly. A nonzero f(0) surfaces as the constructor's diagonal
    error, since the image of the diagonal must stay zero.
    """
    if exact_capable(f.ast):
        def convert(value: Fraction) -> Fraction:
            return eval_exact(f.ast, value)
    else:
        def convert(value: Fraction) -> Fraction:
            return Fraction(eval_fn(f, float(value)))
    cache: dict[Fraction, Fraction] = {}
    rows = []
    for row in table.entries:
        new_row = []
        for value in row:
            if value not in cache:
                cache[value] = convert(value)
            new_row.append(cache[value])
        rows.append(tuple(new_row))
    return DistanceTable(table.points, tuple(rows))


# --- targeted preservation check ---------------------------------------------------

_SOURCE_AXIOMS = {
    # image kind -> which source axioms the input table must satisfy
    ClassTag.METRIC: ("metric", lambda t: _metric_verdict(t)),
    ClassTag.ULTRAMETRIC: ("ultrametric", lambda t: _ultra_verdict(t)),
    ClassTag.WEAK_ULTRAMETRIC: ("ultrametric", lambda t: _ultra_verdict(t)),
    ClassTag.B_METRIC: ("identity-passing", lambda t: axioms.check_identity(t)),
    ClassTag.EXTENDED_B_METRIC: ("identity-passing",
                                 lambda t: axioms.check_identity(t)),
}


def _metric_verdict(table: DistanceTable) -> Verdict:
    ident = axioms.check_identity(table)
    return ident if ident.fails else axioms.check_triangle(table)


def _ultra_verdict(table: DistanceTable) -> Verdict:
    ident = axioms.check_identity(table)
    return ident if ident.fails else axioms.check_ultra(table)


def preserve_check(f: RealFn, table: DistanceTable,
                   target: ClassTag) -> Verdict:
    """Does f carry this concrete table into the target kind?

    The input must satisfy the source axioms the target implies (metric for a
    metric image, ultrametric for the ultra and weak-ultra images, just the
    identity axiom for the relaxed images). The verdict is exact; for the
    relaxed targets it reports the optimal constant of the image.
    """
    if not (isinstance(target, ClassTag) and target.is_space):
        raise UnsupportedClass(f"{target!r} is not a space kind")
    source_name, source_check = _SOURCE_AXIOMS[target]
    source = source_check(table)
    if not source.holds:
        raise SourceClassViolated(
            f"input is not {source_name}: {source.witness.description}")
    image = pushforward(f, table)
    if target is ClassTag.METRIC:
        return _metric_verdict(image)
    if target is ClassTag.ULTRAMETRIC:
        return _ultra_verdict(image)
    ident = axioms.check_identity(image)
    if ident.fails:
        return ident
    if target is ClassTag.WEAK_ULTRAMETRIC:
        return holds({"C_min": axioms.optimal_weak_ultra_constant(image)})
    if target is ClassTag.B_METRIC:
        return holds({"s_min": axioms.optimal_b_constant(image)})
    theta = axioms.minimal_theta(image)
    return holds({"theta_max": theta.max_entry()})


# --- membership ------------------------------------------------------------------

MEMBER_GRID = GridSpec(x_max=20.0, n_points=10_000, seed=1)


@dataclass(frozen=True)
class Budget:
    """Sampling budget for membership decisions and counterexample search."""

    triplet_samples: int = 100_000
    grid: GridSpec = MEMBER_GRID
    seed: int = 0
    scale: Optional[float] = None  # triplet entry scale; default 2 * x_max

    def effective_scale(self) -> float:
        return self.scale if self.scale is not None else 2.0 * self.grid.x_max

    def to_json(self):
        return {"triplet_samples": self.triplet_samples,
                "grid": self.grid.to_json(),
                "seed": self.seed,
                "scale": self.effective_scale()}


class MembershipStatus(Enum):
    MEMBER = "member"
    NON_MEMBER_EVIDENCE = "non-member-evidence"
    INCONCLUSIVE = "inconclusive"


BASIS_AMENABILITY = "necessary-amenability-failed"
BASIS_QUASI = "necessary-quasi-subadditivity-diverged"
BASIS_EB_SUFFICIENT = "sufficient-amenable-increasing-quasi-subadditive"
BASIS_TRIPLET_SUFFICIENT = "sufficient-bounded-image-triplet-constant"
BASIS_TRIPLET_DIVERGENCE = "image-triplet-constant-divergence"

_SUPPORTED_CLASSES = frozenset(
    {ClassTag.U, ClassTag.DU, ClassTag.B, ClassTag.MB, ClassTag.EB})
_RELAXED_TRIO = frozenset({ClassTag.DU, ClassTag.B, ClassTag.MB})


@dataclass(frozen=True)
class MembershipReport:
    class_tag: ClassTag
    status: MembershipStatus
    basis: Optional[str]
    witness: Optional[Witness]
    constants: Mapping[str, object]
    note: Optional[str]
    budget: Budget
    source: str

    def to_json(self):
        return {
            "class": self.class_tag.value,
            "status": self.status.value,
            "basis": self.basis,
            "witness": None if self.witness is None else self.witness.to_json(),
            "constants": encode_value(self.constants),
            "note": self.note,
            "budget": self.budget.to_json(),
            "source": self.source,
        }


@dataclass(frozen=True)
class _TripletScan:
    samples_used: int
    sup: float
    sup_top: float
    sup_below: float
    best: Optional[tuple[Triplet, tuple[float, float, float]]]
    infinite: Optional[tuple[Triplet, tuple[float, float, float]]]
    diverged: bool


def _mixed_triplets(seed: int, scale: float):
    """Grid sweep first, then alternating random and boundary triplets."""
    yield from sample_triplets(GridStrategy(step=scale / 20.0, max=scale))
    randoms = sample_triplets(RandomStrategy(seed=seed, count=10 ** 9,
                                             scale=scale))
    boundary = sample_triplets(BoundaryStrategy(seed=seed + 1, count=10 ** 9,
                                                scale=scale / 2.0))
    for r, b in zip(randoms, boundary):
        yield r
        yield b


def _scan_image_triplets(f: RealFn, budget: Budget,
                         divergence: DivergenceConfig) -> _TripletScan:
    scale = budget.effective_scale()
    cache: dict[float, float] = {}

    def f_at(x: float) -> float:
        if x not in cache:
            cache[x] = eval_fn(f, x)
        return cache[x]

    sup = 0.0
    sup_top = 0.0
    sup_below = 0.0
    best = None
    infinite = None
    used = 0
    split = scale / 2.0
    for t in islice(_mixed_triplets(budget.seed, scale),
                    budget.triplet_samples):
        used += 1
        images = (f_at(float(t.a)), f_at(float(t.b)), f_at(float(t.c)))
        constant = triplet_constant(Triplet(*images))
        if constant == math.inf:
            infinite = (t, images)
            break
        constant = float(constant)
        if constant > sup:
            sup = constant
            best = (t, images)
        if max(float(t.a), float(t.b), float(t.c)) > split:
            sup_top = max(sup_top, constant)
        else:
            sup_below = max(sup_below, constant)
    diverged = (sup > divergence.absolute_threshold
                and (sup_below <= 0.0
                     or sup_top >= divergence.octave_growth * sup_below))
    return _TripletScan(samples_used=used, sup=sup, sup_top=sup_top,
                        sup_below=sup_below, best=best, infinite=infinite,
                        diverged=diverged)


def _triplet_witness(entry: tuple[Triplet, tuple[float, float, float]],
                     constant: float) -> Witness:
    t, images = entry
    return Witness(
        description=(f"triangle triplet {t.as_tuple()!r} maps to "
                     f"{images!r} with relaxation constant {constant!r}"),
        lhs=max(images), rhs=min(images),
        data={"triplet": t.as_tuple(), "images": images,
              "constant": "inf" if constant == math.inf else constant})


def membership(f: RealFn, class_tag: ClassTag,
               budget: Budget = Budget(),
               divergence: DivergenceConfig = DEFAULT_DIVERGENCE
               ) -> MembershipReport:
    """Decide (at grid evidence level) whether f belongs to a function class.

    Supported classes: U, DU, B, MB, EB. The metric-to-metric and
    b-metric-to-metric classes have no implemented sufficient test and are
    rejected with UnsupportedClass.
    """
    if class_tag not in _SUPPORTED_CLASSES:
        raise UnsupportedClass(
            f"membership for {getattr(class_tag, 'value', class_tag)!r} "
            "is not decidable here (supported: U, DU, B, MB, EB)")
    profile = classify_fn(f, budget.grid, divergence=divergence)

    def report(status, basis, witness, constants, note):
        return MembershipReport(class_tag=class_tag, status=status,
                                basis=basis, witness=witness,
                                constants=dict(constants), note=note,
                                budget=budget, source=f.source)

    if profile.amenable.fails:
        return report(MembershipStatus.NON_MEMBER_EVIDENCE, BASIS_AMENABILITY,
                      profile.amenable.witness, {},
                      "every supported class forces f(0) = 0 and f > 0 elsewhere")
    if profile.quasi_subadditive.fails:
        constants = dict(profile.quasi_subadditive.constants)
        # quasi-subadditivity is necessary even for the extended class, so
        # this screen refutes all five supported classes; only the weaker
        # image-triplet divergence below stays open for it
        note = ("pair ratios f(a+b)/(f(a)+f(b)) diverge, violating the "
                "quasi-subadditivity every supported class requires")
        if class_tag is ClassTag.U:
            note += ("; ultrametric preservation sits inside the relaxed "
                     "classes, so the refutation transfers")
        return report(MembershipStatus.NON_MEMBER_EVIDENCE, BASIS_QUASI,
                      profile.quasi_subadditive.witness, constants, note)

    s_estimate = profile.s_star_estimate
    premises = profile.amenable.holds and profile.increasing.holds
    if class_tag is ClassTag.EB and premises:
        # the sufficient route for the extended class needs no triplet scan
        return report(
            MembershipStatus.MEMBER, BASIS_EB_SUFFICIENT, None,
            {"s_star_estimate": s_estimate, "s": max(1.0, s_estimate)},
            "amenable, nondecreasing, and quasi-subadditive on the grid")

    scan = _scan_image_triplets(f, budget, divergence)
    constants = {"s_star_estimate": s_estimate,
                 "s_star_triplet": max(1.0, scan.sup),
                 "triplet_samples_used": scan.samples_used}

    if scan.infinite is not None:
        # f vanishes at a positive argument, so amenability fails after all
        t, images = scan.infinite
        zero_arg = t.b if images[1] == 0.0 else t.c
        witness = Witness(
            description=f"f({zero_arg!r}) = 0 although x > 0",
            lhs=0.0, rhs=0.0,
            data={"x": zero_arg, "triplet": t.as_tuple(), "images": images})
        return report(MembershipStatus.NON_MEMBER_EVIDENCE, BASIS_AMENABILITY,
                      witness, constants,
                      "image triplet with an infinite relaxation constant")
    if scan.diverged:
        witness = _triplet_witness(scan.best, scan.sup)
        if class_tag is ClassTag.EB:
            return report(
                MembershipStatus.INCONCLUSIVE, None, witness, constants,
                "image triplet constants diverge for every scalar bound, but "
                "a point-dependent bound table could still exist")
        note = "no scalar bound can cover the sampled image triplets"
        if class_tag is ClassTag.U:
            note += ("; ultrametric preservation sits inside the relaxed "
                     "classes, so the refutation transfers")
        return report(MembershipStatus.NON_MEMBER_EVIDENCE,
                      BASIS_TRIPLET_DIVERGENCE, witness, constants, note)

    if premises:
        if class_tag in _RELAXED_TRIO:
            s = max(1.0, s_estimate, scan.sup)
            return report(
                MembershipStatus.MEMBER, BASIS_TRIPLET_SUFFICIENT, None,
                {**constants, "s": s},
                "image triplet constants plateau; the three relaxed classes "
                "coincide, so one bound serves ultrametric-to-weak, "
                "b-to-b, and metric-to-b preservation alike")
        return report(
            MembershipStatus.INCONCLUSIVE, None, None, constants,
            "screens passed, but no sufficient criterion for ultrametric "
            "preservation is implemented")

    missing = []
    if not profile.amenable.holds:
        missing.append("amenability")
    if not profile.increasing.holds:
        missing.append("monotonicity")
    return report(
        MembershipStatus.INCONCLUSIVE, None, None, constants,
        f"sufficient premises not established on the grid "
        f"(missing: {', '.join(missing) or 'none'}); no refutation found")


# --- counterexample search ----------------------------------------------------------

@dataclass(frozen=True)
class SearchWitness:
    """A sampled triplet whose image admits no scalar relaxation bound,
    together with its planar realization as a concrete three-point space."""

    triplet: tuple[float, float, float]
    images: tuple[float, float, float]
    constant: float  # math.inf when the image denominator vanishes
    u: PlanarPoint
    v: PlanarPoint
    w: PlanarPoint
    samples_used: int
    seed: int

    def to_json(self):
        return {
            "triplet": list(self.triplet),
            "images": list(self.images),
            "constant": "inf" if self.constant == math.inf else self.constant,
            "points": {"u": list(self.u.as_tuple()),
                       "v": list(self.v.as_tuple()),
                       "w": list(self.w.as_tuple())},
            "samples_used": self.samples_used,
            "seed": self.seed,
        }


def counterexample_search(f: RealFn, class_tag: ClassTag,
                          budget: Budget = Budget(),
                          divergence: DivergenceConfig = DEFAULT_DIVERGENCE
                          ) -> Optional[SearchWitness]:
    """Search sampled triangle triplets for an image that defeats every
    scalar bound (divergence across scale octaves, or an infinite constant).

    Absence of a witness is a normal empty return, not evidence of
    membership. A returned witness is realized in the plane, making it a
    concrete three-point metric space whose image violates the relaxation.
    """
    if class_tag not in _SUPPORTED_CLASSES:
        raise UnsupportedClass(
            f"search for {getattr(class_tag, 'value', class_tag)!r} "
            "is not supported (supported: U, DU, B, MB, EB)")
    scan = _scan_image_triplets(f, budget, divergence)
    if scan.infinite is not None:
        t, images = scan.infinite
        constant = math.inf
    elif scan.diverged:
        t, images = scan.best
        constant = scan.sup
    else:
        return None
    u, v, w = realize_in_plane(t)
    a, b, c = (float(t.a), float(t.b), float(t.c))
    return SearchWitness(triplet=(a, b, c), images=images, constant=constant,
                         u=u, v=v, w=w, samples_used=scan.samples_used,
                         seed=budget.seed)


# --- theorem suite -----------------------------------------------------------------

FUNCTION_CATALOG = (
    ("identity", "x"),
    ("saturating-ratio", "x / (1 + x)"),
    ("unit-clamp", "min(x, 1)"),
    ("square-root", "sqrt(x)"),
    ("square", "x^2"),
    ("exp-minus-one", "exp(x) - 1"),
    ("zero", "0"),
    ("ceiling", "ceil(x)"),
)

_SUBADDITIVE_NAMES = ("identity", "saturating-ratio", "unit-clamp",
                      "square-root", "ceiling")
_MONOTONE_AMENABLE_NAMES = ("identity", "saturating-ratio", "unit-clamp",
                            "square-root", "square", "ceiling")


@dataclass(frozen=True)
class SuiteAssertion:
    id: str
    description: str
    passed: bool
    details: Mapping[str, object]

    def to_json(self):
        return {"id": self.id, "description": self.description,
                "passed": self.passed, "details": encode_value(self.details)}


@dataclass(frozen=True)
class SuiteReport:
    seed: int
    assertions: tuple[SuiteAssertion, ...]

    @property
    def all_passed(self) -> bool:
        return all(item.passed for item in self.assertions)

    def to_json(self):
        return {"seed": self.seed, "all_passed": self.all_passed,
                "assertions": [item.to_json() for item in self.assertions]}


def _catalog_fn(name: str) -> RealFn:
    for label, source in FUNCTION_CATALOG:
        if label == name:
            return parse_fn(source)
    raise KeyError(name)


def theorem_suite(seed: int = 0) -> SuiteReport:
    """Run the cross-checking assertions over generators and the catalog.

    Deterministic for a fixed seed: identical reports, byte for byte. Each
    assertion runs guarded, so a defect shows up as a failed entry instead of
    aborting the suite.
    """
    base = seed * 1000
    checks: list[SuiteAssertion] = []

    def run(assert_id: str, description: str, body) -> None:
        try:
            passed, details = body()
        except Exception as err:  # report, never abort
            passed, details = False, {"error": repr(err)}
        checks.append(SuiteAssertion(assert_id, description, bool(passed),
                                     dict(details)))

    def ultrametrics_unit_constant():
        for i, (n, _) in enumerate(product(range(2, 7), range(40))):
            table, _theta = random_space(ClassTag.ULTRAMETRIC, n, base + i)
            if not axioms.check_ultra(table).holds:
                return False, {"space": i, "reason": "ultra axiom"}
            if not axioms.check_triangle(table).holds:
                return False, {"space": i, "reason": "triangle"}
            if axioms.optimal_weak_ultra_constant(table) != 1:
                return False, {"space": i, "reason": "constant above 1"}
        return True, {"spaces": 200}

    run("ultrametric-unit-constant",
        "generated ultrametrics satisfy the max inequality with optimal "
        "constant exactly 1 and are metrics in particular",
        ultrametrics_unit_constant)

    def metrics_unit_relaxation():
        for i, (n, _) in enumerate(product(range(2, 7), range(40))):
            table, _theta = random_space(ClassTag.METRIC, n, base + i)
            if not axioms.check_triangle(table).holds:
                return False, {"space": i, "reason": "triangle"}
            if axioms.optimal_b_constant(table) != 1:
                return False, {"space": i, "reason": "relaxation above 1"}
        return True, {"spaces": 200}

    run("metric-unit-relaxation",
        "generated metrics satisfy the sum inequality with optimal "
        "relaxation constant exactly 1",
        metrics_unit_relaxation)

    def scalar_bound_tightness():
        nontrivial = 0
        for i, (n, _) in enumerate(product(range(2, 7), range(20))):
            table, _theta = random_space(ClassTag.B_METRIC, n, base + i)
            s = axioms.optimal_b_constant(table)
            cover = constant_theta(table.points, s)
            if not axioms.check_extended_b(table, cover).holds:
                return False, {"space": i, "reason": "optimal s rejected"}
            if s > 1:
                nontrivial += 1
                shrunk = 1 + (s - 1) * Fraction(999, 1000)
                below = constant_theta(table.points, shrunk)
                if not axioms.check_extended_b(table, below).fails:
                    return False, {"space": i,
                                   "reason": "sub-optimal s accepted"}
        return True, {"spaces": 100, "nontrivial": nontrivial}

    run("scalar-bound-tightness",
        "the optimal scalar relaxation of a generated b-space works as a "
        "constant pointwise bound and shrinking it breaks the space",
        scalar_bound_tightness)

    def pointwise_bounds_cover():
        shrunk_checked = 0
        for i, (n, _) in enumerate(product(range(2, 7), range(20))):
            table, theta = random_space(ClassTag.EXTENDED_B_METRIC, n,
                                        base + i)
            if not axioms.check_extended_b(table, theta).holds:
                return False, {"space": i, "reason": "attached bound rejected"}
            if theta.max_entry() > 1:
                shrunk_checked += 1
                rows = [[1 + (v - 1) * Fraction(999, 1000) if v > 1 else v
                         for v in row] for row in theta.entries]
                below = new_theta_table(theta.points, rows)
                if not axioms.check_extended_b(table, below).fails:
                    return False, {"space": i,
                                   "reason": "shrunk bounds accepted"}
        return True, {"spaces": 100, "shrunk_checked": shrunk_checked}

    run("pointwise-bounds-cover",
        "the minimal pointwise bound table attached to generated extended "
        "spaces verifies, and uniformly shrinking its nontrivial entries "
        "fails",
        pointwise_bounds_cover)

    def subadditive_unit_estimate():
        grid = GridSpec(x_max=10.0, n_points=600, seed=seed)
        for name in _SUBADDITIVE_NAMES:
            profile = classify_fn(_catalog_fn(name), grid)
            if not profile.subadditive.holds:
                return False, {"fn": name, "reason": "subadditivity rejected"}
            if profile.s_star_estimate != 1.0:
                return False, {"fn": name,
                               "estimate": profile.s_star_estimate}
        return True, {"functions": len(_SUBADDITIVE_NAMES)}

    run("subadditive-unit-estimate",
        "subadditive catalog functions profile with relaxation estimate "
        "exactly 1",
        subadditive_unit_estimate)

    def scalar_pointwise_agreement():
        triplets = list(islice(
            sample_triplets(RandomStrategy(seed=base + 500, count=500)), 500))
        for t in triplets:
            k = float(triplet_constant(t)) * (1.0 + 1e-12)
            if not is_s_triplet(t, k):
                return False, {"triplet": t.as_tuple(),
                               "reason": "own constant rejected"}
            for s in (1.0, 1.5, k, 4.0):
                if is_s_triplet(t, s) != is_theta_triplet(t, s, s, s):
                    return False, {"triplet": t.as_tuple(), "s": s}
        return True, {"triplets": len(triplets)}

    run("scalar-pointwise-agreement",
        "a scalar relaxation bound and the constant pointwise bound accept "
        "exactly the same sampled triplets",
        scalar_pointwise_agreement)

    def monotone_preserves_ultra():
        for name in _MONOTONE_AMENABLE_NAMES:
            f = _catalog_fn(name)
            for i, (n, _) in enumerate(product(range(2, 7), range(6))):
                table, _theta = random_space(ClassTag.ULTRAMETRIC, n,
                                             base + 300 + i)
                image = pushforward(f, table)
                if not axioms.check_identity(image).holds:
                    return False, {"fn": name, "space": i,
                                   "reason": "identity"}
                if not axioms.check_ultra(image).holds:
                    return False, {"fn": name, "space": i, "reason": "ultra"}
                if axioms.optimal_weak_ultra_constant(image) != 1:
                    return False, {"fn": name, "space": i,
                                   "reason": "constant above 1"}
        return True, {"functions": len(_MONOTONE_AMENABLE_NAMES),
                      "spaces_each": 30}

    run("monotone-preserves-ultrametric",
        "amenable nondecreasing catalog functions push generated "
        "ultrametrics to ultrametrics",
        monotone_preserves_ultra)

    def catalog_membership_statuses():
        budget = Budget(triplet_samples=6000,
                        grid=GridSpec(x_max=20.0, n_points=1200, seed=seed),
                        seed=base + 800)
        member = MembershipStatus.MEMBER
        refuted = MembershipStatus.NON_MEMBER_EVIDENCE
        expected = {
            "identity": (member, member),
            "saturating-ratio": (member, member),
            "unit-clamp": (member, member),
            "square-root": (member, member),
            "square": (member, member),
            "exp-minus-one": (refuted, refuted),
            "zero": (refuted, refuted),
            "ceiling": (member, member),
        }
        screened = 0
        for name, (want_b, want_eb) in expected.items():
            f = _catalog_fn(name)
            got_b = membership(f, ClassTag.B, budget).status
            got_eb = membership(f, ClassTag.EB, budget).status
            if (got_b, got_eb) != (want_b, want_eb):
                return False, {"fn": name,
                               "b": got_b.value, "eb": got_eb.value,
                               "expected_b": want_b.value,
                               "expected_eb": want_eb.value}
            if got_b is member and got_eb is not member:
                return False, {"fn": name,
                               "reason": "b membership without extended"}
            if member in (got_b, got_eb):
                # every certified member must pass the necessary screens
                profile = classify_fn(f, budget.grid)
                if not profile.amenable.holds or profile.quasi_subadditive.fails:
                    return False, {"fn": name,
                                   "reason": "member fails a necessary screen"}
                screened += 1
        return True, {"functions": len(expected), "screened": screened}

    run("catalog-membership-statuses",
        "membership statuses across the catalog match the known lattice "
        "facts, scalar membership implies extended membership, and every "
        "member passes the necessary screens",
        catalog_membership_statuses)

    def step_function_is_relaxed_member():
        f = parse_fn("piece(x <= 0 ? 0 : piece(x <= 1 ? 1 : 4))")
        budget = Budget(triplet_samples=6000,
                        grid=GridSpec(x_max=20.0, n_points=1200, seed=seed),
                        seed=base + 900)
        reports = [membership(f, tag, budget)
                   for tag in (ClassTag.DU, ClassTag.B, ClassTag.MB)]
        for rep in reports:
            if rep.status is not MembershipStatus.MEMBER:
                return False, {"class": rep.class_tag.value,
                               "status": rep.status.value}
            if rep.constants.get("s") != 2.0:
                return False, {"class": rep.class_tag.value,
                               "s": rep.constants.get("s")}
        witness = counterexample_search(f, ClassTag.MB, budget)
        if witness is not None:
            return False, {"reason": "search produced a spurious witness",
                           "constant": witness.constant}
        return True, {"classes": 3, "s": 2.0}

    run("step-function-relaxed-member",
        "the two-level step function lands in all three coinciding relaxed "
        "classes with bound exactly 2, and the search finds no witness "
        "against it",
        step_function_is_relaxed_member)

    def ceiling_envelope():
        report = region_check(parse_fn("ceil(x)"),
                              RegionSpec(a=1.0, b=1.0, n_max=10,
                                         samples_per_interval=12))
        if not report.all_hold:
            return False, {"violations": len(report.violations)}
        return True, {"intervals": 10}

    run("ceiling-envelope",
        "the ceiling function stays inside the staircase envelope grown "
        "from its unit plateau",
        ceiling_envelope)

    def identity_pushforward_exact():
        f = _catalog_fn("identity")
        kinds = (ClassTag.METRIC, ClassTag.ULTRAMETRIC,
                 ClassTag.WEAK_ULTRAMETRIC, ClassTag.B_METRIC)
        count = 0
        for kind in kinds:
            for j in range(5):
                table, _theta = random_space(kind, 5, base + 600 + j)
                image = pushforward(f, table)
                if image.entries != table.entries:
                    return False, {"kind": kind.value, "space": j}
                count += 1
        return True, {"spaces": count}

    run("identity-pushforward-exact",
        "pushing forward along the identity expression reproduces every "
        "table bit for bit",
        identity_pushforward_exact)

    def amenable_preserves_positivity():
        names = ("saturating-ratio", "unit-clamp", "square-root", "square")
        for name in names:
            f = _catalog_fn(name)
            for i, (n, _) in enumerate(product(range(2, 7), range(6))):
                table, _theta = random_space(ClassTag.METRIC, n,
                                             base + 700 + i)
                if not axioms.check_identity(pushforward(f, table)).holds:
                    return False, {"fn": name, "space": i}
        return True, {"functions": len(names), "spaces_each": 30}

    run("amenable-preserves-positivity",
        "amenable catalog functions keep distinct points at positive "
        "distance after the pushforward",
        amenable_preserves_positivity)

    return SuiteReport(seed=seed, assertions=tuple(checks))

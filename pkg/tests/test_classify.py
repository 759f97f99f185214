"""Grid profiles: amenability, monotonicity, subadditivity, divergence."""

import pytest

from gmetrix import (
    DivergenceConfig,
    GridSpec,
    canonical_dumps,
    classify_fn,
    parse_fn,
    sample_points,
    verify_plateau,
)
from gmetrix.errors import PreconditionViolated

GRID_10 = GridSpec(x_max=10.0, n_points=2000, seed=1)
GRID_20 = GridSpec(x_max=20.0, n_points=2000, seed=1)


def test_grid_spec_validation():
    with pytest.raises(PreconditionViolated):
        GridSpec(x_max=0.0)
    with pytest.raises(PreconditionViolated):
        GridSpec(x_max=float("inf"))
    with pytest.raises(PreconditionViolated):
        GridSpec(n_points=1)


def test_sample_points_contract():
    pts = sample_points(GRID_10)
    assert pts == sorted(pts)
    assert pts[0] == 0.0
    assert pts[-1] == 10.0
    assert 1.0 in pts
    assert pts == sample_points(GRID_10)  # deterministic
    assert pts != sample_points(GridSpec(x_max=10.0, n_points=2000, seed=2))


def test_square_profile():
    profile = classify_fn(parse_fn("x^2"), GRID_10)
    assert profile.amenable.holds
    assert profile.increasing.holds
    assert profile.subadditive.fails
    # the worst defect shows up on a doubled argument
    witness = profile.subadditive.witness
    assert witness.data["a"] == witness.data["b"]
    # ratio f(a+b)/(f(a)+f(b)) = (a+b)^2/(a^2+b^2) tops out at 2
    assert profile.quasi_subadditive.status.value == "inconclusive"
    assert 1.98 <= profile.s_star_estimate <= 2.02
    assert profile.limit_at_zero == 0.0


def test_sqrt_profile_is_subadditive_with_unit_estimate():
    profile = classify_fn(parse_fn("sqrt(x)"), GRID_10)
    assert profile.amenable.holds
    assert profile.increasing.holds
    assert profile.subadditive.holds
    assert profile.s_star_estimate == 1.0  # the floor binds exactly
    assert profile.limit_at_zero == 0.0


def test_clamp_profile():
    profile = classify_fn(parse_fn("min(x, 1)"), GRID_10)
    assert profile.amenable.holds
    assert profile.increasing.holds
    assert profile.subadditive.holds
    assert profile.s_star_estimate == 1.0
    assert profile.limit_at_zero == 0.0


def test_ceiling_profile_has_positive_limit():
    profile = classify_fn(parse_fn("ceil(x)"), GRID_10)
    assert profile.amenable.holds
    assert profile.increasing.holds
    assert profile.subadditive.holds
    assert profile.limit_at_zero == 1.0


def test_zero_function_fails_amenability_at_one():
    profile = classify_fn(parse_fn("0"), GRID_10)
    assert profile.amenable.fails
    assert profile.amenable.witness.data["x"] == 1.0


def test_nonzero_origin_fails_amenability_at_zero():
    profile = classify_fn(parse_fn("max(x, 1)"), GRID_10)
    assert profile.amenable.fails
    assert profile.amenable.witness.data["x"] == 0.0
    assert profile.limit_at_zero == 1.0


def test_decreasing_stretch_is_caught():
    profile = classify_fn(parse_fn("abs(x - 3)"), GRID_10)
    assert profile.increasing.fails
    data = profile.increasing.witness.data
    assert data["x_left"] < data["x_right"]


def test_exponential_growth_diverges():
    profile = classify_fn(parse_fn("exp(x) - 1"), GRID_20)
    quasi = profile.quasi_subadditive
    assert quasi.fails
    assert quasi.witness.data["ratio"] > 1e3
    assert quasi.constants["s_star_estimate"] > 1e6
    # the witness re-evaluates to the recorded violation
    f = parse_fn("exp(x) - 1")
    a, b = quasi.witness.data["a"], quasi.witness.data["b"]
    assert f(a + b) / (f(a) + f(b)) == quasi.witness.data["ratio"]


def test_divergence_config_is_injectable():
    aggressive = DivergenceConfig(absolute_threshold=1.5, octave_growth=0.5)
    profile = classify_fn(parse_fn("x^2"), GRID_10, divergence=aggressive)
    assert profile.quasi_subadditive.fails  # ratio 2 now counts as divergent


def test_profile_json_is_byte_stable():
    first = classify_fn(parse_fn("x / (1 + x)"), GRID_10)
    second = classify_fn(parse_fn("x / (1 + x)"), GRID_10)
    assert canonical_dumps(first.to_json()) == canonical_dumps(second.to_json())


def test_verify_plateau():
    assert verify_plateau(parse_fn("ceil(x)"), 1.0) == (1.0, 1.0)
    assert verify_plateau(parse_fn("piece(x <= 3 ? 2 : x)"), 3.0) == (2.0, 3.0)
    # constant on [1, b] only is not a plateau; (0, b] is the whole claim
    assert verify_plateau(parse_fn("min(x, 1)"), 3.0) is None
    assert verify_plateau(parse_fn("x^2"), 1.0) is None
    # a plateau at level zero is rejected: the level must be positive
    assert verify_plateau(parse_fn("piece(x <= 1 ? 0 : 1)"), 1.0) is None
    with pytest.raises(PreconditionViolated):
        verify_plateau(parse_fn("ceil(x)"), 0.0)


def test_classify_attaches_requested_plateau():
    profile = classify_fn(parse_fn("ceil(x)"), GRID_10, plateau_b=1.0)
    assert profile.plateau == (1.0, 1.0)
    assert classify_fn(parse_fn("x^2"), GRID_10, plateau_b=1.0).plateau is None

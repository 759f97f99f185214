"""Distance tables, JSON documents, tags, and the seeded space generators."""

import json
from fractions import Fraction

import pytest

from gmetrix import (
    ClassTag,
    DistanceTable,
    Status,
    Verdict,
    Witness,
    canonical_dumps,
    check_extended_b,
    check_identity,
    constant_theta,
    dump_space,
    load_space,
    new_distance_table,
    new_theta_table,
    random_space,
    space_from_json,
    space_to_json,
)
from gmetrix.errors import (
    AsymmetricEntry,
    InvalidEntry,
    InvalidTheta,
    NegativeEntry,
    NonzeroDiagonal,
    PreconditionViolated,
    ShapeMismatch,
    SpaceFormatError,
    UnsupportedKind,
)

from oracles import brute_is_metric, brute_is_ultra


def test_table_coerces_ints_strings_and_fractions():
    table = new_distance_table(["x", "y"], [[0, "3/2"], [Fraction(3, 2), 0]])
    assert table.entry(0, 1) == Fraction(3, 2)
    assert isinstance(table.entry(0, 1), Fraction)


def test_table_rejects_floats():
    with pytest.raises(InvalidEntry):
        new_distance_table(["x", "y"], [[0, 1.5], [1.5, 0]])


def test_table_rejects_bools():
    with pytest.raises(InvalidEntry):
        new_distance_table(["x", "y"], [[0, True], [True, 0]])


def test_table_shape_validation():
    with pytest.raises(ShapeMismatch):
        new_distance_table(["x", "y"], [[0, 1]])
    with pytest.raises(ShapeMismatch):
        new_distance_table(["x", "x"], [[0, 1], [1, 0]])


def test_table_negative_entry():
    with pytest.raises(NegativeEntry) as excinfo:
        new_distance_table(["x", "y"], [[0, -1], [-1, 0]])
    assert excinfo.value.value == Fraction(-1)


def test_table_nonzero_diagonal():
    with pytest.raises(NonzeroDiagonal):
        new_distance_table(["x", "y"], [[1, 2], [2, 0]])


def test_table_asymmetry():
    with pytest.raises(AsymmetricEntry) as excinfo:
        new_distance_table(["x", "y", "z"],
                           [[0, 1, 2], [1, 0, 3], [2, 4, 0]])
    assert (excinfo.value.i, excinfo.value.j) == (1, 2)


def test_theta_table_entries_below_one_rejected():
    with pytest.raises(InvalidTheta):
        new_theta_table(["x", "y"], [["1/2", 1], [1, 1]])


def test_constant_theta_round_trip():
    theta = constant_theta(["x", "y", "z"], "3/2")
    assert theta.max_entry() == Fraction(3, 2)
    assert theta.entry(0, 0) == Fraction(3, 2)


def test_space_json_round_trip_is_bit_exact():
    table = new_distance_table(["x", "y", "z"],
                               [[0, "7/3", 4], ["7/3", 0, "1/6"],
                                [4, "1/6", 0]])
    doc = space_to_json(table)
    back, theta = space_from_json(json.loads(json.dumps(doc)))
    assert theta is None
    assert back.entries == table.entries
    assert back.points == table.points


def test_space_json_with_theta_round_trip(tmp_path):
    table = new_distance_table(["x", "y"], [[0, 3], [3, 0]])
    theta = constant_theta(["x", "y"], 2)
    path = tmp_path / "space.json"
    dump_space(path, table, theta)
    back, theta_back = load_space(path)
    assert back.entries == table.entries
    assert theta_back.entries == theta.entries


def test_space_json_schema_errors():
    with pytest.raises(SpaceFormatError):
        space_from_json([1, 2, 3])
    with pytest.raises(SpaceFormatError):
        space_from_json({"entries": [[0]]})
    with pytest.raises(SpaceFormatError):
        space_from_json({"points": ["x", 2], "entries": [[0, 1], [1, 0]]})
    with pytest.raises(SpaceFormatError):
        # floats in documents are rejected just like in constructors
        space_from_json({"points": ["x", "y"],
                         "entries": [[0, 1.5], [1.5, 0]]})


def test_load_space_rejects_invalid_json(tmp_path):
    path = tmp_path / "bad.json"
    path.write_text("{not json", encoding="utf-8")
    with pytest.raises(SpaceFormatError):
        load_space(path)


def test_canonical_dumps_is_sorted_and_newline_terminated():
    text = canonical_dumps({"b": 1, "a": Fraction(1, 3)})
    assert text == '{\n  "a": "1/3",\n  "b": 1\n}\n'


def test_class_tag_parse():
    assert ClassTag.parse("eb") is ClassTag.EB
    assert ClassTag.parse("Extended-B-Metric") is ClassTag.EXTENDED_B_METRIC
    assert ClassTag.parse("mb").is_function_class
    assert ClassTag.parse("ultrametric").is_space
    with pytest.raises(UnsupportedKind):
        ClassTag.parse("euclidean")


def test_verdict_construction_contracts():
    with pytest.raises(PreconditionViolated):
        Verdict(Status.FAILS)  # a failing verdict demands a witness
    with pytest.raises(PreconditionViolated):
        Verdict(Status.INCONCLUSIVE)  # inconclusive demands a note
    witness = Witness(description="d(x,y) broken", points=("x", "y"))
    assert Verdict(Status.FAILS, witness=witness).fails


SPACE_KINDS = (ClassTag.METRIC, ClassTag.ULTRAMETRIC,
               ClassTag.WEAK_ULTRAMETRIC, ClassTag.B_METRIC,
               ClassTag.EXTENDED_B_METRIC)


@pytest.mark.parametrize("kind", SPACE_KINDS)
@pytest.mark.parametrize("n", [2, 3, 5, 6])
def test_random_space_postconditions(kind, n):
    for seed in range(10):
        table, theta = random_space(kind, n, seed)
        assert table.n == n
        raw = [list(row) for row in table.entries]
        assert check_identity(table).holds
        if kind is ClassTag.METRIC:
            assert theta is None
            assert brute_is_metric(raw)
        elif kind is ClassTag.ULTRAMETRIC:
            assert theta is None
            assert brute_is_ultra(raw)
        elif kind is ClassTag.EXTENDED_B_METRIC:
            assert theta is not None
            assert check_extended_b(table, theta).holds
        else:
            assert theta is None


def test_random_space_is_deterministic():
    a, _ = random_space(ClassTag.B_METRIC, 5, 123)
    b, _ = random_space(ClassTag.B_METRIC, 5, 123)
    c, _ = random_space(ClassTag.B_METRIC, 5, 124)
    assert a.entries == b.entries
    assert a.entries != c.entries


def test_random_space_kinds_are_separated_by_seed_stream():
    # same (n, seed) for different kinds must not alias
    m, _ = random_space(ClassTag.METRIC, 4, 9)
    u, _ = random_space(ClassTag.ULTRAMETRIC, 4, 9)
    assert m.entries != u.entries


def test_random_space_input_validation():
    with pytest.raises(PreconditionViolated):
        random_space(ClassTag.METRIC, 1, 0)
    with pytest.raises(UnsupportedKind):
        random_space(ClassTag.EB, 4, 0)


def test_distance_table_is_immutable():
    table = new_distance_table(["x", "y"], [[0, 3], [3, 0]])
    with pytest.raises(Exception):
        table.points = ("a", "b")

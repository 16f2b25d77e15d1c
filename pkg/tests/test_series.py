"""Invariant dimension series: frozen values, degree extraction, identities.

Oracle for the symmetric-group series: the coefficient of t^k counts
partitions of k into parts of bounded size, computed here by direct dynamic
programming and frozen into the expected lists.
"""

from fractions import Fraction

import pytest

from refleig.errors import InternalConsistencyError, NotReflectionSeriesError
from refleig.groups import builtin
from refleig.series import (
    DegreeVector,
    SeriesQ,
    default_truncation,
    extract_degrees,
    harmonic_hilbert,
    molien,
    series_identity_check,
)


def bounded_partition_counts(max_part, upto):
    """Partitions of k with parts <= max_part, for k = 0..upto."""
    counts = [1] + [0] * upto
    for part in range(1, max_part + 1):
        for k in range(part, upto + 1):
            counts[k] += counts[k - part]
    return counts


def test_molien_frozen_dihedral4():
    series = molien(builtin("dihedral:4"))
    assert [int(series[k]) for k in range(9)] == [1, 0, 1, 0, 2, 0, 2, 0, 3]


def test_molien_trivial_group_counts_all_monomials():
    series = molien(builtin("trivial:2"))
    assert [int(series[k]) for k in range(6)] == [1, 2, 3, 4, 5, 6]


def test_molien_symmetric_is_bounded_partition_count():
    for n in (2, 3, 4):
        series = molien(builtin(f"symmetric:{n}"))
        expected = bounded_partition_counts(n, series.truncation)
        assert [int(series[k]) for k in range(series.truncation + 1)] == expected


def test_molien_coefficients_are_nonnegative_integers():
    for spec in ("dihedral:7", "hyperoctahedral:2", "cyclic:6"):
        series = molien(builtin(spec))
        for k in range(series.truncation + 1):
            c = series[k]
            assert c.denominator == 1 and c >= 0


def test_degree_extraction_frozen():
    cases = {
        "dihedral:4": (2, 4),
        "dihedral:6": (2, 6),
        "symmetric:3": (1, 2, 3),
        "hyperoctahedral:2": (2, 4),
        "hyperoctahedral:3": (2, 4, 6),
    }
    for spec, degrees in cases.items():
        group = builtin(spec)
        series = molien(group)
        vec = extract_degrees(series, group.dimension, group.order)
        assert vec.degrees == degrees
        prod = 1
        for d in vec.degrees:
            prod *= d
        assert prod == group.order


def test_degree_extraction_rejects_non_reflection_series():
    group = builtin("cyclic:5")
    series = molien(group)
    with pytest.raises(NotReflectionSeriesError) as excinfo:
        extract_degrees(series, group.dimension, group.order)
    assert "not a reflection-group invariant series" in str(excinfo.value)


def test_degree_vector_validation():
    with pytest.raises(InternalConsistencyError):
        DegreeVector((2, 5), 2, 8)  # product mismatch
    with pytest.raises(InternalConsistencyError):
        DegreeVector((2,), 2, 8)  # wrong count
    vec = DegreeVector((4, 2), 2, 8)
    assert vec.degrees == (2, 4)  # stored ascending


def test_harmonic_hilbert_frozen():
    vec = DegreeVector((1, 2, 3), 3, 6)
    poly = harmonic_hilbert(vec)
    assert [int(poly[k]) for k in range(poly.truncation + 1)] == [1, 2, 2, 1]
    assert sum(int(poly[k]) for k in range(poly.truncation + 1)) == 6


def test_harmonic_hilbert_is_palindromic():
    for spec in ("dihedral:5", "hyperoctahedral:3", "symmetric:4"):
        group = builtin(spec)
        vec = extract_degrees(molien(group), group.dimension, group.order)
        poly = harmonic_hilbert(vec)
        top = sum(d - 1 for d in vec.degrees)
        coeffs = [int(poly[k]) for k in range(top + 1)]
        assert coeffs == coeffs[::-1]


def test_series_identity_battery():
    for spec in ("dihedral:3", "dihedral:8", "symmetric:4", "hyperoctahedral:2"):
        assert series_identity_check(builtin(spec))


def test_series_identity_detects_wrong_degrees():
    group = builtin("dihedral:4")
    wrong = DegreeVector((1, 8), 2, 8)  # right product, wrong degrees
    assert not series_identity_check(group, degrees=wrong)


def test_series_reciprocal():
    s = SeriesQ(tuple(Fraction(c) for c in (1, 3, -2, 5, 0, 1, 7, -4)))
    r = s.reciprocal()
    prod = s.mul(r)
    assert int(prod[0]) == 1
    assert all(prod[k] == 0 for k in range(1, prod.truncation + 1))


def test_default_truncation_covers_extraction_bound():
    for spec in ("dihedral:3", "hyperoctahedral:3", "trivial:1"):
        group = builtin(spec)
        assert default_truncation(group) > group.order + group.dimension - 1

from fractions import Fraction

import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

import golden
from fanocount.grassmann import GrassmannianSpec, HSeriesPair, extract_h_pair, hv_iseries
from fanocount.exactmath import PowerSeries
from fanocount.lefschetz import CompleteIntersectionSpec, quantum_lefschetz
from fanocount.solver import (
    AmbiguousSolution,
    ConsistencyCheckFailed,
    CountingMatrix,
    DegenerateLocus,
    NoRationalSolution,
    PeriodVector,
    _linear_parts,
    _substituted_system,
    _unipoly,
    discriminant,
    forward_periods,
    invert_periods,
    rational_roots,
    recover_matrix,
)

F = Fraction

M10 = CountingMatrix(deg=10, **golden.entry_values(golden.MATRIX_V10))
M14 = CountingMatrix(deg=14, **golden.entry_values(golden.MATRIX_V14))


def variety_pair(r, n, degrees, d_max=6):
    spec = CompleteIntersectionSpec(GrassmannianSpec(r, n), degrees)
    ambient = extract_h_pair(hv_iseries(spec.ambient, d_max, 2))
    return quantum_lefschetz(ambient, spec)


def test_counting_matrix_rows_layout():
    assert M10.rows() == (
        (F(0), F(156), F(3600), F(33120)),
        (F(1), F(10), F(380), F(3600)),
        (F(0), F(1), F(10), F(156)),
        (F(0), F(0), F(1), F(0)),
    )
    assert M14.rows() == (
        (F(0), F(64), F(924), F(5936)),
        (F(1), F(5), F(140), F(924)),
        (F(0), F(1), F(5), F(64)),
        (F(0), F(0), F(1), F(0)),
    )


def test_counting_matrix_entry_accessor():
    assert M10.entry(0, 1) == 156
    assert M10.entry(2, 3) == 156
    assert M10.entry(1, 0) == 1
    assert M10.entry(3, 3) == 0


def test_recover_matrix_deg10():
    pair = variety_pair(2, 5, (1, 1, 2))
    assert recover_matrix(pair, 10) == M10


def test_recover_matrix_deg14():
    pair = variety_pair(2, 6, (1, 1, 1, 1, 1))
    assert recover_matrix(pair, 14) == M14


def test_recover_matrix_needs_five_coefficients():
    pair = variety_pair(2, 5, (1, 1, 2), d_max=3)
    with pytest.raises(ValueError):
        recover_matrix(pair, 10)


def bump(series, index, delta=F(1)):
    coeffs = list(series.coeffs)
    coeffs[index] += delta
    return PowerSeries(tuple(coeffs))


def test_recover_matrix_rejects_wrong_leading_terms():
    pair = variety_pair(2, 5, (1, 1, 2))
    with pytest.raises(ConsistencyCheckFailed):
        recover_matrix(HSeriesPair(bump(pair.c0, 0), pair.c1), 10)
    with pytest.raises(ConsistencyCheckFailed):
        recover_matrix(HSeriesPair(bump(pair.c0, 1), pair.c1), 10)


def test_recover_matrix_redundant_checks_catch_corruption():
    pair = variety_pair(2, 5, (1, 1, 2))
    # corrupting an inverted coefficient shifts an entry and breaks closure
    with pytest.raises(ConsistencyCheckFailed):
        recover_matrix(HSeriesPair(bump(pair.c0, 3), pair.c1), 10)
    # corrupting a redundant coefficient breaks the comparison directly
    with pytest.raises(ConsistencyCheckFailed):
        recover_matrix(HSeriesPair(pair.c0, bump(pair.c1, 4)), 10)


def test_forward_periods_golden():
    assert forward_periods(M10).as_tuple() == (
        F(39),
        F(220),
        F(6291, 4),
        F(8766),
        F(524413, 12),
    )
    assert forward_periods(M14).as_tuple() == (
        F(16),
        F(52),
        F(230),
        F(764),
        F(41291, 18),
    )


def test_periods_are_series_constants():
    pair = variety_pair(2, 6, (1, 1, 1, 1, 1))
    periods = forward_periods(recover_matrix(pair, 14))
    assert periods.as_tuple() == tuple(pair.c0[d] for d in range(2, 7))


def test_discriminant_values():
    assert discriminant(forward_periods(M10)) == -10182375
    assert discriminant(forward_periods(M14)) == -221200
    assert discriminant(PeriodVector(F(0), F(0), F(0), F(0), F(0))) == 0


def test_invert_periods_roundtrip_published():
    for m in (M10, M14):
        assert invert_periods(forward_periods(m), m.deg) == m


def test_invert_periods_plain_vector():
    ones = PeriodVector(F(1), F(1), F(1), F(1), F(1))
    assert discriminant(ones) == -58
    m = invert_periods(ones, 1)
    assert forward_periods(m) == ones
    assert m.a01 == 4


def test_invert_periods_degenerate_zero():
    with pytest.raises(DegenerateLocus):
        invert_periods(PeriodVector(F(0), F(0), F(0), F(0), F(0)), 1)


def test_invert_periods_degenerate_collision():
    # two distinct matrices share these periods; the locus detects that
    collision = PeriodVector(F(0), F(1), F(1), F(48, 55), F(4091, 4752))
    assert discriminant(collision) == 0
    with pytest.raises(DegenerateLocus):
        invert_periods(collision, 1)


def test_error_hierarchy():
    for exc in (
        ConsistencyCheckFailed,
        DegenerateLocus,
        NoRationalSolution,
        AmbiguousSolution,
    ):
        assert issubclass(exc, ArithmeticError)


small_fractions = st.fractions(min_value=-8, max_value=8, max_denominator=4)


@st.composite
def matrices(draw):
    return CountingMatrix(
        deg=1,
        a01=draw(small_fractions),
        a11=draw(small_fractions),
        a02=draw(small_fractions),
        a12=draw(small_fractions),
        a03=draw(small_fractions),
    )


@st.composite
def period_vectors(draw):
    return PeriodVector(*[draw(small_fractions) for _ in range(5)])


@settings(max_examples=60, deadline=None)
@given(matrices())
def test_period_map_roundtrip(matrix):
    periods = forward_periods(matrix)
    assume(discriminant(periods) != 0)
    assert invert_periods(periods, 1) == matrix


@settings(max_examples=60, deadline=None)
@given(period_vectors())
def test_eliminant_is_linear_with_discriminant_slope(v):
    assume(discriminant(v) != 0)
    p5, p6, _, _ = _substituted_system(v)
    q5, c5 = _linear_parts(p5)
    q6, c6 = _linear_parts(p6)
    u = _unipoly(c5 * q6 - c6 * q5, "a11")
    assert len(u) == 2
    assert u[1] * -81000 == discriminant(v)


def test_rational_roots_simple_cubic():
    assert rational_roots([F(-6), F(11), F(-6), F(1)]) == [1, 2, 3]


def test_rational_roots_with_multiplicity():
    assert rational_roots([F(0), F(0), F(2), F(-3), F(1)]) == [0, 1, 2]
    assert rational_roots([F(1), F(2), F(1)]) == [-1]


def test_rational_roots_none():
    assert rational_roots([F(2), F(0), F(1)]) == []
    assert rational_roots([F(5)]) == []


def test_rational_roots_noninteger():
    assert rational_roots([F(-15), F(1), F(6)]) == [F(-5, 3), F(3, 2)]


def test_rational_roots_large_height():
    r = F(1234567891, 9876543211)
    # (x - r)(x - 1) expanded
    poly = [r, -(r + 1), F(1)]
    assert rational_roots(poly) == [r, 1]


def test_rational_roots_rejects_zero_polynomial():
    with pytest.raises(ValueError):
        rational_roots([F(0), F(0)])


@settings(max_examples=40, deadline=None)
@given(st.lists(st.fractions(min_value=-6, max_value=6, max_denominator=3), min_size=1, max_size=4))
def test_rational_roots_finds_planted_roots(roots):
    poly = [F(1)]
    for r in roots:
        poly = [F(0)] + poly
        for i in range(len(poly) - 1):
            poly[i] -= r * poly[i + 1]
    found = rational_roots(poly)
    assert found == sorted(set(roots))

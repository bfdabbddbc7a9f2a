from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import golden
from fanocount.exactmath import PowerSeries
from fanocount.d3 import (
    DifferentialOperator,
    InvalidLevel,
    NotLeftDivisible,
    ObstructedRecursion,
    apply_operator,
    build_pencil,
    dt_power,
    eisenstein_e2,
    eisenstein_weight2,
    frobenius_solve,
    left_divide_by_D,
    modularity_report,
    right_determinant,
    weyl_multiply,
)
from fanocount.solver import CountingMatrix

F = Fraction
D = DifferentialOperator.euler()
T = DifferentialOperator.t()
ONE = DifferentialOperator.const(F(1))

M10 = CountingMatrix(deg=10, **golden.entry_values(golden.MATRIX_V10))
M14 = CountingMatrix(deg=14, **golden.entry_values(golden.MATRIX_V14))


def op_power(op, m):
    out = DifferentialOperator.const(F(1))
    for _ in range(m):
        out = out * op
    return out


def test_operator_validation():
    with pytest.raises(ValueError):
        DifferentialOperator({(-1, 0): F(1)})
    with pytest.raises(ValueError):
        DifferentialOperator({(0, -2): F(1)})
    assert DifferentialOperator({(1, 1): F(0)}).is_zero()


def test_weyl_commutation_rule():
    # D t = t D + t
    assert D * T == T * D + T


def test_weyl_power_rule():
    # D^2 t^3 = t^3 (D + 3)^2
    lhs = D * D * (T * T * T)
    shift = D + DifferentialOperator.const(F(3))
    rhs = T * T * T * (shift * shift)
    assert lhs == rhs


def test_dt_power_closed_form():
    assert dt_power(0) == ONE
    assert dt_power(1) == T * D + T
    assert dt_power(2) == DifferentialOperator(
        {(2, 0): F(2), (2, 1): F(3), (2, 2): F(1)}
    )
    base = D * T
    for m in range(7):
        assert dt_power(m) == op_power(base, m)


def test_operator_str():
    op = D * D * D - T.scale(F(4)) - (T * D).scale(F(21))
    assert str(op) == "D^3 - 4*t - 21*t*D"


small_ops = st.builds(
    DifferentialOperator,
    st.dictionaries(
        st.tuples(st.integers(0, 2), st.integers(0, 2)),
        st.fractions(min_value=-5, max_value=5, max_denominator=3),
        max_size=3,
    ),
)


@settings(max_examples=60, deadline=None)
@given(small_ops, small_ops, small_ops)
def test_weyl_multiplication_is_associative_and_distributive(a, b, c):
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert weyl_multiply(a, b) == a * b


def test_right_determinant_two_by_two():
    c = F(3)
    pencil = ((D, dt_power(1).scale(-c)), (DifferentialOperator.const(F(-1)), D))
    expected = D * D - (T * D + T).scale(c)
    assert right_determinant(pencil) == expected


def test_right_determinant_rejects_nonsquare():
    with pytest.raises(ValueError):
        right_determinant(((D, D),))


def classical_det(rows):
    if len(rows) == 1:
        return rows[0][0]
    total = F(0)
    for j, pivot in enumerate(rows[0]):
        minor = tuple(r[:j] + r[j + 1 :] for r in rows[1:])
        total += (-1) ** j * pivot * classical_det(minor)
    return total


@settings(max_examples=60, deadline=None)
@given(
    st.lists(
        st.lists(st.fractions(min_value=-4, max_value=4, max_denominator=3), min_size=3, max_size=3),
        min_size=3,
        max_size=3,
    )
)
def test_right_determinant_matches_commutative_case(rows):
    pencil = tuple(
        tuple(DifferentialOperator.const(c) for c in row) for row in rows
    )
    expected = classical_det(tuple(tuple(row) for row in rows))
    assert right_determinant(pencil) == DifferentialOperator.const(expected)


def test_pencil_layout():
    pencil = build_pencil(M10, F(0))
    assert pencil[0][0] == D
    assert pencil[1][0] == DifferentialOperator.const(F(-1))
    assert pencil[2][0].is_zero()
    assert pencil[0][1] == dt_power(2).scale(F(-156))
    assert pencil[3][3] == D


def test_pencil_shift_sits_on_diagonal():
    lam = F(7)
    plain = build_pencil(M10, F(0))
    shifted = build_pencil(M10, lam)
    for k in range(4):
        for l in range(4):
            if k == l:
                assert shifted[k][l] == plain[k][l] - dt_power(1).scale(lam)
            else:
                assert shifted[k][l] == plain[k][l]


def test_left_divide_roundtrip():
    x = T * D * D + T.scale(F(5)) * D + DifferentialOperator.const(F(2))
    assert left_divide_by_D(D * x) == x


def test_left_divide_rejects_bare_t():
    with pytest.raises(NotLeftDivisible):
        left_divide_by_D(T)


def test_apply_operator_euler_scales_exponents():
    s = PowerSeries((F(1), F(1), F(1), F(1)))
    assert apply_operator(D, s).coeffs == (F(0), F(1), F(2), F(3))
    assert apply_operator(T, s).coeffs == (F(0), F(1), F(1), F(1))


def test_frobenius_trivial_and_geometric():
    assert frobenius_solve(D * D * D, 4).coeffs == (F(1), F(0), F(0), F(0))
    shift3 = op_power(D + ONE, 3)
    geometric = frobenius_solve(D * D * D - T * shift3, 5)
    assert geometric.coeffs == (F(1),) * 5


def test_frobenius_obstructions():
    with pytest.raises(ObstructedRecursion):
        frobenius_solve(D * D * D - ONE, 5)
    with pytest.raises(ObstructedRecursion):
        frobenius_solve(D * D * D - D * D, 5)
    with pytest.raises(ValueError):
        frobenius_solve(D * D * D, 0)


@pytest.mark.parametrize(
    "matrix,alpha",
    [(M10, golden.ALPHA["V10"]), (M14, golden.ALPHA["V14"])],
    ids=["deg10", "deg14"],
)
def test_operator_structure(matrix, alpha):
    for lam in (F(0), alpha, -alpha):
        det = right_determinant(build_pencil(matrix, lam))
        assert det.order == 4
        assert det.indicial() == [F(0)] * 4 + [F(1)]
        reduced = left_divide_by_D(det)
        assert reduced.order == 3
        assert reduced.indicial() == [F(0)] * 3 + [F(1)]
        solution = frobenius_solve(reduced, 8)
        assert apply_operator(reduced, solution).coeffs == (F(0),) * 8


def test_frobenius_solution_is_factorial_transform_of_series():
    import math

    reduced = left_divide_by_D(right_determinant(build_pencil(M10, F(0))))
    solution = frobenius_solve(reduced, 7)
    expected = tuple(
        F(math.factorial(m)) * c for m, c in enumerate(golden.SERIES_V10_C0)
    )
    assert solution.coeffs == expected


def test_eisenstein_e2_expansion():
    assert eisenstein_e2(5).coeffs == (F(1), F(-24), F(-72), F(-96), F(-168))


def test_eisenstein_weight2_expansions():
    assert eisenstein_weight2(5, 9).coeffs == (
        F(1), F(6), F(18), F(24), F(42), F(6), F(72), F(48), F(90),
    )
    assert eisenstein_weight2(7, 9).coeffs == (
        F(1), F(4), F(12), F(16), F(28), F(24), F(48), F(4), F(60),
    )


def test_eisenstein_weight2_divisor_sum_oracle():
    # [q^m] = 24 (sigma_1(m) - N sigma_1(m/N)) / (N - 1), second term
    # present only when N divides m
    for level in (5, 7):
        series = eisenstein_weight2(level, 9)
        for m in range(1, 9):
            s1 = sum(d for d in range(1, m + 1) if m % d == 0)
            s2 = sum(d for d in range(1, m // level + 1) if m % (level * d) == 0)
            expected = F(24 * (s1 - level * s2), level - 1)
            assert series[m] == expected


def test_eisenstein_invalid_levels():
    with pytest.raises(InvalidLevel):
        eisenstein_weight2(1, 5)
    with pytest.raises(InvalidLevel):
        eisenstein_weight2(F(5, 2), 5)


def test_modularity_report_shape_and_matches():
    rep = modularity_report(M10, golden.ALPHA["V10"])
    assert (rep.deg, rep.level, rep.alpha, rep.order) == (10, 5, F(6), 8)
    assert len(rep.rows) == 12
    assert all(r.error is None for r in rep.rows)
    assert rep.row(F(0), "factorial_transform").first_mismatch is None
    assert rep.row(F(6), "factorial_transform_twist_plus").first_mismatch is None
    assert rep.row(F(-6), "factorial_transform_twist_minus").first_mismatch is None
    # the shifted solution agrees with the Eisenstein series at q^1 only
    assert rep.row(F(6), "eisenstein").first_mismatch == 2
    assert rep.row(F(0), "eisenstein").first_mismatch == 1


def test_modularity_report_deg14_level():
    rep = modularity_report(M14, golden.ALPHA["V14"])
    assert rep.level == 7
    assert rep.row(F(4), "eisenstein").first_mismatch == 2


def test_modularity_report_is_deterministic():
    a = modularity_report(M10, golden.ALPHA["V10"])
    b = modularity_report(M10, golden.ALPHA["V10"])
    assert a == b


def test_modularity_report_rejects_odd_degree():
    odd = CountingMatrix(deg=9, a01=F(1), a11=F(1), a02=F(1), a12=F(1), a03=F(1))
    with pytest.raises(InvalidLevel):
        modularity_report(odd, F(0))

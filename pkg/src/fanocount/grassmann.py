"""I-series of Grassmannians G(r, n) from the residue sum over Chern roots.

The degree-d part of the series is

    (-1)^((r-1)d) * sum_{d_1+..+d_r=d}
        prod_{i<j} (x_i + d_i - x_j - d_j)
        / ( prod_{i<j} (x_i - x_j) * prod_i prod_{l=1}^{d_i} (x_i + l)^n )

expanded as a truncated polynomial in the Chern roots x_1..x_r.  Each factor
(x_i + l)^(-n) with l >= 1 is an honest power series, l^(-n) (1 + x_i/l)^(-n),
so the whole degree part is exact; the Vandermonde division is performed last
and must be exact as well.  The cohomology of the ambient space is only needed
modulo H^2 downstream, where H = x_1 + .. + x_r, so `extract_h_pair` collapses
each degree part to the pair (constant term, coefficient of any single x_i).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb, factorial

from .exactmath import (
    ChernPolynomial,
    PowerSeries,
    divide_by_vandermonde,
    univariate_factor,
)

_ZERO = Fraction(0)
_ONE = Fraction(1)


class AsymmetricSeries(ArithmeticError):
    """A degree part failed the x_1..x_r symmetry check."""


@dataclass(frozen=True)
class GrassmannianSpec:
    """G(r, n): r-planes in an n-dimensional space."""

    r: int
    n: int

    def __post_init__(self) -> None:
        if not 1 <= self.r < self.n:
            raise ValueError(f"need 1 <= r < n, got r={self.r}, n={self.n}")


@dataclass(frozen=True)
class GeometryInfo:
    dimension: int
    fano_index: int
    plucker_degree: int


@dataclass(frozen=True)
class HSeriesPair:
    """A cohomology-valued series mod H^2: c0 + c1*H per q-degree."""

    c0: PowerSeries
    c1: PowerSeries

    def __post_init__(self) -> None:
        if self.c0.order != self.c1.order:
            raise ValueError("c0 and c1 must share a truncation order")

    @property
    def order(self) -> int:
        return self.c0.order


def grassmannian_geometry(spec: GrassmannianSpec) -> GeometryInfo:
    """Dimension, Fano index, and Plucker degree of G(r, n)."""
    r, n = spec.r, spec.n
    dim = r * (n - r)
    deg = Fraction(factorial(dim))
    for i in range(r):
        deg *= Fraction(factorial(i), factorial(n - r + i))
    if deg.denominator != 1 or deg < 1:
        raise ArithmeticError(f"degree of G({r},{n}) computed as non-integer {deg}")
    return GeometryInfo(dimension=dim, fano_index=n, plucker_degree=int(deg))


def harmonic(m: int) -> Fraction:
    """m-th harmonic number, with harmonic(0) = 0."""
    return sum((Fraction(1, i) for i in range(1, m + 1)), _ZERO)


def _compositions(total: int, parts: int):
    if parts == 1:
        yield (total,)
        return
    for head in range(total + 1):
        for tail in _compositions(total - head, parts - 1):
            yield (head,) + tail


def _inverse_power_factor(nvars: int, bound: int, i: int, l: int, n: int) -> ChernPolynomial:
    """(x_i + l)^(-n) for l >= 1 as a series in x_i, truncated at degree bound."""
    base = Fraction(1, l**n)
    coeffs = [base * comb(n + m - 1, m) * Fraction((-1) ** m, l**m) for m in range(bound + 1)]
    return univariate_factor(nvars, bound, i, coeffs)


def hv_degree_part(spec: GrassmannianSpec, d: int, target_degree: int) -> ChernPolynomial:
    """Degree-d part of the G(r, n) I-series, truncated at total degree target_degree."""
    r, n = spec.r, spec.n
    if r < 2:
        raise ValueError("the residue sum needs r >= 2; use projective_iseries for r = 1")
    if d < 0 or target_degree < 0:
        raise ValueError("degree arguments must be nonnegative")
    v = r * (r - 1) // 2
    bound = target_degree + v
    total = ChernPolynomial.zero(r, bound)
    for comp in _compositions(d, r):
        part = ChernPolynomial.constant(r, bound, _ONE)
        for i in range(r):
            for j in range(i + 1, r):
                xi = ChernPolynomial.variable(r, bound, i)
                xj = ChernPolynomial.variable(r, bound, j)
                shift = ChernPolynomial.constant(r, bound, Fraction(comp[i] - comp[j]))
                part = part * (xi - xj + shift)
        for i in range(r):
            for l in range(1, comp[i] + 1):
                part = part * _inverse_power_factor(r, bound, i, l, n)
        total = total + part
    quotient = divide_by_vandermonde(total)
    sign = Fraction((-1) ** ((r - 1) * d))
    return quotient.scale(sign)


def hv_iseries(spec: GrassmannianSpec, d_max: int, target_degree: int = 2) -> list[ChernPolynomial]:
    """Degree parts d = 0..d_max of the G(r, n) I-series."""
    return [hv_degree_part(spec, d, target_degree) for d in range(d_max + 1)]


def closed_form_constant(n: int, d: int) -> Fraction:
    """Constant term of the degree-d part for G(2, n), in closed form.

    (1/(d!)^n) * ((-1)^d / 2) * sum_{m=0}^{d} C(d,m)^n
        * ( n*(d-2m)*(harmonic(m) - harmonic(d-m)) + 2 )
    """
    if d < 0:
        raise ValueError("degree must be nonnegative")
    if d == 0:
        return _ONE
    acc = _ZERO
    for m in range(d + 1):
        acc += Fraction(comb(d, m)) ** n * (
            n * (d - 2 * m) * (harmonic(m) - harmonic(d - m)) + 2
        )
    return Fraction((-1) ** d, 2) * acc / Fraction(factorial(d)) ** n


def projective_iseries(n: int, d_max: int) -> HSeriesPair:
    """I-series of P^(n-1) mod H^2: sum_d q^d prod_{i=1}^{d} (H + i)^(-n)."""
    if n < 2:
        raise ValueError("projective space needs n >= 2")
    c0 = [Fraction(1)]
    c1 = [Fraction(0)]
    for d in range(1, d_max + 1):
        base = Fraction(1, factorial(d) ** n)
        c0.append(base)
        c1.append(-n * harmonic(d) * base)
    return HSeriesPair(PowerSeries(tuple(c0)), PowerSeries(tuple(c1)))


def extract_h_pair(parts: list[ChernPolynomial]) -> HSeriesPair:
    """Collapse degree parts to (constant, H^1) coefficients.

    The coefficient of H in a symmetric polynomial equals the coefficient of
    any single x_i; all r linear coefficients must agree, otherwise the input
    was not symmetric and AsymmetricSeries is raised.
    """
    c0 = []
    c1 = []
    for d, part in enumerate(parts):
        lin = [part.linear_coefficient(i) for i in range(part.nvars)]
        if any(l != lin[0] for l in lin[1:]):
            raise AsymmetricSeries(
                f"degree-{d} part has unequal linear coefficients {lin}"
            )
        c0.append(part.constant_term())
        c1.append(lin[0])
    return HSeriesPair(PowerSeries(tuple(c0)), PowerSeries(tuple(c1)))

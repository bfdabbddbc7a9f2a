"""Exact arithmetic kernel: rationals, truncated power series, sparse polynomials.

Every scalar in this package is a `fractions.Fraction`; nothing here ever
touches floating point.  Three containers cover all downstream needs:

* ``PowerSeries`` -- a q-series truncated at an explicit order,
* ``ChernPolynomial`` -- a multivariate polynomial truncated in total degree,
  used for expansions in Chern roots x_1..x_r,
* ``EntryPolynomial`` -- a sparse polynomial in the five independent
  counting-matrix entries a01, a11, a02, a12, a03.

Truncation orders are explicit everywhere: arithmetic never reports a
coefficient at or beyond the truncation bound of its inputs.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations
from math import factorial
from typing import Iterable, Iterator, Mapping

Rational = Fraction

_ZERO = Fraction(0)
_ONE = Fraction(1)


class DivisionByZero(ZeroDivisionError):
    """Rational division with a zero divisor."""


class NonExactDivision(ArithmeticError):
    """Exact polynomial division hit a nonzero remainder."""


def rational_arith(op: str, x: Rational, y: Rational) -> Rational:
    """Dispatch exact rational arithmetic.  Results are always canonical."""
    x, y = Fraction(x), Fraction(y)
    if op == "add":
        return x + y
    if op == "sub":
        return x - y
    if op == "mul":
        return x * y
    if op == "div":
        if y == 0:
            raise DivisionByZero("division by zero")
        return x / y
    raise ValueError(f"unknown operation {op!r}")


# ---------------------------------------------------------------------------
# truncated power series
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class PowerSeries:
    """A power series sum_d c_d q^d known through q^(order-1)."""

    coeffs: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "coeffs", tuple(Fraction(c) for c in self.coeffs))
        if not self.coeffs:
            raise ValueError("a power series needs at least one coefficient")

    @property
    def order(self) -> int:
        return len(self.coeffs)

    @classmethod
    def from_coeffs(cls, coeffs: Iterable, order: int | None = None) -> "PowerSeries":
        cs = [Fraction(c) for c in coeffs]
        if order is not None:
            cs = cs[:order] + [_ZERO] * (order - len(cs))
        return cls(tuple(cs))

    @classmethod
    def zero(cls, order: int) -> "PowerSeries":
        return cls((_ZERO,) * order)

    @classmethod
    def one(cls, order: int) -> "PowerSeries":
        return cls((_ONE,) + (_ZERO,) * (order - 1))

    def __getitem__(self, d: int) -> Fraction:
        if not 0 <= d < self.order:
            raise IndexError(
                f"coefficient of q^{d} is outside truncation order {self.order}"
            )
        return self.coeffs[d]

    def truncate(self, order: int) -> "PowerSeries":
        if order > self.order:
            raise ValueError("cannot extend a truncated series")
        return PowerSeries(self.coeffs[:order])

    def __add__(self, other: "PowerSeries") -> "PowerSeries":
        n = min(self.order, other.order)
        return PowerSeries(tuple(self.coeffs[d] + other.coeffs[d] for d in range(n)))

    def __sub__(self, other: "PowerSeries") -> "PowerSeries":
        n = min(self.order, other.order)
        return PowerSeries(tuple(self.coeffs[d] - other.coeffs[d] for d in range(n)))

    def __neg__(self) -> "PowerSeries":
        return PowerSeries(tuple(-c for c in self.coeffs))

    def __mul__(self, other):
        if isinstance(other, PowerSeries):
            n = min(self.order, other.order)
            out = [_ZERO] * n
            for i, a in enumerate(self.coeffs[:n]):
                if a == 0:
                    continue
                for j in range(n - i):
                    b = other.coeffs[j]
                    if b:
                        out[i + j] += a * b
            return PowerSeries(tuple(out))
        return self.scale(Fraction(other))

    def __rmul__(self, other) -> "PowerSeries":
        return self.scale(Fraction(other))

    def scale(self, c: Rational) -> "PowerSeries":
        c = Fraction(c)
        return PowerSeries(tuple(c * a for a in self.coeffs))


def series_combine(op: str, a: PowerSeries, b: PowerSeries) -> PowerSeries:
    """Combine two series; the result carries the smaller truncation order."""
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    raise ValueError(f"unknown operation {op!r}")


def exp_linear(c: Rational, order: int) -> PowerSeries:
    """exp(c*q) as a truncated series: sum_m c^m/m! q^m."""
    c = Fraction(c)
    return PowerSeries(tuple(c**m / factorial(m) for m in range(order)))


# ---------------------------------------------------------------------------
# multivariate polynomials truncated in total degree (Chern-root expansions)
# ---------------------------------------------------------------------------

Exponent = tuple[int, ...]


def _clean_terms(terms: Mapping[Exponent, Fraction], bound: int) -> dict[Exponent, Fraction]:
    out: dict[Exponent, Fraction] = {}
    for e, c in terms.items():
        c = Fraction(c)
        if c == 0 or sum(e) > bound:
            continue
        out[tuple(e)] = c
    return out


@dataclass
class ChernPolynomial:
    """Sparse polynomial in x_1..x_nvars, truncated at total degree degree_bound.

    Terms of total degree above the bound are unknown, not zero; they are
    dropped on construction and never produced by arithmetic.
    """

    nvars: int
    degree_bound: int
    terms: dict[Exponent, Fraction]

    def __post_init__(self) -> None:
        if self.nvars < 1:
            raise ValueError("need at least one variable")
        if self.degree_bound < 0:
            raise ValueError("degree bound must be nonnegative")
        for e in self.terms:
            if len(e) != self.nvars:
                raise ValueError("exponent arity mismatch")
        self.terms = _clean_terms(self.terms, self.degree_bound)

    @classmethod
    def constant(cls, nvars: int, bound: int, value: Rational) -> "ChernPolynomial":
        e = (0,) * nvars
        return cls(nvars, bound, {e: Fraction(value)})

    @classmethod
    def variable(cls, nvars: int, bound: int, i: int) -> "ChernPolynomial":
        e = tuple(1 if k == i else 0 for k in range(nvars))
        return cls(nvars, bound, {e: _ONE})

    @classmethod
    def zero(cls, nvars: int, bound: int) -> "ChernPolynomial":
        return cls(nvars, bound, {})

    def is_zero(self) -> bool:
        return not self.terms

    def coefficient(self, exps: Exponent) -> Fraction:
        return self.terms.get(tuple(exps), _ZERO)

    def constant_term(self) -> Fraction:
        return self.coefficient((0,) * self.nvars)

    def linear_coefficient(self, i: int) -> Fraction:
        e = tuple(1 if k == i else 0 for k in range(self.nvars))
        return self.coefficient(e)

    def truncate(self, bound: int) -> "ChernPolynomial":
        if bound > self.degree_bound:
            raise ValueError("cannot extend a truncated polynomial")
        return ChernPolynomial(self.nvars, bound, dict(self.terms))

    def homogeneous_component(self, k: int) -> dict[Exponent, Fraction]:
        return {e: c for e, c in self.terms.items() if sum(e) == k}

    def __add__(self, other: "ChernPolynomial") -> "ChernPolynomial":
        self._check(other)
        bound = min(self.degree_bound, other.degree_bound)
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, _ZERO) + c
        return ChernPolynomial(self.nvars, bound, out)

    def __sub__(self, other: "ChernPolynomial") -> "ChernPolynomial":
        return self + other.scale(-_ONE)

    def __neg__(self) -> "ChernPolynomial":
        return self.scale(-_ONE)

    def __mul__(self, other):
        if not isinstance(other, ChernPolynomial):
            return self.scale(Fraction(other))
        self._check(other)
        bound = min(self.degree_bound, other.degree_bound)
        out: dict[Exponent, Fraction] = {}
        for e1, c1 in self.terms.items():
            d1 = sum(e1)
            for e2, c2 in other.terms.items():
                if d1 + sum(e2) > bound:
                    continue
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, _ZERO) + c1 * c2
        return ChernPolynomial(self.nvars, bound, out)

    def __rmul__(self, other) -> "ChernPolynomial":
        return self.scale(Fraction(other))

    def scale(self, c: Rational) -> "ChernPolynomial":
        c = Fraction(c)
        return ChernPolynomial(
            self.nvars, self.degree_bound, {e: c * v for e, v in self.terms.items()}
        )

    def is_symmetric(self) -> bool:
        """True when every permutation of the variables fixes the polynomial."""
        for perm in permutations(range(self.nvars)):
            for e, c in self.terms.items():
                pe = tuple(e[perm[k]] for k in range(self.nvars))
                if self.terms.get(pe, _ZERO) != c:
                    return False
        return True

    def _check(self, other: "ChernPolynomial") -> None:
        if self.nvars != other.nvars:
            raise ValueError("variable count mismatch")

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        bits = []
        for e in sorted(self.terms, key=lambda ex: (sum(ex), ex)):
            c = self.terms[e]
            mono = "*".join(
                f"x{i + 1}" + (f"^{p}" if p > 1 else "")
                for i, p in enumerate(e)
                if p > 0
            )
            bits.append(f"{c}" + (f"*{mono}" if mono else ""))
        return " + ".join(bits)


def univariate_factor(nvars: int, bound: int, i: int, coeffs: Iterable[Rational]) -> ChernPolynomial:
    """Build sum_m c_m x_i^m as a ChernPolynomial (a series in one Chern root)."""
    terms: dict[Exponent, Fraction] = {}
    for m, c in enumerate(coeffs):
        if m > bound:
            break
        c = Fraction(c)
        if c == 0:
            continue
        e = tuple(m if k == i else 0 for k in range(nvars))
        terms[e] = c
    return ChernPolynomial(nvars, bound, terms)


def vandermonde(nvars: int, bound: int) -> ChernPolynomial:
    """prod_{i<j} (x_i - x_j)."""
    out = ChernPolynomial.constant(nvars, bound, _ONE)
    for i in range(nvars):
        for j in range(i + 1, nvars):
            xi = ChernPolynomial.variable(nvars, bound, i)
            xj = ChernPolynomial.variable(nvars, bound, j)
            out = out * (xi - xj)
    return out


def _divide_linear_difference(
    terms: dict[Exponent, Fraction], i: int, j: int
) -> tuple[dict[Exponent, Fraction], dict[Exponent, Fraction]]:
    """Divide sum c_e x^e by (x_i - x_j); return (quotient, remainder).

    Standard division with leading monomial x_i: each step cancels the term
    of highest x_i-exponent, so the loop terminates because the total
    x_i-weight of the working polynomial strictly decreases.
    """
    work = dict(terms)
    quotient: dict[Exponent, Fraction] = {}
    while True:
        cand = [e for e in work if e[i] > 0]
        if not cand:
            break
        e = max(cand, key=lambda ex: (ex[i], ex))
        c = work.pop(e)
        qe = list(e)
        qe[i] -= 1
        qe_t = tuple(qe)
        quotient[qe_t] = quotient.get(qe_t, _ZERO) + c
        je = list(qe)
        je[j] += 1
        je_t = tuple(je)
        new = work.get(je_t, _ZERO) + c
        if new == 0:
            work.pop(je_t, None)
        else:
            work[je_t] = new
    return quotient, work


def divide_by_vandermonde(poly: ChernPolynomial) -> ChernPolynomial:
    """Exact division by prod_{i<j}(x_i - x_j) of a truncated polynomial.

    The divisor is homogeneous of degree v = nvars*(nvars-1)/2, so the
    quotient is reliable only through total degree degree_bound - v; division
    is performed per homogeneous component, which must each divide exactly.
    Raises NonExactDivision when any remainder survives (in particular for
    any input that is not antisymmetric).
    """
    r = poly.nvars
    v = r * (r - 1) // 2
    if poly.degree_bound < v:
        raise NonExactDivision(
            f"degree bound {poly.degree_bound} below Vandermonde degree {v}"
        )
    out_bound = poly.degree_bound - v
    out: dict[Exponent, Fraction] = {}
    for k in range(poly.degree_bound + 1):
        comp = poly.homogeneous_component(k)
        if not comp:
            continue
        if k < v:
            raise NonExactDivision(
                f"component of degree {k} cannot be divisible by degree-{v} Vandermonde"
            )
        for i in range(r):
            for j in range(i + 1, r):
                comp, rem = _divide_linear_difference(comp, i, j)
                if rem:
                    raise NonExactDivision(
                        f"nonzero remainder dividing degree-{k} component by (x{i + 1} - x{j + 1})"
                    )
        out.update(comp)
    return ChernPolynomial(r, out_bound, out)


# ---------------------------------------------------------------------------
# polynomials in the independent counting-matrix entries
# ---------------------------------------------------------------------------

ENTRY_VARS: tuple[str, ...] = ("a01", "a11", "a02", "a12", "a03")
_VAR_INDEX = {name: k for k, name in enumerate(ENTRY_VARS)}
_NV = len(ENTRY_VARS)


@dataclass
class EntryPolynomial:
    """Sparse exact polynomial in the entries a01, a11, a02, a12, a03."""

    terms: dict[tuple[int, ...], Fraction]

    def __post_init__(self) -> None:
        out: dict[tuple[int, ...], Fraction] = {}
        for e, c in self.terms.items():
            if len(e) != _NV:
                raise ValueError("exponent arity mismatch")
            c = Fraction(c)
            if c != 0:
                out[tuple(e)] = c
        self.terms = out

    @classmethod
    def zero(cls) -> "EntryPolynomial":
        return cls({})

    @classmethod
    def const(cls, value: Rational) -> "EntryPolynomial":
        return cls({(0,) * _NV: Fraction(value)})

    @classmethod
    def variable(cls, name: str) -> "EntryPolynomial":
        e = [0] * _NV
        e[_VAR_INDEX[name]] = 1
        return cls({tuple(e): _ONE})

    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other: "EntryPolynomial") -> "EntryPolynomial":
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, _ZERO) + c
        return EntryPolynomial(out)

    def __sub__(self, other: "EntryPolynomial") -> "EntryPolynomial":
        return self + other.scale(-_ONE)

    def __neg__(self) -> "EntryPolynomial":
        return self.scale(-_ONE)

    def __mul__(self, other):
        if not isinstance(other, EntryPolynomial):
            return self.scale(Fraction(other))
        out: dict[tuple[int, ...], Fraction] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, _ZERO) + c1 * c2
        return EntryPolynomial(out)

    def __rmul__(self, other) -> "EntryPolynomial":
        return self.scale(Fraction(other))

    def scale(self, c: Rational) -> "EntryPolynomial":
        c = Fraction(c)
        return EntryPolynomial({e: c * v for e, v in self.terms.items()})

    def coefficient(self, exps: tuple[int, ...]) -> Fraction:
        return self.terms.get(tuple(exps), _ZERO)

    def evaluate(self, values: Mapping[str, Rational]) -> Fraction:
        vals = [Fraction(values[name]) for name in ENTRY_VARS]
        total = _ZERO
        for e, c in self.terms.items():
            prod = c
            for k, p in enumerate(e):
                if p:
                    prod *= vals[k] ** p
            total += prod
        return total

    def variables(self) -> set[str]:
        present: set[str] = set()
        for e in self.terms:
            for k, p in enumerate(e):
                if p:
                    present.add(ENTRY_VARS[k])
        return present

    def degree_in(self, name: str) -> int:
        k = _VAR_INDEX[name]
        return max((e[k] for e in self.terms), default=0)

    def coefficients_in(self, name: str) -> list["EntryPolynomial"]:
        """Coefficients of name^0, name^1, ... with the variable removed."""
        k = _VAR_INDEX[name]
        top = self.degree_in(name)
        buckets: list[dict[tuple[int, ...], Fraction]] = [{} for _ in range(top + 1)]
        for e, c in self.terms.items():
            reduced = list(e)
            p = reduced[k]
            reduced[k] = 0
            buckets[p][tuple(reduced)] = buckets[p].get(tuple(reduced), _ZERO) + c
        return [EntryPolynomial(b) for b in buckets]

    def substitute(self, name: str, replacement: "EntryPolynomial") -> "EntryPolynomial":
        coeffs = self.coefficients_in(name)
        out = EntryPolynomial.zero()
        power = EntryPolynomial.const(_ONE)
        for p, coeff in enumerate(coeffs):
            if p > 0:
                power = power * replacement
            if not coeff.is_zero():
                out = out + coeff * power
        return out

    def monomials(self) -> Iterator[tuple[tuple[int, ...], Fraction]]:
        for e in sorted(self.terms, key=lambda ex: (sum(ex), ex)):
            yield e, self.terms[e]

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        bits = []
        for e, c in self.monomials():
            mono = "*".join(
                ENTRY_VARS[k] + (f"^{p}" if p > 1 else "")
                for k, p in enumerate(e)
                if p > 0
            )
            bits.append(f"{c}" + (f"*{mono}" if mono else ""))
        return " + ".join(bits)

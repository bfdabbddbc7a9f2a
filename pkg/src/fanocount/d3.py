"""Noncommutative operator pencils, their right determinants, and the
Eisenstein comparison for the resulting third-order equations.

Operators live in the ring of polynomials in t and D, where D is the Euler
operator t d/dt, subject to D*t = t*D + t.  Canonical form keeps every power
of t to the left of every power of D, so a term is coded by the pair
(t power, D power).

From a counting matrix A and a shift lam the pencil is the 4x4 matrix
D*E - M, where M has entries (a_kl + lam*delta_kl) * (Dt)^(l-k+1) on and
above the subdiagonal, (Dt) being multiply-by-t followed by D.  Its
determinant is taken with respect to the rightmost column, minors expanded
the same way and multiplied on the right by the column entry.  Dividing the
determinant by D on the left leaves a third-order operator whose normalized
power-series solution is produced by the Frobenius recursion and compared,
coefficient by coefficient, with a small list of candidate q-expansions
built from a weight-2 Eisenstein series and from the factorial transform of
the variety's constant-term series.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import comb, factorial

from .exactmath import PowerSeries, Rational, exp_linear
from .relations import RelationEngine

_ZERO = Fraction(0)
_ONE = Fraction(1)


class NotLeftDivisible(ArithmeticError):
    """Left division by D has a nonzero remainder."""


class ObstructedRecursion(ArithmeticError):
    """The indicial polynomial blocks the Frobenius recursion."""


class InvalidLevel(ValueError):
    """Eisenstein level must be an integer of at least 2."""


@dataclass(frozen=True)
class DifferentialOperator:
    """Sum of terms c * t^b * D^i stored as {(b, i): c}."""

    terms: dict[tuple[int, int], Fraction] = field(default_factory=dict)

    def __post_init__(self) -> None:
        clean = {}
        for (b, i), c in self.terms.items():
            c = Fraction(c)
            if b < 0 or i < 0:
                raise ValueError("term exponents must be nonnegative")
            if c != 0:
                clean[(int(b), int(i))] = c
        object.__setattr__(self, "terms", clean)

    @classmethod
    def zero(cls) -> "DifferentialOperator":
        return cls({})

    @classmethod
    def const(cls, c: Rational) -> "DifferentialOperator":
        return cls({(0, 0): Fraction(c)})

    @classmethod
    def euler(cls) -> "DifferentialOperator":
        """The operator D = t d/dt."""
        return cls({(0, 1): _ONE})

    @classmethod
    def t(cls) -> "DifferentialOperator":
        return cls({(1, 0): _ONE})

    def is_zero(self) -> bool:
        return not self.terms

    @property
    def order(self) -> int:
        return max((i for _, i in self.terms), default=0)

    @property
    def t_degree(self) -> int:
        return max((b for b, _ in self.terms), default=0)

    def __add__(self, other: "DifferentialOperator") -> "DifferentialOperator":
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, _ZERO) + c
        return DifferentialOperator(out)

    def __sub__(self, other: "DifferentialOperator") -> "DifferentialOperator":
        return self + other.scale(-1)

    def __neg__(self) -> "DifferentialOperator":
        return self.scale(-1)

    def scale(self, c: Rational) -> "DifferentialOperator":
        c = Fraction(c)
        return DifferentialOperator({e: c * v for e, v in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, DifferentialOperator):
            return weyl_multiply(self, other)
        return self.scale(Fraction(other))

    def __rmul__(self, other) -> "DifferentialOperator":
        return self.scale(Fraction(other))

    def t_coefficients(self, b: int) -> list[Fraction]:
        """D-power coefficient list of the t^b part."""
        top = max((i for bb, i in self.terms if bb == b), default=-1)
        out = [_ZERO] * (top + 1)
        for (bb, i), c in self.terms.items():
            if bb == b:
                out[i] = c
        return out

    def indicial(self) -> list[Fraction]:
        """The t-free part as a polynomial in the symbol of D."""
        return self.t_coefficients(0)

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for (b, i) in sorted(self.terms, key=lambda e: (e[0], e[1])):
            c = self.terms[(b, i)]
            word = "*".join(
                ([f"t^{b}" if b > 1 else "t"] if b else [])
                + ([f"D^{i}" if i > 1 else "D"] if i else [])
            )
            if not word:
                parts.append(str(c))
            elif c == 1:
                parts.append(word)
            elif c == -1:
                parts.append(f"-{word}")
            else:
                parts.append(f"{c}*{word}")
        return " + ".join(parts).replace("+ -", "- ")


OperatorMatrix = tuple[tuple[DifferentialOperator, ...], ...]


def weyl_multiply(a: DifferentialOperator, b: DifferentialOperator) -> DifferentialOperator:
    """Product in canonical form, using D^a * t^b = t^b * (D + b)^a."""
    out: dict[tuple[int, int], Fraction] = {}
    for (b1, i1), c1 in a.terms.items():
        for (b2, i2), c2 in b.terms.items():
            c = c1 * c2
            for s in range(i1 + 1):
                coeff = c * comb(i1, s) * Fraction(b2) ** (i1 - s)
                key = (b1 + b2, s + i2)
                out[key] = out.get(key, _ZERO) + coeff
    return DifferentialOperator(out)


def dt_power(m: int) -> DifferentialOperator:
    """(Dt)^m where (Dt) means multiply by t, then apply D."""
    if m < 0:
        raise ValueError("negative power of (Dt)")
    acc = DifferentialOperator.const(1)
    step = DifferentialOperator({(1, 0): _ONE, (1, 1): _ONE})
    for _ in range(m):
        acc = weyl_multiply(acc, step)
    return acc


def build_pencil(matrix, lam: Rational) -> OperatorMatrix:
    """The 4x4 operator matrix D*E - M for the shifted counting matrix."""
    lam = Fraction(lam)
    rows = matrix.rows()
    size = len(rows)
    pencil = []
    for k in range(size):
        row = []
        for l in range(size):
            entry = DifferentialOperator.euler() if k == l else DifferentialOperator.zero()
            a = rows[k][l] + (lam if k == l else 0)
            power = l - k + 1
            if a != 0 and power >= 0:
                entry = entry - dt_power(power).scale(a)
            row.append(entry)
        pencil.append(tuple(row))
    return tuple(pencil)


def right_determinant(m: OperatorMatrix) -> DifferentialOperator:
    """Cofactor expansion along the rightmost column, minors on the left."""
    size = len(m)
    if any(len(row) != size for row in m):
        raise ValueError("determinant needs a square matrix")
    if size == 1:
        return m[0][0]
    last = size - 1
    total = DifferentialOperator.zero()
    for row in range(size):
        entry = m[row][last]
        if entry.is_zero():
            continue
        minor = tuple(
            tuple(m[r][c] for c in range(last)) for r in range(size) if r != row
        )
        term = weyl_multiply(right_determinant(minor), entry)
        if (row + last) % 2:
            term = -term
        total = total + term
    return total


def left_divide_by_D(op: DifferentialOperator) -> DifferentialOperator:
    """The operator L with op = D*L, when it exists.

    For each t power b, D * (t^b D^i) = t^b D^(i+1) + b t^b D^i, so the
    coefficients of the quotient peel off from the highest D power downward
    and the b = 0 layer must carry no constant term.
    """
    out: dict[tuple[int, int], Fraction] = {}
    for b in range(op.t_degree + 1):
        coeffs = op.t_coefficients(b)
        if not coeffs:
            continue
        quotient = [_ZERO] * len(coeffs)
        carry = _ZERO
        for i in range(len(coeffs) - 1, 0, -1):
            q = coeffs[i] - b * carry
            quotient[i - 1] = q
            carry = q
        remainder = coeffs[0] - b * carry
        if remainder != 0:
            raise NotLeftDivisible(
                f"remainder {remainder}*t^{b} is not left-divisible by D"
            )
        for i, c in enumerate(quotient):
            if c != 0:
                out[(b, i)] = c
    return DifferentialOperator(out)


def apply_operator(op: DifferentialOperator, series: PowerSeries) -> PowerSeries:
    """Apply the operator to a series in t, truncated at the series order."""
    n = series.order
    out = [_ZERO] * n
    for (b, i), c in op.terms.items():
        for m in range(n - b):
            v = series[m]
            if v:
                out[m + b] += c * v * Fraction(m) ** i
    return PowerSeries(tuple(out))


def frobenius_solve(op: DifferentialOperator, order: int) -> PowerSeries:
    """The unique series 1 + O(t) annihilated by the operator mod t^order.

    Writing the operator as sum_b t^b R_b(D), applying it to t^m turns R_b
    into the scalar R_b(m).  The t^0 layer P = R_0 is the indicial
    polynomial; P(0) must vanish for the normalization c_0 = 1 and P(m)
    must not vanish for 0 < m < order, otherwise the recursion
    P(m) c_m = -sum_b R_b(m - b) c_(m - b) cannot be carried out.
    """
    if order < 1:
        raise ValueError("order must be positive")
    layers = {b: op.t_coefficients(b) for b in range(op.t_degree + 1)}

    def layer_at(b: int, s: int) -> Fraction:
        acc = _ZERO
        for c in reversed(layers.get(b, [])):
            acc = acc * s + c
        return acc

    if layer_at(0, 0) != 0:
        raise ObstructedRecursion("the indicial polynomial does not vanish at 0")
    coeffs = [_ONE]
    for m in range(1, order):
        p = layer_at(0, m)
        if p == 0:
            raise ObstructedRecursion(f"the indicial polynomial vanishes at {m}")
        rhs = _ZERO
        for b in range(1, min(m, op.t_degree) + 1):
            rhs -= layer_at(b, m - b) * coeffs[m - b]
        coeffs.append(rhs / p)
    return PowerSeries(tuple(coeffs))


def _sigma1(m: int) -> int:
    return sum(d for d in range(1, m + 1) if m % d == 0)


def eisenstein_e2(order: int) -> PowerSeries:
    """E_2(q) = 1 - 24 sum sigma_1(m) q^m."""
    return PowerSeries(
        (_ONE,) + tuple(Fraction(-24 * _sigma1(m)) for m in range(1, order))
    )


def eisenstein_weight2(level: int, order: int) -> PowerSeries:
    """(N E_2(q^N) - E_2(q)) / (N - 1), normalized to 1 at q = 0."""
    if not isinstance(level, int) or level < 2:
        raise InvalidLevel(f"level must be an integer >= 2, got {level!r}")
    e2 = eisenstein_e2(order)
    coeffs = []
    for m in range(order):
        stretched = e2[m // level] if m % level == 0 else _ZERO
        coeffs.append(Fraction(level * stretched - e2[m], level - 1))
    return PowerSeries(tuple(coeffs))


@dataclass(frozen=True)
class ReportRow:
    lam: Fraction
    candidate: str
    first_mismatch: int | None
    error: str | None = None


@dataclass(frozen=True)
class ModularityReport:
    deg: int
    level: int
    alpha: Fraction
    order: int
    rows: tuple[ReportRow, ...]

    def row(self, lam: Rational, candidate: str) -> ReportRow:
        lam = Fraction(lam)
        for r in self.rows:
            if r.lam == lam and r.candidate == candidate:
                return r
        raise KeyError((lam, candidate))


def _first_mismatch(a: PowerSeries, b: PowerSeries) -> int | None:
    for m in range(min(a.order, b.order)):
        if a[m] != b[m]:
            return m
    return None


def _constant_terms(matrix, order: int, engine: RelationEngine) -> PowerSeries:
    values = matrix.entries()
    coeffs = [_ONE, _ZERO]
    for d in range(2, order):
        coeffs.append(engine.one_point_relation(d - 2, d).evaluate(values))
    return PowerSeries(tuple(coeffs[:order]))


def _factorial_transform(series: PowerSeries) -> PowerSeries:
    return PowerSeries(
        tuple(factorial(m) * series[m] for m in range(series.order))
    )


def modularity_report(
    matrix, alpha: Rational, order: int = 8, engine: RelationEngine | None = None
) -> ModularityReport:
    """Tabulate, for each pencil shift, where the normalized solution of the
    third-order operator first differs from each candidate q-expansion.

    Candidates: the weight-2 Eisenstein series at level deg/2, and the
    factorial transform of the matrix's constant-term series, bare and
    multiplied by e^(+alpha q) or e^(-alpha q).  The report records indices,
    never a verdict.
    """
    alpha = Fraction(alpha)
    if matrix.deg % 2 != 0:
        raise InvalidLevel(f"degree {matrix.deg} has no integer half")
    level = matrix.deg // 2
    engine = engine or RelationEngine()

    candidates: list[tuple[str, PowerSeries | None, str | None]] = []
    try:
        candidates.append(("eisenstein", eisenstein_weight2(level, order), None))
    except InvalidLevel as exc:
        candidates.append(("eisenstein", None, str(exc)))
    base = _constant_terms(matrix, order, engine)
    candidates.append(("factorial_transform", _factorial_transform(base), None))
    for tag, sign in (("plus", 1), ("minus", -1)):
        twisted = base * exp_linear(sign * alpha, order)
        candidates.append(
            (f"factorial_transform_twist_{tag}", _factorial_transform(twisted), None)
        )

    rows = []
    for lam in (Fraction(0), alpha, -alpha):
        solution = None
        lam_error = None
        try:
            pencil = build_pencil(matrix, lam)
            operator = left_divide_by_D(right_determinant(pencil))
            solution = frobenius_solve(operator, order)
        except (ArithmeticError, ValueError) as exc:
            lam_error = f"{type(exc).__name__}: {exc}"
        for name, series, cand_error in candidates:
            error = lam_error or cand_error
            mismatch = None
            if error is None and solution is not None and series is not None:
                mismatch = _first_mismatch(solution, series)
            rows.append(ReportRow(lam, name, mismatch, error))
    return ModularityReport(
        deg=matrix.deg, level=level, alpha=alpha, order=order, rows=tuple(rows)
    )

"""Discriminants and the classical invariants of binary and ternary cubics."""

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import gcd, prod

from . import _aronhold_tables as tables
from .errors import DimensionMismatch, ShapeError
from .forms import CubicForm, gradient


def _norm(x):
    return x.numerator if isinstance(x, Fraction) and x.denominator == 1 else x


def binary_discriminant(form):
    """``q^2 r^2 - 4 p r^3 - 4 q^3 s + 18 p q r s - 27 p^2 s^2`` for ``p x^3 + q x^2 y + r x y^2 + s y^3``.

    On ``a x^3 + b x^2 y + c y^3`` this is ``-(4 b^3 c + 27 a^2 c^2)``.
    """
    if form.nvars != 2:
        raise DimensionMismatch(f"binary discriminant needs 2 variables, got {form.nvars}")
    p, q, r, s = (form.coeff(0, 0, 0), form.coeff(0, 0, 1), form.coeff(0, 1, 1), form.coeff(1, 1, 1))
    return _norm(q * q * r * r - 4 * p * r**3 - 4 * q**3 * s + 18 * p * q * r * s - 27 * p * p * s * s)


@dataclass(frozen=True)
class TernaryInvariants:
    S: object
    T: object

    @property
    def Delta(self):
        return _norm(self.T * self.T - 64 * self.S**3)


_KEY = {
    "%d%d%d" % e: (0,) * e[0] + (1,) * e[1] + (2,) * e[2]
    for e in itertools.product(range(4), repeat=3) if sum(e) == 3
}


def _evaluate_table(form, terms, denom):
    c = {name: form.coeff(*key) for name, key in _KEY.items()}
    total = sum(w * prod(c[f] for f in factors) for w, factors in terms)
    return _norm(Fraction(total) / denom)


def aronhold_ST(form):
    """The invariants ``S`` (degree 4) and ``T`` (degree 6) of a ternary cubic.

    Normalised so that ``a x^3 + x^2 (b y + c z) + d y^3 + z^3`` has
    ``S = b c d`` and ``T = 27 a^2 d^2 + 4 b^3 d + 4 c^3 d^2``; with raw
    coefficients the values are rationals with denominators dividing 144 and
    216, and ``T^2 - 64 S^3`` lies in ``Z / 27``.
    """
    if form.nvars != 3:
        raise DimensionMismatch(f"ternary invariants need 3 variables, got {form.nvars}")
    return TernaryInvariants(
        _evaluate_table(form, tables.S_TERMS, tables.S_DENOM),
        _evaluate_table(form, tables.T_TERMS, tables.T_DENOM),
    )


def ternary_discriminant(form):
    return aronhold_ST(form).Delta


def discriminant(form):
    """Discriminant for 2 or 3 variables, ``None`` where none is implemented."""
    if form.nvars == 2:
        return binary_discriminant(form)
    if form.nvars == 3:
        return ternary_discriminant(form)
    return None


@dataclass(frozen=True)
class DivisibilityVerdict:
    """``kind`` is ``"divides"``, ``"does_not_divide"`` or ``"unsupported"``.

    ``quotient`` is ``delta_f / delta_g`` when it is defined; ``both_zero``
    flags the case where divisibility holds only trivially.
    """

    kind: str
    delta_g: object = None
    delta_f: object = None
    quotient: object = None
    both_zero: bool = False


def split_x0(form):
    """Split ``F = a x0^3 + x0^2 L(x') + x0 Q(x') + G(x')`` into ``(a, L, Q, G)``.

    ``L`` is the tuple of raw ``x0^2 x_i`` coefficients, ``Q`` a dict on index
    pairs ``(i, j)`` with ``1 <= i <= j``, and ``G`` a form in ``nvars - 1``
    variables (indices shifted down by one).
    """
    n = form.nvars
    a = form.coeff(0, 0, 0)
    lin = tuple(form.coeff(0, 0, i) for i in range(1, n))
    quad, rest = {}, {}
    for key, c in form.items():
        zeros = key.count(0)
        if zeros == 1:
            quad[key[1:]] = c
        elif zeros == 0:
            rest[tuple(i - 1 for i in key)] = c
    g = CubicForm(n - 1, rest) if n > 1 else None
    return a, lin, quad, g


def discriminant_divides(g, f):
    """Check that ``Delta_G`` divides ``Delta_F`` for ``F = a x0^3 + x0^2 (sum b_i x_i) + G``."""
    if f.nvars != g.nvars + 1:
        raise DimensionMismatch("F must have exactly one more variable than G")
    _, _, quad, rest = split_x0(f)
    if quad:
        bad = next(iter(sorted(quad)))
        raise ShapeError(f"F contains the monomial x0*x{bad[0]}*x{bad[1]}", monomial=(0,) + bad)
    if rest != g:
        raise ShapeError("the x0-free part of F differs from G")
    if f.nvars != 3:
        return DivisibilityVerdict("unsupported")
    dg, df = binary_discriminant(g), ternary_discriminant(f)
    if dg == 0:
        if df == 0:
            return DivisibilityVerdict("divides", dg, df, None, both_zero=True)
        return DivisibilityVerdict("does_not_divide", dg, df)
    q = Fraction(df) / dg
    if q.denominator == 1:
        return DivisibilityVerdict("divides", dg, df, q.numerator)
    return DivisibilityVerdict("does_not_divide", dg, df)


def iter_points(nvars, box):
    """Canonical primitive integer points with entries in ``[-box, box]``, lexicographic order."""
    for p in itertools.product(range(-box, box + 1), repeat=nvars):
        lead = next((x for x in p if x), 0)
        if lead <= 0:
            continue
        g = 0
        for x in p:
            g = gcd(g, x)
        if g == 1:
            yield p


def singular_point_search(form, box):
    """Primitive points in the box where ``F`` and its gradient vanish."""
    if box < 1:
        raise ValueError("box must be at least 1")
    return [p for p in iter_points(form.nvars, box) if not any(gradient(form, p))]

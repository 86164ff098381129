"""Integral cubic forms: representation, parsing, calculus and the matrix action.

A :class:`CubicForm` in ``nvars`` variables stores the coefficient of every
monomial ``x_i x_j x_k`` (``i <= j <= k``) exactly as it appears in the
expanded polynomial.  Matrices act on the right, ``(T . F)(x) = F(T x)``, so
that ``T1 . (T2 . F) == (T2 T1) . F``.
"""

import itertools
import random
import re
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from . import linalg
from .errors import (
    Cubic3Error,
    DimensionMismatch,
    NonHomogeneousDegree3,
    ParseError,
)

ALIASES = "xyzw"

# symbolic determinant up to this many variables; sampling beyond
SYMBOLIC_NVARS_LIMIT = 6
SAMPLE_BUDGET = 64
SAMPLE_RANGE = 10**6


def _norm(c):
    if isinstance(c, Fraction) and c.denominator == 1:
        return c.numerator
    return c


class CubicForm:
    """Homogeneous cubic polynomial with exact coefficients.

    ``coeffs`` maps sorted index triples to nonzero ``int``/``Fraction``
    values.  Instances are immutable and hashable.
    """

    __slots__ = ("nvars", "_coeffs", "_hash")

    def __init__(self, nvars, coeffs=None):
        if nvars < 1:
            raise Cubic3Error("a cubic form needs at least one variable")
        clean = {}
        for key, c in (coeffs or {}).items():
            key = tuple(sorted(key))
            if len(key) != 3 or any(not 0 <= i < nvars for i in key):
                raise DimensionMismatch(f"monomial {key} does not fit {nvars} variables")
            c = _norm(Fraction(c) if not isinstance(c, int) else c)
            total = _norm(clean.get(key, 0) + c)
            if total:
                clean[key] = total
            else:
                clean.pop(key, None)
        object.__setattr__(self, "nvars", nvars)
        object.__setattr__(self, "_coeffs", clean)
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, name, value):
        raise AttributeError("CubicForm is immutable")

    def __reduce__(self):
        return CubicForm, (self.nvars, self._coeffs)

    @property
    def coeffs(self):
        return dict(self._coeffs)

    def coeff(self, i, j, k):
        return self._coeffs.get(tuple(sorted((i, j, k))), 0)

    def items(self):
        return sorted(self._coeffs.items())

    @property
    def is_zero(self):
        return not self._coeffs

    @property
    def is_integral(self):
        return all(isinstance(c, int) for c in self._coeffs.values())

    def variables(self):
        """Indices of the variables that actually occur."""
        return sorted({i for key in self._coeffs for i in key})

    def __eq__(self, other):
        if not isinstance(other, CubicForm):
            return NotImplemented
        return self.nvars == other.nvars and self._coeffs == other._coeffs

    def __hash__(self):
        if self._hash is None:
            object.__setattr__(self, "_hash", hash((self.nvars, frozenset(self._coeffs.items()))))
        return self._hash

    def __repr__(self):
        return f"CubicForm({self.nvars}, {format_form(self)!r})"

    def __str__(self):
        return format_form(self)

    def _check(self, other):
        if self.nvars != other.nvars:
            raise DimensionMismatch(f"forms in {self.nvars} and {other.nvars} variables")

    def __add__(self, other):
        self._check(other)
        c = self.coeffs
        for k, v in other._coeffs.items():
            c[k] = c.get(k, 0) + v
        return CubicForm(self.nvars, c)

    def __neg__(self):
        return CubicForm(self.nvars, {k: -v for k, v in self._coeffs.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, factor):
        return CubicForm(self.nvars, {k: v * factor for k, v in self._coeffs.items()})

    def embed(self, nvars, offset=0):
        """The same polynomial viewed in ``nvars`` variables, indices shifted by ``offset``."""
        if offset + max(self.variables(), default=-1) >= nvars:
            raise DimensionMismatch("embedding does not fit")
        return CubicForm(nvars, {tuple(i + offset for i in k): v for k, v in self._coeffs.items()})

    def __call__(self, p):
        return evaluate(self, p)


# ---------------------------------------------------------------------------
# parsing and formatting

_TOKEN = re.compile(r"\s*(?:(?P<num>\d+(?:/\d+)?)|(?P<var>x\d|[xyzw])|(?P<op>[-+*^]))")


def _var_index(name):
    return int(name[1]) if len(name) == 2 else ALIASES.index(name)


def parse_form(text, nvars=None):
    """Parse the polynomial grammar into a canonical :class:`CubicForm`.

    ``nvars`` defaults to one more than the largest variable index used.
    """
    pos, tokens = 0, []
    stripped = text.rstrip()
    while pos < len(stripped):
        m = _TOKEN.match(stripped, pos)
        if not m or m.end() == pos:
            pos += len(stripped[pos:]) - len(stripped[pos:].lstrip())
            raise ParseError(f"unexpected character {stripped[pos]!r}", pos)
        kind = m.lastgroup
        tokens.append((kind, m.group(kind), m.start(kind)))
        pos = m.end()
    if not tokens:
        raise ParseError("empty polynomial", 0)

    style = None
    for kind, value, where in tokens:
        if kind == "var":
            this = "indexed" if len(value) == 2 else "alias"
            if style is None:
                style = this
            elif this != style:
                raise ParseError("mixed variable styles (x0..x9 and x,y,z,w)", where)

    terms = []  # (coefficient, Counter of variable exponents, position)
    i = 0
    n = len(tokens)

    def expect_end_or_sign(j):
        if j < n and tokens[j][0] == "op" and tokens[j][1] not in "+-":
            raise ParseError(f"unexpected {tokens[j][1]!r}", tokens[j][2])

    while i < n:
        sign = 1
        start = tokens[i][2]
        if tokens[i][0] == "op" and tokens[i][1] in "+-":
            sign = -1 if tokens[i][1] == "-" else 1
            i += 1
        elif terms:
            raise ParseError("expected '+' or '-'", tokens[i][2])
        if i >= n:
            raise ParseError("dangling sign", len(stripped))
        coeff = Fraction(1)
        powers = Counter()
        need_factor = True
        if tokens[i][0] == "num":
            coeff = Fraction(tokens[i][1])
            i += 1
            need_factor = False
            if i < n and tokens[i][0] == "op" and tokens[i][1] == "*":
                i += 1
                need_factor = True
        while need_factor:
            if i >= n or tokens[i][0] != "var":
                where = tokens[i][2] if i < n else len(stripped)
                raise ParseError("expected a variable", where)
            idx = _var_index(tokens[i][1])
            i += 1
            exp = 1
            if i < n and tokens[i][0] == "op" and tokens[i][1] == "^":
                i += 1
                if i >= n or tokens[i][0] != "num" or tokens[i][1] not in ("1", "2", "3"):
                    where = tokens[i][2] if i < n else len(stripped)
                    raise ParseError("exponent must be 1, 2 or 3", where)
                exp = int(tokens[i][1])
                i += 1
            powers[idx] += exp
            if i < n and tokens[i][0] == "op" and tokens[i][1] == "*":
                i += 1
                need_factor = True
            else:
                need_factor = False
        expect_end_or_sign(i)
        terms.append((sign * coeff, powers, start))

    used = max((idx for _, p, _ in terms for idx in p), default=-1)
    if nvars is None:
        nvars = used + 1
    if nvars < 1:
        raise NonHomogeneousDegree3("cannot infer the number of variables of a constant")
    if used >= nvars:
        raise DimensionMismatch(f"variable index {used} exceeds nvars={nvars}")
    coeffs = {}
    for c, powers, start in terms:
        degree = sum(powers.values())
        if degree != 3:
            if c == 0 and degree == 0:
                continue
            raise NonHomogeneousDegree3(f"term at position {start} has degree {degree}, expected 3",
                                        position=start)
        key = tuple(sorted(itertools.chain.from_iterable([v] * e for v, e in powers.items())))
        coeffs[key] = coeffs.get(key, 0) + c
    return CubicForm(nvars, coeffs)


def variable_names(nvars):
    if nvars <= len(ALIASES):
        return list(ALIASES[:nvars])
    if nvars > 10:
        raise Cubic3Error("the text grammar supports at most 10 variables")
    return [f"x{i}" for i in range(nvars)]


def _exponents(key, nvars):
    e = [0] * nvars
    for i in key:
        e[i] += 1
    return tuple(e)


def format_form(form):
    """Canonical text: graded-lex (descending) monomial order, explicit signs."""
    if form.is_zero:
        return "0"
    names = variable_names(form.nvars)
    terms = sorted(form.items(), key=lambda kv: _exponents(kv[0], form.nvars), reverse=True)
    out = []
    for idx, (key, c) in enumerate(terms):
        mono = "*".join(
            names[v] + (f"^{e}" if e > 1 else "")
            for v, e in enumerate(_exponents(key, form.nvars)) if e
        )
        mag = abs(c)
        text = mono if mag == 1 else f"{mag}*{mono}"
        if idx == 0:
            out.append(("-" if c < 0 else "") + text)
        else:
            out.append(("- " if c < 0 else "+ ") + text)
    return " ".join(out)


# ---------------------------------------------------------------------------
# constructors

def build_from_intersections(n, phi):
    """Cubic form ``sum binom(3, I) phi(h^I) x^I`` of a symmetric trilinear form.

    ``phi`` is either a mapping from index triples to values (missing triples
    are zero, any ordering of a triple may be given as long as the entries
    agree) or a callable ``phi(i, j, k)``.
    """
    if callable(phi):
        table = {k: phi(*k) for k in itertools.product(range(n), repeat=3)}
    else:
        table = {}
        for key, v in phi.items():
            if len(key) != 3 or any(not 0 <= i < n for i in key):
                raise DimensionMismatch(f"index triple {key} out of range for n={n}")
            table[tuple(key)] = v
    values = {}
    for key in itertools.product(range(n), repeat=3):
        skey = tuple(sorted(key))
        v = table.get(key, table.get(skey, 0))
        if skey in values and values[skey] != v:
            raise Cubic3Error(f"intersection numbers are not symmetric at {skey}")
        values[skey] = v
    coeffs = {}
    for (i, j, k), v in values.items():
        mult = len(set(itertools.permutations((i, j, k))))  # multinomial 3!/I!
        coeffs[(i, j, k)] = mult * v
    return CubicForm(n, coeffs)


def polarization(form, u, v, w):
    """Symmetric trilinear form ``phi`` with ``phi(x, x, x) == F(x)``."""
    total = Fraction(0)
    for (i, j, k), c in form._coeffs.items():
        mult = len(set(itertools.permutations((i, j, k))))
        s = 0
        for a, b, d in set(itertools.permutations((i, j, k))):
            s += u[a] * v[b] * w[d]
        total += Fraction(c) / mult * s
    return _norm(total)


# ---------------------------------------------------------------------------
# calculus

def _check_point(form, p):
    if len(p) != form.nvars:
        raise DimensionMismatch(f"point of length {len(p)} for a form in {form.nvars} variables")


def evaluate(form, p):
    _check_point(form, p)
    return _norm(sum(c * p[i] * p[j] * p[k] for (i, j, k), c in form._coeffs.items()))


def gradient(form, p):
    _check_point(form, p)
    g = [0] * form.nvars
    for (i, j, k), c in form._coeffs.items():
        g[i] += c * p[j] * p[k]
        g[j] += c * p[i] * p[k]
        g[k] += c * p[i] * p[j]
    return tuple(_norm(x) for x in g)


def hessian(form, p):
    _check_point(form, p)
    n = form.nvars
    h = [[0] * n for _ in range(n)]
    for (i, j, k), c in form._coeffs.items():
        for a, b, r in ((i, j, k), (i, k, j), (j, k, i)):
            # d^2/dx_a dx_b of x_a x_b x_r contributes c * x_r to both orders
            h[a][b] += c * p[r]
            h[b][a] += c * p[r]
    return tuple(tuple(_norm(x) for x in row) for row in h)


def evaluate_all(form, p):
    """``(F(p), grad F(p), Hessian(p))``."""
    return evaluate(form, p), gradient(form, p), hessian(form, p)


def hessian_rank(form, p):
    if not any(p):
        raise Cubic3Error("the zero vector is not a projective point")
    return linalg.rank(hessian(form, p))


def point(coords):
    """Canonical primitive representative of a projective point (integer or rational coordinates)."""
    coords = [Fraction(c) for c in coords]
    if not any(coords):
        raise Cubic3Error("the zero vector is not a projective point")
    den = 1
    for c in coords:
        den = den * c.denominator // gcd(den, c.denominator)
    return linalg.primitive([int(c * den) for c in coords])


# ---------------------------------------------------------------------------
# the matrix action

def act(t, form):
    """``T . F`` with ``(T . F)(x) = F(T x)``.

    ``T`` may be rectangular (``nvars`` rows, ``m`` columns); the result is then
    a form in ``m`` variables.  Rational entries are allowed and yield a form
    whose ``is_integral`` flag is false when denominators survive.
    """
    t = linalg.as_matrix(t)
    if len(t) != form.nvars:
        raise DimensionMismatch(f"matrix with {len(t)} rows acting on a form in {form.nvars} variables")
    m = len(t[0])
    out = {}
    for (i, j, k), c in form._coeffs.items():
        ri, rj, rk = t[i], t[j], t[k]
        nz_i = [(a, x) for a, x in enumerate(ri) if x]
        nz_j = [(b, y) for b, y in enumerate(rj) if y]
        nz_k = [(d, z) for d, z in enumerate(rk) if z]
        for a, x in nz_i:
            for b, y in nz_j:
                cxy = c * x * y
                for d, z in nz_k:
                    key = tuple(sorted((a, b, d)))
                    out[key] = out.get(key, 0) + cxy * z
    return CubicForm(m, out)


def content(form):
    if not form.is_integral:
        raise Cubic3Error("content is defined for integer forms only")
    return linalg.content(form._coeffs.values())


def restrict(form, basis):
    """Substitute ``x = sum_i y_i basis_i``; the result is a form in ``len(basis)`` variables."""
    basis = [tuple(b) for b in basis]
    if not basis:
        raise Cubic3Error("empty basis")
    for b in basis:
        if len(b) != form.nvars:
            raise DimensionMismatch(f"basis vector of length {len(b)} for {form.nvars} variables")
    if linalg.rank(basis) != len(basis):
        raise Cubic3Error("basis vectors are linearly dependent")
    return act(linalg.transpose(basis), form)


# ---------------------------------------------------------------------------
# non-degeneracy

@dataclass(frozen=True)
class Nondegeneracy:
    """Verdict of :func:`is_nondegenerate`.

    ``kind`` is ``"nondegenerate"`` (``witness`` is a point with nonzero
    Hessian determinant), ``"degenerate"`` (det H_F vanishes identically,
    ``certificate`` says how this was established) or
    ``"probably_degenerate"`` (``samples`` random points all gave zero).
    """

    kind: str
    witness: tuple = None
    determinant: int = None
    certificate: str = None
    samples: int = 0

    def __bool__(self):
        return self.kind == "nondegenerate"


def _poly_mul(p, q):
    out = {}
    for e1, c1 in p.items():
        for e2, c2 in q.items():
            e = tuple(a + b for a, b in zip(e1, e2))
            out[e] = out.get(e, 0) + c1 * c2
    return {e: c for e, c in out.items() if c}


def _poly_add(p, q, sign=1):
    out = dict(p)
    for e, c in q.items():
        out[e] = out.get(e, 0) + sign * c
    return {e: c for e, c in out.items() if c}


def hessian_determinant_poly(form):
    """``det H_F`` as a sparse polynomial ``{exponent tuple: coefficient}``.

    Laplace expansion along rows, memoised on the set of used columns.
    """
    n = form.nvars
    unit = [tuple(int(a == b) for b in range(n)) for a in range(n)]
    # entries of the Hessian are linear forms: H[a][b] = sum_r coeff * x_r
    lin = [[{} for _ in range(n)] for _ in range(n)]
    for (i, j, k), c in form._coeffs.items():
        for a, b, r in ((i, j, k), (i, k, j), (j, k, i)):
            for x, y in ((a, b), (b, a)):
                lin[x][y][unit[r]] = lin[x][y].get(unit[r], 0) + c
    memo = {}

    def minor(row, cols):
        if row == n:
            return {(0,) * n: 1}
        if cols in memo:
            return memo[cols]
        total = {}
        free = [c for c in range(n) if not cols & (1 << c)]
        for pos, c in enumerate(free):
            entry = {e: v for e, v in lin[row][c].items() if v}
            if not entry:
                continue
            sub = minor(row + 1, cols | (1 << c))
            if sub:
                total = _poly_add(total, _poly_mul(entry, sub), -1 if pos % 2 else 1)
        memo[cols] = total
        return total

    return minor(0, 0)


def is_nondegenerate(form, samples=SAMPLE_BUDGET, seed=0, sample_range=SAMPLE_RANGE):
    n = form.nvars
    if n <= SYMBOLIC_NVARS_LIMIT:
        poly = hessian_determinant_poly(form)
        if not poly:
            return Nondegeneracy("degenerate", certificate="det H_F expands to the zero polynomial")
        # a nonzero polynomial of degree <= n in each variable is nonzero somewhere on {0..n}^n
        for p in itertools.product(range(n + 1), repeat=n):
            d = linalg.det(hessian(form, p))
            if d:
                return Nondegeneracy("nondegenerate", witness=p, determinant=d)
        raise AssertionError("nonzero determinant polynomial vanished on a full grid")
    rng = random.Random(seed)
    for s in range(samples):
        p = tuple(rng.randint(-sample_range, sample_range) for _ in range(n))
        d = linalg.det(hessian(form, p))
        if d:
            return Nondegeneracy("nondegenerate", witness=p, determinant=d, samples=s + 1)
    return Nondegeneracy("probably_degenerate", samples=samples)

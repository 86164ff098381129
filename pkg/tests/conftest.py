import itertools
import random
from fractions import Fraction

import pytest
from hypothesis import strategies as st

from cubic3.forms import CubicForm

ACCEPTANCE_LINES = []


def monomials(nvars):
    return list(itertools.combinations_with_replacement(range(nvars), 3))


@st.composite
def cubic_forms(draw, nvars=None, min_vars=1, max_vars=4, bound=6):
    n = draw(st.integers(min_vars, max_vars)) if nvars is None else nvars
    coeffs = {m: draw(st.integers(-bound, bound)) for m in monomials(n)}
    return CubicForm(n, coeffs)


def random_form(rng, nvars, bound=6, density=0.7):
    return CubicForm(nvars, {m: rng.randint(-bound, bound) for m in monomials(nvars) if rng.random() < density})


def random_unimodular(rng, n, max_entry=5, det=1, steps=8):
    """Random integer matrix of determinant ``det`` (``+1`` or ``-1``) with small entries."""
    while True:
        m = [[int(i == j) for j in range(n)] for i in range(n)]
        for _ in range(rng.randint(1, steps)):
            if n == 1:
                break
            i, j = rng.sample(range(n), 2)
            k = rng.choice((-2, -1, 1, 2))
            for row in m:
                row[i] += k * row[j]  # column operation: col_i += k col_j
            if rng.random() < 0.3:
                p, q = rng.sample(range(n), 2)
                m[p], m[q] = m[q], [-x for x in m[p]]
        if det == -1:
            m[0] = [-x for x in m[0]]
        if all(abs(x) <= max_entry for row in m for x in row):
            return tuple(tuple(r) for r in m)


@st.composite
def unimodular(draw, n, max_entry=5, det=1):
    seed = draw(st.integers(0, 2**32 - 1))
    return random_unimodular(random.Random(seed), n, max_entry, det)


def leibniz_det(m):
    """Determinant by the permutation expansion; independent of the library's elimination."""
    n = len(m)
    total = 0
    for perm in itertools.permutations(range(n)):
        inversions = sum(1 for a, b in itertools.combinations(range(n), 2) if perm[a] > perm[b])
        term = -1 if inversions % 2 else 1
        for i, p in enumerate(perm):
            term *= m[i][p]
        total += term
    return total


def naive_rank(m):
    rows = [[Fraction(x) for x in r] for r in m]
    rank, col = 0, 0
    ncols = len(rows[0]) if rows else 0
    while rank < len(rows) and col < ncols:
        pivot = next((i for i in range(rank, len(rows)) if rows[i][col]), None)
        if pivot is None:
            col += 1
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        for i in range(len(rows)):
            if i != rank and rows[i][col]:
                f = rows[i][col] / rows[rank][col]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[rank])]
        rank += 1
        col += 1
    return rank


@pytest.fixture
def acceptance():
    def record(number, ok, detail):
        line = f"criterion {number:>2}: {'PASS' if ok else 'FAIL'} | {detail}"
        ACCEPTANCE_LINES.append(line)
        print(line)
        assert ok, line

    return record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)


def brute_force_binary(a, b, c, bound):
    """Every reduced ``(a', b', c')`` of ``a x^3 + b x^2 y + c y^3`` over SL(2, Z) with entries <= bound.

    Independent of the library: loops over ``(t00, t10, t01)``, solves ``det = 1``
    for ``t11`` and expands the substituted form by hand.
    """
    out = set()
    rng = range(-bound, bound + 1)
    for t00 in rng:
        for t10 in rng:
            for t01 in rng:
                num = 1 + t01 * t10
                if t00 == 0:
                    if num != 0:
                        continue
                    t11s = rng
                elif num % t00:
                    continue
                else:
                    t11s = (num // t00,)
                for t11 in t11s:
                    if abs(t11) > bound:
                        continue
                    xy2 = 3 * a * t00 * t01**2 + b * (2 * t00 * t01 * t11 + t10 * t01**2) + 3 * c * t10 * t11**2
                    y3 = a * t01**3 + b * t01**2 * t11 + c * t11**3
                    if xy2 or not y3:
                        continue
                    x3 = a * t00**3 + b * t00**2 * t10 + c * t10**3
                    x2y = 3 * a * t00**2 * t01 + b * (t00**2 * t11 + 2 * t00 * t01 * t10) + 3 * c * t10**2 * t11
                    out.add((x3, x2y, y3))
    return out

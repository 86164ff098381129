"""Reduced triples, bounded SL(n, Z) searches and low-rank Hessian loci.

A form is *reduced* when it reads ``a x0^3 + x0^2 (sum b_i x_i) + G(x1..xn)``,
i.e. no monomial ``x0 x_i x_j`` with ``i, j >= 1`` occurs.  ``B`` always holds
the raw ``x0^2 x_i`` coefficients.

Equivalence of triples follows the round-trip rule: ``(a, B, G) ~ (a, B', G')``
when ``diag(1, M) . assemble(a, B, G) == assemble(a, B', G')`` for some
``M`` in SL(n, Z), which amounts to ``G' = M . G`` and ``B' = M^T B``.
"""

import itertools
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from math import ceil, floor, gcd, isqrt

from . import linalg
from .errors import BoundViolation, Cubic3Error, DimensionMismatch, RankError, ShapeError
from .forms import (
    CubicForm,
    act,
    evaluate,
    gradient,
    hessian,
    hessian_rank,
    is_nondegenerate,
    point,
    restrict,
)
from .invariants import discriminant, iter_points, split_x0


@dataclass(frozen=True)
class ReducedTriple:
    a: object
    B: tuple
    G: CubicForm

    @property
    def n(self):
        return len(self.B)

    def assemble(self):
        n = self.n
        coeffs = {(0, 0, 0): self.a}
        for i, b in enumerate(self.B, start=1):
            coeffs[(0, 0, i)] = b
        form = CubicForm(n + 1, coeffs)
        return form + self.G.embed(n + 1, offset=1)

    def as_dict(self):
        return {"a": self.a, "B": list(self.B), "G": str(self.G)}


def detect_reduced(form):
    """Read ``(a, B, G)`` off a form that is already in reduced shape, else ``None``."""
    if form.nvars < 2:
        raise Cubic3Error("a reduced triple needs at least two variables")
    a, lin, quad, g = split_x0(form)
    if quad:
        return None
    return ReducedTriple(a, lin, g)


# ---------------------------------------------------------------------------
# equivalence of triples

@dataclass(frozen=True)
class EquivalenceVerdict:
    """``kind`` is ``"equivalent"``, ``"definitely_not"`` or ``"not_found_within_radius"``."""

    kind: str
    witness: tuple = None
    reason: str = None
    radius: int = None

    def __bool__(self):
        return self.kind == "equivalent"


def _content(values):
    if all(isinstance(v, int) for v in values):
        return linalg.content(values)
    return None


def triple_invariants(t):
    """Quantities preserved by equivalence; differing values rule it out."""
    g_coeffs = list(t.G.coeffs.values())
    return {
        "a": t.a,
        "content_B": _content(t.B),
        "content_G": _content(g_coeffs),
        "disc_G": discriminant(t.G),
    }


def _column_candidates(t1, t2, j, radius):
    target_g = t2.G.coeff(j, j, j)
    target_b = t2.B[j]
    out = []
    for v in itertools.product(range(-radius, radius + 1), repeat=t1.n):
        if not any(v):
            continue
        if sum(b * x for b, x in zip(t1.B, v)) != target_b:
            continue
        if evaluate(t1.G, v) != target_g:
            continue
        out.append(v)
    return out


def _partial_matches(g1, g2, cols):
    k = len(cols)
    sub = act(linalg.transpose(cols), g1)
    last = k - 1
    for key in itertools.combinations_with_replacement(range(k), 3):
        if last in key and sub.coeff(*key) != g2.coeff(*key):
            return False
    return True


def triples_equivalent(t1, t2, radius):
    """Bounded search for ``M`` in SL(n, Z), entries in ``[-radius, radius]``."""
    if t1.n != t2.n:
        raise DimensionMismatch("triples of different size")
    if radius < 1:
        raise ValueError("radius must be at least 1")
    inv1, inv2 = triple_invariants(t1), triple_invariants(t2)
    for name in inv1:
        if inv1[name] != inv2[name]:
            return EquivalenceVerdict("definitely_not", reason=f"{name} differs: {inv1[name]} != {inv2[name]}")
    n = t1.n
    if n == 1:
        # SL(1, Z) is trivial
        if t1 == t2:
            return EquivalenceVerdict("equivalent", witness=((1,),))
        return EquivalenceVerdict("definitely_not", reason="SL(1, Z) is trivial and the triples differ")
    cands = [_column_candidates(t1, t2, j, radius) for j in range(n)]

    def search(cols):
        if len(cols) == n:
            m = linalg.transpose(cols)
            return m if linalg.det(m) == 1 else None
        for v in cands[len(cols)]:
            nxt = cols + [v]
            if linalg.rank(nxt) < len(nxt):
                continue
            if not _partial_matches(t1.G, t2.G, nxt):
                continue
            found = search(nxt)
            if found is not None:
                return found
        return None

    m = search([])
    if m is not None:
        return EquivalenceVerdict("equivalent", witness=m)
    return EquivalenceVerdict("not_found_within_radius", radius=radius)


# ---------------------------------------------------------------------------
# low-rank loci

def low_rank_points(form, max_rank, box):
    """Rational probe of ``{p : rk H_F(p) <= max_rank}``: ``(point, rank, F(p))`` in lexicographic order."""
    if not 0 <= max_rank <= form.nvars:
        raise ValueError("max_rank must lie in 0..nvars")
    if box < 1:
        raise ValueError("box must be at least 1")
    out = []
    for p in iter_points(form.nvars, box):
        r = linalg.rank(hessian(form, p))
        if r <= max_rank:
            out.append((p, r, evaluate(form, p)))
    return out


# ---------------------------------------------------------------------------
# binary triples

@dataclass(frozen=True)
class BinaryTriple:
    a: int
    b: int
    c: int
    witness: tuple
    system_det: int


def binary_form(a, b, c):
    return CubicForm(2, {(0, 0, 0): a, (0, 0, 1): b, (1, 1, 1): c})


def enumerate_binary_triples(a, b, c, bound):
    """Reduced triples ``(a', b', c' y^3)`` of ``a x^3 + b x^2 y + c y^3`` reachable within ``bound``.

    For every primitive ``(t01, t11)`` in the box with ``c' = F(t01, t11)``
    nonzero (and dividing the discriminant when that is nonzero), the first
    column is the unique solution of ``det T = 1`` together with the vanishing
    ``x y^2`` coefficient; the system has determinant ``3 c'``.
    """
    if c == 0:
        raise Cubic3Error("the y^3 coefficient c must be nonzero")
    if bound < 1:
        raise ValueError("bound must be at least 1")
    from .invariants import binary_discriminant

    f = binary_form(a, b, c)
    delta = binary_discriminant(f)
    found = {}
    for t01, t11 in itertools.product(range(-bound, bound + 1), repeat=2):
        if gcd(t01, t11) != 1:
            continue
        c_new = evaluate(f, (t01, t11))
        if c_new == 0 or (delta != 0 and delta % c_new != 0):
            continue
        gx, gy = gradient(f, (t01, t11))
        # rows: t11*t00 - t01*t10 = 1 and gx*t00 + gy*t10 = 0
        system_det = t11 * gy + t01 * gx
        if system_det != 3 * c_new:
            raise AssertionError("Euler identity violated")
        if gy % system_det or gx % system_det:
            continue
        t00, t10 = gy // system_det, -gx // system_det
        if abs(t00) > bound or abs(t10) > bound:
            continue
        t = ((t00, t01), (t10, t11))
        g = act(t, f)
        assert g.coeff(0, 1, 1) == 0 and g.coeff(1, 1, 1) == c_new
        key = (g.coeff(0, 0, 0), g.coeff(0, 0, 1), c_new)
        if key not in found:
            found[key] = BinaryTriple(*key, witness=t, system_det=system_det)
    return [found[k] for k in sorted(found)]


# ---------------------------------------------------------------------------
# line normalisation

def _line_in_v(form):
    """Whether the Hessian has rank <= 2 along ``{x2 = ... = xn = 0}``.

    The 3x3 minors restricted to the line are binary cubics, so rank <= 2 at
    four distinct points of the line decides the question exactly.
    """
    n = form.nvars
    pts = [(0, 1)] + [(1, k) for k in range(max(4, n + 1) - 1)]
    for s, t in pts:
        p = (s, t) + (0,) * (n - 2)
        if hessian_rank(form, p) > 2:
            return False
    return True


def normalize_line(form):
    """Clear ``x0^2 x_j`` (``j >= 2``) by ``x1 <- x1 - (b_j / b) x_j`` and verify the residual vanishes.

    Returns ``(T, F')`` with ``F' = T . F = a x0^3 + b x0^2 x1 + c1 x1^3 + R(x2..xn)``.
    """
    n = form.nvars
    if n < 2:
        raise Cubic3Error("need at least two variables")
    triple = detect_reduced(form)
    if triple is None:
        raise ShapeError("form is not of the shape a x0^3 + x0^2 L + G")
    b = triple.B[0]
    if b == 0:
        raise Cubic3Error("the x0^2 x1 coefficient b must be nonzero")
    if not _line_in_v(form):
        raise RankError("the line x2 = ... = xn = 0 is not contained in V_F")
    t = [list(r) for r in linalg.identity(n)]
    for j in range(2, n):
        if triple.B[j - 1]:
            t[1][j] = linalg._normalize(-Fraction(triple.B[j - 1], b))
    t = linalg.as_matrix(t)
    g = act(t, form)
    new = detect_reduced(g)
    assert new is not None and all(x == 0 for x in new.B[1:])
    residual = [(k, v) for k, v in new.G.items() if 0 in k and k != (0, 0, 0)]
    if residual:
        key, _ = residual[0]
        raise ShapeError(
            "residual x1-mixed terms do not vanish; the hypotheses of the normalisation fail",
            monomial=tuple(i + 1 for i in key),
        )
    return t, g


# ---------------------------------------------------------------------------
# searching reduced triples

def isotropic_hyperplanes(h):
    """Primitive normals ``w`` of rational hyperplanes on which the quadratic form ``h`` vanishes.

    Such hyperplanes contain ``ker h`` and exist only for rank 1 or 2.
    """
    r = linalg.rank(h)
    if r == 0:
        raise RankError("every hyperplane is isotropic for the zero form")
    if r > 2:
        return []
    if r == 1:
        row = next(row for row in h if any(row))
        return [linalg.primitive(row)]
    n = len(h)
    for i, j in itertools.combinations(range(n), 2):
        A, B, C = h[i][i], h[i][j], h[j][j]
        d = B * B - A * C
        if d:
            break
    if d < 0 or isqrt(d) ** 2 != d:
        return []
    m = isqrt(d)
    if A:
        dirs = [(-B + m, A), (-B - m, A)]
    else:
        dirs = [(1, 0), (-C, 2 * B)]
    kernel = list(linalg.integer_kernel(h))
    normals = []
    for s, t in dirs:
        v = [0] * n
        v[i], v[j] = s, t
        (w,) = linalg.integer_kernel(kernel + [v])
        w = linalg.primitive(w)
        if w not in normals:
            normals.append(w)
    return normals


def _interval(lo_num, step, radius):
    """Integers ``k`` with ``|lo_num + k * step| <= radius`` as ``(kmin, kmax)``, or ``None`` for all."""
    if step == 0:
        return None if abs(lo_num) <= radius else (1, 0)
    a, b = Fraction(-radius - lo_num, step), Fraction(radius - lo_num, step)
    lo, hi = min(a, b), max(a, b)
    return ceil(lo), floor(hi)


def complement_in_box(u, w, radius):
    """A basis ``v1..vn`` of ``{x : w.x = 0}`` with ``det[u, v1..vn] = 1`` and entries in the box.

    Exact for ``n <= 2``; for larger ``n`` only the LLL-reduced basis is tried.
    Returns ``None`` when nothing is found.
    """
    n1 = len(u)
    basis = [list(v) for v in linalg.lll_reduce(linalg.integer_kernel([w], n1))]
    n = len(basis)
    sign = linalg.det(linalg.transpose([u] + basis))
    if abs(sign) != 1:
        return None
    if sign < 0:
        basis[0] = [-x for x in basis[0]]
    if all(abs(x) <= radius for v in basis for x in v):
        return tuple(tuple(v) for v in basis)
    if n != 2:
        return None
    # coordinates of lattice vectors in the box are bounded through a nonsingular 2x2 minor
    b1, b2 = basis
    for i, j in itertools.combinations(range(n1), 2):
        minor = ((b1[i], b2[i]), (b1[j], b2[j]))
        if linalg.det(minor):
            break
    inv = linalg.inverse(minor)
    bounds = [floor(sum(abs(Fraction(x)) for x in row) * radius) for row in inv]
    vecs = []
    for c1 in range(-bounds[0], bounds[0] + 1):
        for c2 in range(-bounds[1], bounds[1] + 1):
            if gcd(c1, c2) != 1:
                continue
            v = [c1 * x + c2 * y for x, y in zip(b1, b2)]
            if all(abs(x) <= radius for x in v):
                vecs.append((max(map(abs, v)), tuple(v), (c1, c2)))
    vecs.sort()
    for _, v1, (c1, c2) in vecs:
        # second coordinates (d1, d2) with c1 d2 - c2 d1 = 1, then shift by multiples of (c1, c2)
        g, x, y = linalg._xgcd(c1, c2)
        if g < 0:
            x, y = -x, -y
        d1, d2 = -y, x
        base = [d1 * p + d2 * q for p, q in zip(b1, b2)]
        lo, hi = -10**30, 10**30
        for bm, vm in zip(base, v1):
            iv = _interval(bm, vm, radius)
            if iv is None:
                continue
            lo, hi = max(lo, iv[0]), min(hi, iv[1])
        if lo <= hi:
            k = 0 if lo <= 0 <= hi else (lo if lo > 0 else hi)
            v2 = tuple(bm + k * vm for bm, vm in zip(base, v1))
            return (v1, v2)
    return None


@dataclass(frozen=True)
class Discovery:
    """A matrix ``T`` in SL(n+1, Z) with ``T . F`` reduced; ``T[:, 0] = u``."""

    triple: ReducedTriple
    matrix: tuple
    u: tuple
    normal: tuple


def _search_chunk(args):
    form, radius, firsts = args
    n1 = form.nvars
    out = []
    for first in firsts:
        for rest in itertools.product(range(-radius, radius + 1), repeat=n1 - 1):
            u = (first,) + rest
            if not any(u):
                continue
            g = 0
            for x in u:
                g = gcd(g, x)
            if g != 1:
                continue
            h = hessian(form, u)
            if n1 == 3 and linalg.det(h) != 0:
                continue
            r = linalg.rank(h)
            if r == 0 or r > 2:
                continue
            for w in isotropic_hyperplanes(h):
                if abs(sum(a * b for a, b in zip(w, u))) != 1:
                    continue
                comp = complement_in_box(u, w, radius)
                if comp is None:
                    continue
                t = linalg.transpose((u,) + comp)
                triple = detect_reduced(act(t, form))
                assert triple is not None, "isotropic complement did not produce a reduced form"
                if not is_nondegenerate(triple.G):
                    continue
                out.append(Discovery(triple, t, u, w))
    return out


def find_reduced_triples(form, radius, threads=1):
    """All ``(u, hyperplane)`` pairs realised by some ``T`` with entries in ``[-radius, radius]``.

    One :class:`Discovery` per pair; triples whose ``G`` is degenerate are
    dropped.  The outermost coordinate range is split across ``threads``
    worker processes and the results merged in a fixed order.
    """
    if radius < 1:
        raise ValueError("radius must be at least 1")
    if form.nvars < 2:
        raise Cubic3Error("need at least two variables")
    firsts = list(range(-radius, radius + 1))
    if threads <= 1:
        found = _search_chunk((form, radius, firsts))
    else:
        chunks = [firsts[i::threads] for i in range(threads)]
        with ProcessPoolExecutor(max_workers=threads) as pool:
            found = [d for part in pool.map(_search_chunk, [(form, radius, c) for c in chunks]) for d in part]
    found.sort(key=lambda d: (d.u, d.normal))
    return found


def estimate_S(form, radius, threads=1):
    """Largest ``|a|`` over the reduced triples found within ``radius``; 0 when there are none.

    A lower estimate of the supremum over all of SL(n+1, Z), nondecreasing in ``radius``.
    """
    return max((abs(d.triple.a) for d in find_reduced_triples(form, radius, threads)), default=0)


@dataclass
class TripleClass:
    representative: ReducedTriple
    members: list = field(default_factory=list)


def classify_triples(triples, equiv_radius=4):
    """Group triples into classes, merging two only when a witness is found."""
    classes = []
    for t in triples:
        key = triple_invariants(t)
        for cls in classes:
            if triple_invariants(cls.representative) != key:
                continue
            if cls.representative == t or triples_equivalent(cls.representative, t, equiv_radius):
                cls.members.append(t)
                break
        else:
            classes.append(TripleClass(t, [t]))
    return classes


def reduced_triple_classes(form, radius, equiv_radius=4, threads=1):
    return classify_triples([d.triple for d in find_reduced_triples(form, radius, threads)], equiv_radius)


# ---------------------------------------------------------------------------
# contractions to a point

@dataclass(frozen=True)
class PointContraction:
    a: object
    form_x: CubicForm
    basis: tuple
    matrix: tuple
    det: int


def point_contraction_extract(form, alpha, radius=None):
    """Split ``F`` along a Hessian-rank-one class ``alpha``.

    The sublattice ``L = {v : phi(alpha, alpha, v) = 0}`` gets a reduced basis;
    with ``T = [alpha | L]`` the form becomes ``a x0^3 + F_X`` where
    ``a = F(alpha)``.  ``0 < |det T| <= |a|^nvars`` is checked, and a basis
    entry larger than ``radius`` (when given) is reported.
    """
    alpha = point(alpha)
    if len(alpha) != form.nvars:
        raise DimensionMismatch("alpha has the wrong length")
    rk = hessian_rank(form, alpha)
    if rk > 1:
        raise RankError(f"Hessian rank at alpha is {rk}, expected at most 1", rank=rk)
    a = evaluate(form, alpha)
    if a == 0:
        raise BoundViolation("alpha^3 = 0, the determinant bound needs r = |a| > 0")
    grad = gradient(form, alpha)
    basis = [list(v) for v in linalg.lll_reduce(linalg.integer_kernel([grad], form.nvars))]
    h = hessian(form, alpha)
    for v, w in itertools.combinations_with_replacement(basis, 2):
        if sum(v[i] * h[i][j] * w[j] for i in range(len(v)) for j in range(len(w))):
            raise ShapeError("phi(alpha, v, w) does not vanish on the sublattice")
    cols = [list(alpha)] + basis
    d = linalg.det(linalg.transpose(cols))
    if d < 0 and basis:
        basis[-1] = [-x for x in basis[-1]]
        cols = [list(alpha)] + basis
        d = -d
    if radius is not None and any(abs(x) > radius for v in basis for x in v):
        raise BoundViolation(f"reduced sublattice basis exceeds radius {radius}")
    r = abs(a)
    if not 0 < abs(d) <= r ** form.nvars:
        raise BoundViolation(f"|det T| = {abs(d)} violates 0 < |det T| <= {r}^{form.nvars}", det=d)
    t = linalg.transpose(cols)
    form_x = restrict(form, basis) if basis else None
    assembled = act(t, form)
    expected = CubicForm(form.nvars, {(0, 0, 0): a}) + form_x.embed(form.nvars, offset=1)
    assert assembled == expected
    return PointContraction(a, form_x, tuple(tuple(v) for v in basis), t, d)


def default_threads():
    try:
        return max(1, int(os.environ.get("CUBIC3_THREADS", "1")))
    except ValueError:
        return 1

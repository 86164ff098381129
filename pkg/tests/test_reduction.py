import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cubic3 import linalg
from cubic3.errors import Cubic3Error, DimensionMismatch, RankError, ShapeError
from cubic3.forms import CubicForm, act, evaluate, hessian, hessian_rank, parse_form, restrict
from cubic3.invariants import binary_discriminant, split_x0
from cubic3.reduction import (
    ReducedTriple,
    classify_triples,
    complement_in_box,
    detect_reduced,
    enumerate_binary_triples,
    estimate_S,
    find_reduced_triples,
    isotropic_hyperplanes,
    low_rank_points,
    normalize_line,
    point_contraction_extract,
    reduced_triple_classes,
    triples_equivalent,
)
from conftest import brute_force_binary, cubic_forms, random_form, random_unimodular, unimodular

FERMAT = parse_form("x^3 + y^3 + z^3")
PELL = parse_form("x^2*y + x^2*z - 3*y^2*z")


def block(m):
    n = len(m)
    return tuple((1,) + (0,) * n if i == 0 else (0,) + tuple(m[i - 1]) for i in range(n + 1))


@st.composite
def reduced_triples(draw, n=None):
    n = draw(st.integers(1, 3)) if n is None else n
    a = draw(st.integers(-9, 9))
    b = tuple(draw(st.integers(-9, 9)) for _ in range(n))
    g = draw(cubic_forms(nvars=n, bound=5))
    return ReducedTriple(a, b, g)


# --- detection ----------------------------------------------------------------

def test_detect_examples():
    assert detect_reduced(parse_form("2*x^3 + 3*x^2*y + y^3")) == ReducedTriple(2, (3,), parse_form("x^3"))
    assert detect_reduced(parse_form("-2*x^3 - 3*x^2*y + y^3")) == ReducedTriple(-2, (-3,), parse_form("x^3"))
    assert detect_reduced(parse_form("x*y*z")) is None
    with pytest.raises(Cubic3Error):
        detect_reduced(parse_form("x^3"))


@given(reduced_triples())
def test_detect_inverts_assemble(t):
    assert detect_reduced(t.assemble()) == t


# --- equivalence ----------------------------------------------------------------

def test_equivalence_examples():
    t = ReducedTriple(1, (0, 0), parse_form("x^3 + y^3"))
    v = triples_equivalent(t, t, 1)
    assert v.kind == "equivalent" and v.witness == linalg.identity(2)
    p0 = detect_reduced(act(linalg.identity(3), PELL))
    p1 = detect_reduced(act(((2, 3, 0), (1, 2, 0), (11, 6, 1)), PELL))
    assert (p0.a, p1.a) == (0, 15)
    assert triples_equivalent(p0, p1, 3).kind == "definitely_not"
    one = ReducedTriple(1, (0,), parse_form("x^3"))
    minus = ReducedTriple(1, (0,), parse_form("-x^3"))
    assert triples_equivalent(one, minus, 1).kind == "definitely_not"
    assert triples_equivalent(one, one, 1).witness == ((1,),)


def test_equivalence_dimension_mismatch():
    with pytest.raises(DimensionMismatch):
        triples_equivalent(ReducedTriple(1, (0,), parse_form("x^3")),
                           ReducedTriple(1, (0, 0), parse_form("x^3 + y^3")), 1)


@settings(max_examples=40, deadline=None)
@given(reduced_triples(n=2), unimodular(2, max_entry=2))
def test_equivalence_round_trip_rule(t, m):
    # t2 := the triple of diag(1, M) . assemble(t); the witness must reproduce it
    t2 = detect_reduced(act(block(m), t.assemble()))
    assert t2.G == act(m, t.G)
    assert t2.B == linalg.matvec(linalg.transpose(m), t.B)
    v = triples_equivalent(t, t2, 2)
    if t.G.is_zero and not any(t.B):
        assert v.kind == "equivalent"
        return
    assert v.kind == "equivalent"
    w = v.witness
    assert linalg.det(w) == 1
    assert act(block(w), t.assemble()) == t2.assemble()


def test_equivalence_not_found_within_radius():
    t = ReducedTriple(1, (0, 0), parse_form("x^3 + x*y^2 + y^3"))
    m = ((5, 2), (2, 1))
    t2 = detect_reduced(act(block(m), t.assemble()))
    assert triples_equivalent(t, t2, 1).kind == "not_found_within_radius"
    assert triples_equivalent(t, t2, 5).kind == "equivalent"


def test_equivalence_invariant_mismatch():
    t1 = ReducedTriple(1, (2, 0), parse_form("x^3 + y^3"))
    t2 = ReducedTriple(1, (1, 0), parse_form("x^3 + y^3"))
    v = triples_equivalent(t1, t2, 3)
    assert v.kind == "definitely_not" and "content_B" in v.reason
    t3 = ReducedTriple(1, (0, 0), parse_form("x^3 + 2*y^3"))
    t4 = ReducedTriple(1, (0, 0), parse_form("x^3 + 3*y^3"))
    assert "disc_G" in triples_equivalent(t3, t4, 3).reason


# --- low rank -------------------------------------------------------------------

def test_low_rank_examples():
    assert low_rank_points(FERMAT, 1, 5) == [(p, 1, 1) for p in [(0, 0, 1), (0, 1, 0), (1, 0, 0)]]
    assert ((1, 1, 0), 2, 2) in low_rank_points(FERMAT, 2, 1)
    assert low_rank_points(FERMAT, 0, 5) == []


def test_low_rank_lexicographic_and_complete():
    pts = low_rank_points(PELL, 2, 2)
    assert [p for p, _, _ in pts] == sorted(p for p, _, _ in pts)
    for p, r, v in pts:
        assert r == hessian_rank(PELL, p) <= 2 and v == evaluate(PELL, p)


def test_low_rank_validates():
    with pytest.raises(ValueError):
        low_rank_points(FERMAT, 4, 1)
    with pytest.raises(ValueError):
        low_rank_points(FERMAT, 1, 0)


# --- binary triples --------------------------------------------------------------

def test_binary_examples():
    got = {(t.a, t.b, t.c) for t in enumerate_binary_triples(0, 1, 1, 50)}
    assert got == brute_force_binary(0, 1, 1, 10)
    got = {(t.a, t.b, t.c) for t in enumerate_binary_triples(2, -3, 1, 20)}
    assert got == brute_force_binary(2, -3, 1, 20)


def test_binary_unit_form_has_all_sign_patterns():
    # -I and the quarter turn lie in SL(2, Z), so c' = -1 occurs as well
    got = {(t.a, t.b, t.c) for t in enumerate_binary_triples(1, 0, 1, 50)}
    assert got == {(1, 0, 1), (-1, 0, 1), (1, 0, -1), (-1, 0, -1)}


def test_binary_rejects_zero_c():
    with pytest.raises(Cubic3Error):
        enumerate_binary_triples(1, 1, 0, 5)


@settings(max_examples=25, deadline=None)
@given(st.integers(-4, 4), st.integers(-4, 4), st.integers(-4, 4).filter(bool))
def test_binary_matches_oracle(a, b, c):
    res = enumerate_binary_triples(a, b, c, 6)
    assert {(t.a, t.b, t.c) for t in res} == brute_force_binary(a, b, c, 6)
    f = CubicForm(2, {(0, 0, 0): a, (0, 0, 1): b, (1, 1, 1): c})
    delta = binary_discriminant(f)
    for t in res:
        (t00, t01), (t10, t11) = t.witness
        assert t00 * t11 - t01 * t10 == 1
        assert t.system_det == 3 * evaluate(f, (t01, t11))
        assert act(t.witness, f) == CubicForm(2, {(0, 0, 0): t.a, (0, 0, 1): t.b, (1, 1, 1): t.c})
        if delta:
            assert delta % t.c == 0


# --- line normalisation ---------------------------------------------------------

def test_normalize_examples():
    f = parse_form("x^3 + x^2*y + y^3 + z^3")
    assert normalize_line(f) == (linalg.identity(3), f)
    scrambled = parse_form("x^3 + x^2*y + 2*x^2*z + y^3 + 6*y^2*z + 12*y*z^2 + 9*z^3")  # y <- y + 2z
    t, g = normalize_line(scrambled)
    assert t == ((1, 0, 0), (0, 1, -2), (0, 0, 1))
    assert g == f
    with pytest.raises(Cubic3Error):
        normalize_line(parse_form("x^3 + x^2*z + y^3 + z^3"))


def test_normalize_rejects_line_outside_v():
    with pytest.raises(RankError):
        normalize_line(parse_form("x^3 + x^2*y + y^3 + z^3 + y^2*z"))


def test_normalize_reports_residual_terms():
    # rank <= 2 along the line but the x1-mixed part of G is not cleared
    f = parse_form("x0^3 + x0^2*x1 + x1^3 + x1^2*x2 + x3^3")
    with pytest.raises((ShapeError, RankError)):
        normalize_line(f)


def test_normalize_rejects_non_reduced():
    with pytest.raises(ShapeError):
        normalize_line(parse_form("x^3 + x^2*y + x*y*z + z^3"))


def test_normalize_round_trip_random():
    rng = random.Random(21)
    for _ in range(25):
        n = rng.randint(3, 5)
        a, b = rng.randint(-5, 5), rng.choice([1, 2, 3, -1, -2])
        c1 = rng.randint(-5, 5)
        r = random_form(rng, n - 2, bound=4).embed(n, offset=2)
        normal = CubicForm(n, {(0, 0, 0): a, (0, 0, 1): b, (1, 1, 1): c1}) + r
        shifts = [rng.randint(-3, 3) for _ in range(n - 2)]
        s = [list(row) for row in linalg.identity(n)]
        for j, k in enumerate(shifts, start=2):
            s[1][j] = k  # x1 <- x1 + k x_j
        scrambled = act(s, normal)
        t, g = normalize_line(scrambled)
        assert g == normal
        assert linalg.det(t) == 1
        _, lin, quad, _ = split_x0(g)
        assert not quad and all(x == 0 for x in lin[1:])


def test_normalize_rational_shift():
    normal = parse_form("x^3 + 2*x^2*y + y^3 + z^3")
    scrambled = act(((1, 0, 0), (0, 1, Fraction(1, 2)), (0, 0, 1)), normal)
    assert not scrambled.is_integral or scrambled.coeff(0, 0, 2) == 1
    t, g = normalize_line(scrambled)
    assert g == normal and t[1][2] == Fraction(-1, 2)


# --- reduced-triple search -------------------------------------------------------

def test_isotropic_hyperplanes():
    # rank 1: the only isotropic hyperplane is the kernel
    assert isotropic_hyperplanes(((6, 0, 0), (0, 0, 0), (0, 0, 0))) == [(1, 0, 0)]
    # split rank 2: xy has two isotropic lines
    assert sorted(isotropic_hyperplanes(((0, 1, 0), (1, 0, 0), (0, 0, 0)))) == [(0, 1, 0), (1, 0, 0)]
    # anisotropic rank 2
    assert isotropic_hyperplanes(((1, 0, 0), (0, 1, 0), (0, 0, 0))) == []
    assert isotropic_hyperplanes(((1, 0, 0), (0, 1, 0), (0, 0, 1))) == []
    with pytest.raises(RankError):
        isotropic_hyperplanes(((0, 0), (0, 0)))


@settings(max_examples=30, deadline=None)
@given(st.lists(st.integers(-6, 6), min_size=3, max_size=3).filter(lambda v: linalg.content(v) == 1),
       st.integers(3, 8))
def test_complement_in_box(u, radius):
    w = linalg.primitive(linalg.bezout_vector(u)[1])
    if abs(sum(a * b for a, b in zip(w, u))) != 1:
        return
    comp = complement_in_box(u, w, radius)
    if comp is None:
        return
    t = linalg.transpose((tuple(u),) + comp)
    assert linalg.det(t) == 1
    assert all(abs(x) <= radius for v in comp for x in v)
    assert all(sum(a * b for a, b in zip(w, v)) == 0 for v in comp)


def test_complement_exact_for_planes():
    # the reduced basis of {z = 0} is e0, e1, but a complement to u = (7, 3, 1) exists in a small box
    u, w = (7, 3, 1), (0, 0, 1)
    comp = complement_in_box(u, w, 3)
    assert comp is not None
    assert linalg.det(linalg.transpose((u,) + comp)) == 1


def test_search_results_are_reduced():
    for f in (FERMAT, PELL, parse_form("2*x^3 + 3*y^3 + z^3")):
        for d in find_reduced_triples(f, 4):
            assert linalg.det(d.matrix) == 1
            assert all(abs(x) <= 4 for row in d.matrix for x in row)
            assert detect_reduced(act(d.matrix, f)) == d.triple


def test_search_finds_random_conjugates():
    rng = random.Random(4)
    base = ReducedTriple(2, (3, 0), parse_form("x^3 + y^3")).assemble()
    for _ in range(5):
        t = random_unimodular(rng, 3, max_entry=2)
        f = act(linalg.inverse(t), base)
        found = find_reduced_triples(f, 6)
        assert any(d.triple.a == 2 for d in found)


def test_estimate_S_examples():
    assert estimate_S(FERMAT, 2) >= 1
    assert estimate_S(PELL, 12) >= 15
    assert estimate_S(parse_form("x^3 + y^3 + z^3 + x*y*z"), 3) == 0
    assert estimate_S(parse_form("-2*x^3 - 3*x^2*y + y^3"), 3) >= 2


def test_estimate_S_monotone():
    for f in (PELL, parse_form("2*x^3 + 3*y^3 + z^3"), parse_form("-2*x^3 - 3*x^2*y + y^3")):
        values = [estimate_S(f, r) for r in range(1, 8)]
        assert values == sorted(values)


def test_threads_give_identical_results():
    f = parse_form("2*x^3 + 3*y^3 + z^3")
    assert find_reduced_triples(f, 5, threads=2) == find_reduced_triples(f, 5)


def test_classes_merge_equivalent_triples():
    classes = reduced_triple_classes(FERMAT, 4)
    assert sorted(c.representative.a for c in classes) == [-1, 1]
    assert sum(len(c.members) for c in classes) == len(find_reduced_triples(FERMAT, 4))


def test_classify_keeps_distinct_a_apart():
    ts = [ReducedTriple(a, (0, 0), parse_form("x^3 + y^3")) for a in (1, 2, 1)]
    classes = classify_triples(ts)
    assert [len(c.members) for c in classes] == [2, 1]


def test_search_with_four_variables():
    f = CubicForm(4, {(i, i, i): 1 for i in range(4)})
    found = find_reduced_triples(f, 1)
    assert {d.triple.a for d in found} == {-1, 1}


# --- point contractions -----------------------------------------------------------

def test_point_contraction_examples():
    pc = point_contraction_extract(parse_form("x^3 + y^3"), (1, 0), 3)
    assert pc.a == 1 and pc.form_x == parse_form("x^3")
    pc = point_contraction_extract(FERMAT, (1, 0, 0), 3)
    assert pc.a == 1 and pc.form_x == parse_form("x^3 + y^3") and pc.det == 1
    with pytest.raises(RankError):
        point_contraction_extract(FERMAT, (1, 1, 1), 3)


def test_point_contraction_nontrivial_index():
    # alpha = (1, 1) for 2x^3 - 3x^2 y ... built so that the kernel lattice has index > 1
    g = parse_form("x^3 + y^3 + z^3")
    t = ((1, 1, 0), (0, 1, 0), (0, 0, 1))
    f = act(linalg.inverse(t), g)
    pc = point_contraction_extract(f, (1, 0, 0))
    assert pc.a == 1
    assert act(pc.matrix, f) == CubicForm(3, {(0, 0, 0): pc.a}) + pc.form_x.embed(3, offset=1)
    assert 0 < abs(pc.det) <= abs(pc.a) ** 3


def test_point_contraction_reassembles_random():
    rng = random.Random(9)
    for _ in range(20):
        n = rng.randint(2, 4)
        a = rng.choice([1, 2, -1, 3])
        fx = random_form(rng, n - 1, bound=4)
        base = CubicForm(n, {(0, 0, 0): a}) + fx.embed(n, offset=1)
        t = random_unimodular(rng, n, max_entry=3)
        f = act(linalg.inverse(t), base)
        alpha = tuple(r[0] for r in t)
        pc = point_contraction_extract(f, alpha)
        assert pc.a == a * (1 if alpha == linalg.primitive(alpha) else -1)
        assert act(pc.matrix, f) == CubicForm(n, {(0, 0, 0): pc.a}) + pc.form_x.embed(n, offset=1)
        assert restrict(f, pc.basis) == pc.form_x


def test_point_contraction_errors():
    with pytest.raises(Cubic3Error):
        point_contraction_extract(parse_form("x^2*y + y^3", 2), (1, 0))  # alpha^3 = 0
    with pytest.raises(Cubic3Error):
        point_contraction_extract(parse_form("x^3 + x*y^2 + y^3"), (1, 0))  # mixed terms
    with pytest.raises(DimensionMismatch):
        point_contraction_extract(FERMAT, (1, 0))

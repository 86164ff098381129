"""Explicit families: Pell-indexed reduced forms of one singular ternary cubic, and a P^3 blow-up fixture."""

from dataclasses import dataclass

from . import linalg
from .forms import CubicForm, act, build_from_intersections, parse_form, restrict
from .invariants import singular_point_search, ternary_discriminant


@dataclass(frozen=True)
class PellSolution:
    s: int
    t: int


def pell_solutions(count):
    """First ``count`` solutions of ``s^2 - 3 t^2 = 1``, starting from ``(1, 0)``."""
    if count < 1:
        raise ValueError("count must be at least 1")
    out, s, t = [], 1, 0
    for _ in range(count):
        assert s * s - 3 * t * t == 1
        out.append(PellSolution(s, t))
        s, t = 2 * s + 3 * t, s + 2 * t
    return out


def pell_form(a, b):
    """``a x^3 + b x^2 y + x^2 z - 3 y^2 z``."""
    return CubicForm(3, {(0, 0, 0): a, (0, 0, 1): b, (0, 0, 2): 1, (1, 1, 2): -3})


def pell_matrix(a, b, alpha, beta):
    m31 = beta * (3 * b * beta**2 + 9 * a * alpha * beta + 2 * b * alpha**2)
    m32 = 3 * beta**2 * (3 * a * beta + b * alpha)
    return ((alpha, 3 * beta, 0), (beta, alpha, 0), (m31, m32, 1))


@dataclass(frozen=True)
class PellMember:
    solution: PellSolution
    matrix: tuple
    A: int
    B: int


def pell_family(a, b, count):
    """Matrices ``M`` with ``M . F = A X^3 + B X^2 Y + X^2 Z - 3 Y^2 Z`` for ``F = pell_form(a, b)``."""
    f = pell_form(a, b)
    out = []
    for sol in pell_solutions(count):
        al, be = sol.s, sol.t
        m = pell_matrix(a, b, al, be)
        big_a = 3 * b * al**2 * be + 3 * b * be**3 + a * al**3 + 9 * a * al * be**2
        big_b = 9 * a * be**3 + 9 * b * al * be**2 + 9 * a * al**2 * be + b * al**3
        d = linalg.det(m)
        if d != 1:
            raise AssertionError(f"det M = {d} at (alpha, beta) = ({al}, {be})")
        got = act(m, f)
        if got != pell_form(big_a, big_b):
            raise AssertionError(f"M . F = {got} does not match A = {big_a}, B = {big_b}")
        out.append(PellMember(sol, m, big_a, big_b))
    return out


@dataclass(frozen=True)
class BlowupFixture:
    stage1_h_basis: CubicForm
    stage1: CubicForm
    stage1_basis: tuple
    stage2_inputs: dict
    stage2: CubicForm
    discriminant: object
    nodes: tuple


def _phi_from_classes():
    # H^3 = 1, H^2 (H - E) = 1, H (H - E)^2 = 0, (H - E)^3 = 0 in the basis (H, E)
    return {(0, 0, 0): 1, (0, 0, 1): 0, (0, 1, 1): -1, (1, 1, 1): -2}


def example_blowup_p3(box=3):
    """Two-stage blow-up of P^3: first a line, then a curve on the result."""
    from .mmp import ThreefoldState, blowup_curve

    phi = _phi_from_classes()
    f_h = build_from_intersections(2, lambda i, j, k: phi[tuple(sorted((i, j, k)))])
    basis = ((1, 0), (1, -1))  # L1 = H, L2 = H - E
    stage1 = restrict(f_h, basis)
    inputs = {"g": 0, "E3": 1, "betaC": (1, 1)}
    state = ThreefoldState(b2=2, b3=0, Ib3=0, K3=-54, F=stage1)
    stage2 = blowup_curve(state, **inputs).F
    assert stage2 == parse_form("x^3 - 3*x^2*y - 3*x^2*z + y^3 + 3*y^2*z")
    nodes = tuple(singular_point_search(stage2, box))
    return BlowupFixture(f_h, stage1, basis, inputs, stage2, ternary_discriminant(stage2), nodes)

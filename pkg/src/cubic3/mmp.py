"""Bookkeeping of Chern numbers and Betti numbers along threefold divisorial contractions.

States are immutable; every transition returns a new :class:`ThreefoldState`
with a :class:`ContractionRecord` appended to its history.  ``K3`` is kept as
an exact rational.
"""

import shlex
from dataclasses import dataclass, field
from fractions import Fraction
from math import lcm

from .errors import BoundViolation, Cubic3Error, DimensionMismatch, ParseError, ShapeError
from .forms import CubicForm, parse_form
from .reduction import detect_reduced, estimate_S, point_contraction_extract


def _q(x):
    x = Fraction(x)
    return x.numerator if x.denominator == 1 else x


@dataclass(frozen=True)
class Basket:
    indices: tuple = ()

    def __post_init__(self):
        idx = tuple(sorted(int(r) for r in self.indices))
        if any(r < 2 for r in idx):
            raise Cubic3Error("basket indices must be at least 2")
        object.__setattr__(self, "indices", idx)

    @property
    def Xi(self):
        return sum(self.indices)

    @property
    def e(self):
        return _q(sum((r - Fraction(1, r) for r in self.indices), Fraction(0)))

    @property
    def R(self):
        """Least common multiple of the indices (1 for the empty basket)."""
        return lcm(*self.indices) if self.indices else 1


@dataclass(frozen=True)
class BasketStats:
    Xi: int
    e: object
    index_check: bool


def basket_stats(basket):
    if not isinstance(basket, Basket):
        basket = Basket(tuple(basket))
    xi = basket.Xi
    return BasketStats(xi, basket.e, all((4 * xi) % r == 0 for r in basket.indices))


def chi_riemann_roch(K_dot_c2, basket=Basket()):
    """``chi(O) = (-K.c2 + e) / 24``."""
    if not isinstance(basket, Basket):
        basket = Basket(tuple(basket))
    return _q((-Fraction(K_dot_c2) + basket.e) / 24)


@dataclass(frozen=True)
class BoundsReport:
    volume_bound: int
    point_bound: int
    curve_bound: int
    bmy_ok: bool
    xi_cap: int


def topological_bounds(b2, b3, S=0, K3=0, K_dot_c2=0):
    if b2 < 0 or b3 < 0 or S < 0:
        raise Cubic3Error("b2, b3 and S must be nonnegative")
    return BoundsReport(
        volume_bound=6 * b2 + 36 * b3,
        point_bound=2**10 * b2 * b2,
        curve_bound=2 * S + 6 * (b3 + 1),
        bmy_ok=Fraction(K3) <= 3 * Fraction(K_dot_c2),
        xi_cap=2 * b2,
    )


@dataclass(frozen=True)
class ContractionRecord:
    """``kind`` is ``"blowup_curve"``, ``"contract_to_point"`` or ``"contract_to_curve"``."""

    kind: str
    params: dict
    delta_K3: object
    bound_checked: bool
    checks: dict = field(default_factory=dict)
    warnings: tuple = ()


@dataclass(frozen=True)
class ThreefoldState:
    b2: int
    b3: int
    Ib3: int
    K3: object
    F: CubicForm
    basket: Basket = Basket()
    history: tuple = field(default=(), compare=False)

    def __post_init__(self):
        if self.b2 < 1 or self.b3 < 0 or self.Ib3 < 0:
            raise Cubic3Error("need b2 >= 1, b3 >= 0 and Ib3 >= 0")
        if self.F.nvars != self.b2:
            raise DimensionMismatch(f"cubic form has {self.F.nvars} variables but b2 = {self.b2}")
        object.__setattr__(self, "K3", _q(self.K3))
        if not isinstance(self.basket, Basket):
            object.__setattr__(self, "basket", Basket(tuple(self.basket)))

    @property
    def warnings(self):
        return [w for rec in self.history for w in rec.warnings]

    def as_dict(self):
        return {
            "b2": self.b2,
            "b3": self.b3,
            "Ib3": self.Ib3,
            "K3": self.K3,
            "F": str(self.F),
            "basket": list(self.basket.indices),
        }


def p3_state():
    """Projective space: ``b2 = 1``, ``K^3 = -64``, form ``H^3 = 1``."""
    return ThreefoldState(b2=1, b3=0, Ib3=0, K3=-64, F=CubicForm(1, {(0, 0, 0): 1}))


def blowup_curve(state, g, E3, betaC):
    """Blow up a smooth curve of genus ``g`` in the smooth locus.

    The new class ``x0`` is the exceptional divisor: ``F' = E3 x0^3 - 3 x0^2 sum(betaC_i x_i) + F``.
    """
    betaC = tuple(int(b) for b in betaC)
    if g < 0:
        raise Cubic3Error("genus must be nonnegative")
    if len(betaC) != state.b2:
        raise DimensionMismatch(f"betaC has length {len(betaC)}, expected b2 = {state.b2}")
    n = state.b2 + 1
    coeffs = {(0, 0, 0): E3}
    for i, b in enumerate(betaC, start=1):
        coeffs[(0, 0, i)] = -3 * b
    f_new = CubicForm(n, coeffs) + state.F.embed(n, offset=1)
    delta = _q(-2 * Fraction(E3) + 6 - 6 * g)
    rec = ContractionRecord("blowup_curve", {"g": g, "E3": E3, "betaC": betaC}, delta, False)
    return ThreefoldState(
        b2=n,
        b3=state.b3 + 2 * g,
        Ib3=state.Ib3 + 2 * g,
        K3=Fraction(state.K3) + delta,
        F=f_new,
        basket=state.basket,
        history=state.history + (rec,),
    )


def contract_to_point(state, a, E3, alpha=None, basket=None):
    """Contract the divisor ``x0`` (or the class ``alpha``) to a point with discrepancy ``a``.

    ``K3`` drops by ``a^3 E3``.  Without ``alpha`` the form must already be
    ``c x0^3 + F_X``; with ``alpha`` the splitting is computed.  ``basket``
    replaces the stored basket of the new state when given.
    """
    a, E3 = Fraction(a), Fraction(E3)
    if a <= 0:
        raise Cubic3Error("discrepancy a must be positive")
    if state.b2 < 2:
        raise Cubic3Error("need b2 >= 2 to contract a divisor")
    ae = a * E3
    if not 0 < ae <= 4:
        raise BoundViolation(f"a*E3 = {_q(ae)} lies outside (0, 4]", aE3=_q(ae))
    warnings = []
    R = state.basket.R
    if E3 < Fraction(1, R):
        warnings.append(f"E3 = {_q(E3)} is below 1/R = 1/{R}")
    delta = a**3 * E3
    cap = 2**10 * state.b2**2
    if delta > cap:
        raise BoundViolation(f"K3 drop {_q(delta)} exceeds 2^10 b2^2 = {cap}")
    if alpha is not None:
        f_new = point_contraction_extract(state.F, alpha).form_x
    else:
        triple = detect_reduced(state.F)
        if triple is None or any(triple.B):
            raise ShapeError("form is not split as c x0^3 + F_X; pass alpha or change basis first")
        f_new = triple.G
    checks = {"aE3_in_range": True, "E3_at_least_1_over_R": E3 >= Fraction(1, R), "delta_le_point_bound": True}
    rec = ContractionRecord(
        "contract_to_point",
        {"a": _q(a), "E3": _q(E3), "alpha": tuple(alpha) if alpha is not None else None},
        _q(delta),
        True,
        checks,
        tuple(warnings),
    )
    return ThreefoldState(
        b2=state.b2 - 1,
        b3=state.b3,
        Ib3=state.Ib3,
        K3=Fraction(state.K3) - delta,
        F=f_new,
        basket=state.basket if basket is None else basket,
        history=state.history + (rec,),
    )


def contract_to_curve(state, g, radius=3, threads=1):
    """Invert a curve blow-up whose exceptional class is ``x0``.

    The form must read ``a x0^3 + x0^2 sum(b_i x_i) + G`` with every ``b_i``
    divisible by 3.  The change in ``K3`` is compared against
    ``2 S + 6 (b3 + 1)`` with ``S`` estimated by a search of the given radius;
    since that estimate can only undershoot, a failure is a warning.
    """
    if state.b2 < 2:
        raise Cubic3Error("need b2 >= 2 to contract a divisor")
    if g < 0:
        raise Cubic3Error("genus must be nonnegative")
    if state.b3 - 2 * g < 0 or state.Ib3 - 2 * g < 0:
        raise Cubic3Error(f"genus {g} exceeds b3/2 = {state.b3}/2")
    triple = detect_reduced(state.F)
    if triple is None:
        raise ShapeError("form is not in reduced shape in the current basis")
    if any(b % 3 for b in triple.B):
        raise ShapeError(f"x0^2 x_i coefficients {list(triple.B)} are not divisible by 3")
    E3 = triple.a
    delta = _q(-2 * Fraction(E3) + 6 - 6 * g)
    s_est = estimate_S(state.F, radius, threads)
    bound = 2 * s_est + 6 * (state.b3 + 1)
    ok = abs(delta) <= bound
    warnings = () if ok else (f"|dK3| = {abs(delta)} exceeds 2*S_est + 6(b3+1) = {bound} (S_est is a lower estimate)",)
    rec = ContractionRecord(
        "contract_to_curve",
        {"g": g, "E3": E3, "betaC": tuple(-b // 3 for b in triple.B), "radius": radius},
        delta,
        True,
        {"S_estimate": s_est, "curve_bound": bound, "curve_bound_ok": ok},
        warnings,
    )
    return ThreefoldState(
        b2=state.b2 - 1,
        b3=state.b3 - 2 * g,
        Ib3=state.Ib3 - 2 * g,
        K3=Fraction(state.K3) - delta,
        F=triple.G,
        basket=state.basket,
        history=state.history + (rec,),
    )


# ---------------------------------------------------------------------------
# scenario files

@dataclass(frozen=True)
class SimulationResult:
    state: ThreefoldState
    assertions: tuple

    @property
    def ok(self):
        return all(a["ok"] for a in self.assertions)


def _csv_ints(text):
    return tuple(int(x) for x in text.split(",") if x.strip())


def _kv(tokens, lineno):
    out = {}
    for tok in tokens:
        key, sep, value = tok.partition("=")
        if not sep:
            raise ParseError(f"line {lineno}: expected key=value, got {tok!r}", position=lineno)
        out[key] = value
    return out


def _need(args, keys, lineno, optional=()):
    missing = [k for k in keys if k not in args]
    unknown = [k for k in args if k not in keys and k not in optional]
    if missing or unknown:
        raise ParseError(f"line {lineno}: missing {missing} / unknown {unknown} arguments", position=lineno)


def simulate(text, radius=3, threads=1):
    """Replay a scenario.  Without an ``init`` line the run starts from projective space."""
    state = p3_state()
    assertions = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        cmd, *rest = shlex.split(line)
        args = _kv(rest, lineno)
        try:
            if cmd == "init":
                _need(args, ("b2", "F"), lineno, ("b3", "Ib3", "K3", "basket"))
                b2 = int(args["b2"])
                state = ThreefoldState(
                    b2=b2,
                    b3=int(args.get("b3", 0)),
                    Ib3=int(args.get("Ib3", args.get("b3", 0))),
                    K3=Fraction(args.get("K3", "0")),
                    F=parse_form(args["F"], b2),
                    basket=Basket(_csv_ints(args.get("basket", ""))),
                )
            elif cmd == "blowup-curve":
                _need(args, ("g", "E3", "betaC"), lineno)
                state = blowup_curve(state, int(args["g"]), int(args["E3"]), _csv_ints(args["betaC"]))
            elif cmd == "contract-point":
                _need(args, ("a", "E3"), lineno, ("alpha", "basket"))
                alpha = _csv_ints(args["alpha"]) if "alpha" in args else None
                basket = Basket(_csv_ints(args["basket"])) if "basket" in args else None
                state = contract_to_point(state, Fraction(args["a"]), Fraction(args["E3"]), alpha, basket)
            elif cmd == "contract-curve":
                _need(args, ("g",), lineno, ("radius",))
                state = contract_to_curve(state, int(args["g"]), int(args.get("radius", radius)), threads)
            elif cmd == "assert":
                _need(args, (), lineno, ("K3", "b2", "b3", "Ib3", "F"))
                for key, value in args.items():
                    if key == "F":
                        expected, actual = parse_form(value, state.b2), state.F
                        expected_out, actual_out = str(expected), str(actual)
                    elif key == "K3":
                        expected, actual = Fraction(value), Fraction(state.K3)
                        expected_out, actual_out = _q(expected), state.K3
                    else:
                        expected = expected_out = int(value)
                        actual = actual_out = getattr(state, key)
                    assertions.append(
                        {"line": lineno, "field": key, "expected": expected_out, "actual": actual_out,
                         "ok": expected == actual}
                    )
            else:
                raise ParseError(f"line {lineno}: unknown command {cmd!r}", position=lineno)
        except (ValueError, ZeroDivisionError) as exc:
            if isinstance(exc, Cubic3Error):
                raise
            raise ParseError(f"line {lineno}: {exc}", position=lineno) from exc
    return SimulationResult(state, tuple(assertions))

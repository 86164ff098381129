"""Regenerate src/cubic3/_aronhold_tables.py.

Solves for the SL(3)-invariant polynomials of degree 4 and 6 in the ten raw
coefficients of a ternary cubic (annihilated by the six off-diagonal
infinitesimal generators, torus weight (d, d, d)), then scales them so that on

    a x^3 + x^2 (b y + c z) + d y^3 + z^3

they read S = b c d and T = 27 a^2 d^2 + 4 b^3 d + 4 c^3 d^2.

Requires sympy; runs in about a minute.
"""

import itertools
import sys

import sympy as sp

x, y, z = sp.symbols("x y z")
XYZ = (x, y, z)
EXPS = sorted((e for e in itertools.product(range(4), repeat=3) if sum(e) == 3), reverse=True)
A = {e: sp.Symbol("a%d%d%d" % e) for e in EXPS}
F = sum(A[e] * x**e[0] * y**e[1] * z**e[2] for e in EXPS)


def invariant(degree):
    mons = [
        combo for combo in itertools.combinations_with_replacement(EXPS, degree)
        if [sum(e[i] for e in combo) for i in range(3)] == [degree] * 3
    ]
    cs = sp.symbols(f"c0:{len(mons)}")
    inv = sum(c * sp.Mul(*[A[e] for e in m]) for c, m in zip(cs, mons))
    eqs = []
    for p, q in itertools.permutations(range(3), 2):
        d_f = sp.Poly(sp.expand(XYZ[p] * sp.diff(F, XYZ[q])), *XYZ)
        delta = {e: d_f.coeff_monomial(x**e[0] * y**e[1] * z**e[2]) for e in EXPS}
        expr = sp.expand(sum(sp.diff(inv, A[e]) * delta[e] for e in EXPS))
        eqs += sp.Poly(expr, *A.values()).coeffs()
    (sol,) = sp.linsolve(eqs, cs)
    inv = sp.expand(inv.subs(dict(zip(cs, sol))))
    free = sorted(inv.free_symbols & set(cs), key=str)
    assert len(free) == 1, "invariant space should be one-dimensional"
    return inv.subs(free[0], 1)


def emit(name, poly, denom):
    inv_names = {v: "%d%d%d" % k for k, v in A.items()}
    p = sp.Poly(sp.expand(poly * denom), *A.values())
    terms = []
    for mon, c in p.terms():
        assert c.is_integer
        factors = []
        for sym, e in zip(A.values(), mon):
            factors += [inv_names[sym]] * e
        terms.append((int(c), tuple(factors)))
    terms.sort(key=lambda t: t[1])
    lines = [f"{name}_DENOM = {denom}", f"{name}_TERMS = ("]
    lines += [f"    ({c}, {f!r})," for c, f in terms]
    lines.append(")")
    return "\n".join(lines)


def main(path):
    a, b, c, d = sp.symbols("a b c d")
    family = {A[e]: 0 for e in EXPS}
    family.update({A[(3, 0, 0)]: a, A[(2, 1, 0)]: b, A[(2, 0, 1)]: c, A[(0, 3, 0)]: d, A[(0, 0, 3)]: 1})
    s = invariant(4)
    t = invariant(6)
    s = sp.expand(s * b * c * d / sp.factor(s.subs(family)))
    t = sp.expand(t * (27 * a**2 * d**2 + 4 * b**3 * d + 4 * c**3 * d**2) / sp.factor(t.subs(family)))
    header = (
        '"""Coefficient tables of the degree-4 and degree-6 invariants of ternary cubics.\n\n'
        "Each term is ``(integer weight, factors)`` where a factor ``\"ijk\"`` names the raw\n"
        "coefficient of ``x^i y^j z^k``.  The invariant equals ``sum(weight * prod) / DENOM``.\n"
        'Generated by ``tools/derive_aronhold.py``.\n"""\n\n'
    )
    with open(path, "w") as fh:
        fh.write(header + emit("S", s, 144) + "\n\n" + emit("T", t, 216) + "\n")


if __name__ == "__main__":
    main(sys.argv[1] if len(sys.argv) > 1 else "src/cubic3/_aronhold_tables.py")

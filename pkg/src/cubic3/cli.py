"""``cubic3`` command-line front end.

Every subcommand returns a :class:`CommandResult`; ``main`` prints it as plain
text or, with ``--json``, as deterministic JSON.  Exit codes: 0 success,
1 domain error, 2 usage error.

JSON rendering: integers with absolute value of at least 2**53 become decimal
strings, rationals become ``"p/q"`` strings and forms use the canonical
polynomial grammar.
"""

import argparse
import json
import os
import sys
from dataclasses import dataclass, field
from fractions import Fraction

from . import families, forms, invariants, linalg, mmp, reduction
from .errors import Cubic3Error

SAFE_INT = 2**53


@dataclass
class CommandResult:
    op: str
    input_echo: str
    result: object = None
    warnings: list = field(default_factory=list)
    exit_code: int = 0
    error: dict = None
    usage: str = None

    def payload(self):
        out = {"op": self.op, "input": self.input_echo, "exit_code": self.exit_code}
        if self.error is not None:
            out["error"] = self.error
        else:
            out["result"] = self.result
            out["warnings"] = list(self.warnings)
        return out

    def to_json(self):
        return json.dumps(to_jsonable(self.payload()), sort_keys=True, indent=2)

    def to_text(self):
        if self.error is not None:
            return f"error [{self.error['code']}]: {self.error['message']}"
        lines = _text_lines(to_jsonable(self.result))
        lines += [f"warning: {w}" for w in self.warnings]
        return "\n".join(lines)


def to_jsonable(x):
    if isinstance(x, bool) or x is None or isinstance(x, str):
        return x
    if isinstance(x, int):
        return str(x) if abs(x) >= SAFE_INT else x
    if isinstance(x, Fraction):
        return f"{x.numerator}/{x.denominator}" if x.denominator != 1 else to_jsonable(x.numerator)
    if isinstance(x, forms.CubicForm):
        return str(x)
    if isinstance(x, dict):
        return {str(k): to_jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [to_jsonable(v) for v in x]
    raise TypeError(f"cannot render {type(x).__name__}")


def _text_lines(value, prefix=""):
    if isinstance(value, dict):
        lines = []
        for k, v in value.items():
            if _has_dict(v):
                lines.append(f"{prefix}{k}:")
                lines += _text_lines(v, prefix + "  ")
            else:
                lines.append(f"{prefix}{k}: {_flat(v)}")
        return lines
    if isinstance(value, list):
        lines = []
        for v in value:
            sub = _text_lines(v, prefix + "  ")
            if sub:
                lines.append(f"{prefix}- {sub[0].strip()}")
                lines += sub[1:]
        return lines
    return [f"{prefix}{_flat(value)}"]


def _has_dict(v):
    if isinstance(v, dict):
        return bool(v) and any(isinstance(e, (dict, list)) for e in v.values())
    if isinstance(v, list):
        return any(isinstance(e, dict) or _has_dict(e) for e in v)
    return False


def _flat(v):
    if isinstance(v, list):
        return "[" + ", ".join(_flat(e) for e in v) + "]"
    if isinstance(v, dict):
        return "{" + ", ".join(f"{k}: {_flat(e)}" for k, e in v.items()) + "}"
    if v is None:
        return "none"
    if isinstance(v, bool):
        return str(v).lower()
    return str(v)


# ---------------------------------------------------------------------------
# argument helpers

def _ints(text):
    try:
        return tuple(int(x) for x in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def _rational(text):
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"expected a rational number, got {text!r}")


def _matrix(text):
    """Rows separated by ``;``, entries by ``,``; entries may be rationals."""
    try:
        rows = [[_rational(x) for x in row.split(",")] for row in text.split(";")]
        return linalg.as_matrix([[linalg._normalize(x) for x in r] for r in rows])
    except (ValueError, argparse.ArgumentTypeError):
        raise argparse.ArgumentTypeError(f"malformed matrix {text!r}")


def _threads(args):
    env = os.environ.get("CUBIC3_THREADS")
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            raise Cubic3Error(f"CUBIC3_THREADS must be an integer, got {env!r}")
    return max(1, getattr(args, "threads", 1) or 1)


def _nondeg(verdict):
    return {"kind": verdict.kind, "witness": verdict.witness, "samples": verdict.samples}


def _triple(t):
    return {"a": t.a, "B": list(t.B), "G": t.G}


# ---------------------------------------------------------------------------
# subcommands

def cmd_invariants(args, warnings):
    f = forms.parse_form(args.form)
    out = {"form": f, "nvars": f.nvars, "content": forms.content(f) if f.is_integral else None}
    if f.nvars == 2:
        out["discriminant"] = invariants.binary_discriminant(f)
    elif f.nvars == 3:
        st = invariants.aronhold_ST(f)
        out.update({"S": st.S, "T": st.T, "Delta": st.Delta})
    else:
        warnings.append(f"no discriminant implemented for {f.nvars} variables")
    out["nondegenerate"] = _nondeg(forms.is_nondegenerate(f))
    if args.box:
        out["singular_points"] = invariants.singular_point_search(f, args.box)
    return f, out


def cmd_rank(args, warnings):
    f = forms.parse_form(args.form)
    value, grad, hess = forms.evaluate_all(f, args.point)
    return f, {
        "point": forms.point(args.point),
        "rank": forms.hessian_rank(f, args.point),
        "value": value,
        "gradient": grad,
        "hessian": hess,
    }


def cmd_act(args, warnings):
    f = forms.parse_form(args.form)
    g = forms.act(args.matrix, f)
    if f.is_integral and not g.is_integral:
        warnings.append("result has rational coefficients")
    return f, {"matrix": args.matrix, "det": linalg.det(args.matrix), "form": g, "integral": g.is_integral}


def cmd_reduce(args, warnings):
    f = forms.parse_form(args.form)
    t = reduction.detect_reduced(f)
    out = {"reduced": t is not None, "triple": _triple(t) if t else None}
    if args.radius:
        found = reduction.find_reduced_triples(f, args.radius, _threads(args))
        classes = reduction.classify_triples([d.triple for d in found], args.equiv_radius)
        out["search"] = {
            "radius": args.radius,
            "discoveries": len(found),
            "classes": [{"triple": _triple(c.representative), "size": len(c.members)} for c in classes],
            "S_estimate": max((abs(d.triple.a) for d in found), default=0),
        }
    return f, out


def cmd_equiv(args, warnings):
    f1, f2 = forms.parse_form(args.form1), forms.parse_form(args.form2)
    t1, t2 = reduction.detect_reduced(f1), reduction.detect_reduced(f2)
    if t1 is None or t2 is None:
        raise Cubic3Error("both forms must already be in reduced shape")
    v = reduction.triples_equivalent(t1, t2, args.radius)
    return f"{f1} ; {f2}", {"verdict": v.kind, "witness": v.witness, "reason": v.reason, "radius": v.radius}


def cmd_enumerate_binary(args, warnings):
    res = reduction.enumerate_binary_triples(args.a, args.b, args.c, args.bound)
    f = reduction.binary_form(args.a, args.b, args.c)
    return f, {
        "discriminant": invariants.binary_discriminant(f),
        "triples": [
            {"a": t.a, "b": t.b, "c": t.c, "witness": t.witness, "system_det": t.system_det} for t in res
        ],
    }


def cmd_lowrank(args, warnings):
    f = forms.parse_form(args.form)
    pts = reduction.low_rank_points(f, args.max_rank, args.box)
    return f, {"points": [{"point": p, "rank": r, "value": v} for p, r, v in pts]}


def cmd_normalize_line(args, warnings):
    f = forms.parse_form(args.form)
    t, g = reduction.normalize_line(f)
    return f, {"matrix": t, "form": g}


def cmd_estimate_s(args, warnings):
    f = forms.parse_form(args.form)
    s = reduction.estimate_S(f, args.radius, _threads(args))
    warnings.append("S estimate is a lower bound from a bounded search")
    return f, {"radius": args.radius, "S_estimate": s}


def cmd_extract_point(args, warnings):
    f = forms.parse_form(args.form)
    pc = reduction.point_contraction_extract(f, args.alpha, args.radius)
    return f, {"a": pc.a, "F_X": pc.form_x, "basis": pc.basis, "matrix": pc.matrix, "det": pc.det}


def cmd_pell(args, warnings):
    fam = families.pell_family(args.a, args.b, args.count)
    return families.pell_form(args.a, args.b), {
        "members": [
            {"alpha": m.solution.s, "beta": m.solution.t, "M": m.matrix, "det": linalg.det(m.matrix),
             "A": m.A, "B": m.B}
            for m in fam
        ]
    }


def cmd_fixtures(args, warnings):
    fx = families.example_blowup_p3()
    return "p3-blowup", {
        "stage1_h_basis": fx.stage1_h_basis,
        "stage1_basis": fx.stage1_basis,
        "stage1": fx.stage1,
        "stage2_inputs": fx.stage2_inputs,
        "stage2": fx.stage2,
        "Delta": fx.discriminant,
        "nodes": fx.nodes,
    }


def cmd_simulate(args, warnings):
    try:
        with open(args.file) as fh:
            text = fh.read()
    except OSError as exc:
        raise Cubic3Error(f"cannot read scenario: {exc.strerror}")
    res = mmp.simulate(text, radius=args.radius, threads=_threads(args))
    warnings.extend(res.state.warnings)
    history = [
        {"kind": r.kind, "params": r.params, "delta_K3": r.delta_K3, "bound_checked": r.bound_checked,
         "checks": r.checks, "warnings": list(r.warnings)}
        for r in res.state.history
    ]
    return args.file, {"state": res.state.as_dict(), "history": history, "assertions": list(res.assertions),
                       "ok": res.ok}


def cmd_bounds(args, warnings):
    rep = mmp.topological_bounds(args.b2, args.b3, args.S, args.K3, args.Kc2)
    out = {
        "volume_bound": rep.volume_bound,
        "point_bound": rep.point_bound,
        "curve_bound": rep.curve_bound,
        "bmy_ok": rep.bmy_ok,
        "xi_cap": rep.xi_cap,
    }
    if args.basket is not None:
        stats = mmp.basket_stats(args.basket)
        out["basket"] = {"Xi": stats.Xi, "e": stats.e, "index_check": stats.index_check,
                         "chi": mmp.chi_riemann_roch(args.Kc2, args.basket)}
    return f"b2={args.b2} b3={args.b3}", out


COMMANDS = {
    "invariants": cmd_invariants,
    "rank": cmd_rank,
    "act": cmd_act,
    "reduce": cmd_reduce,
    "equiv": cmd_equiv,
    "enumerate-binary": cmd_enumerate_binary,
    "lowrank": cmd_lowrank,
    "normalize-line": cmd_normalize_line,
    "estimate-s": cmd_estimate_s,
    "extract-point": cmd_extract_point,
    "pell": cmd_pell,
    "fixtures": cmd_fixtures,
    "simulate": cmd_simulate,
    "bounds": cmd_bounds,
}


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _UsageError(f"{self.format_usage().strip()}\n{self.prog}: error: {message}")


def build_parser():
    common = _Parser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit JSON instead of plain text")
    threads = _Parser(add_help=False)
    threads.add_argument("--threads", type=int, default=1, help="worker processes (CUBIC3_THREADS overrides)")

    p = _Parser(prog="cubic3", description="Exact tools for integral cubic forms and threefold bookkeeping.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name, help_, *parents):
        return sub.add_parser(name, help=help_, parents=[common, *parents])

    s = add("invariants", "discriminant, S, T and non-degeneracy")
    s.add_argument("form")
    s.add_argument("--box", type=int, default=0, help="also search singular points in this box")

    s = add("rank", "value, gradient, Hessian and its rank at a point")
    s.add_argument("form")
    s.add_argument("--point", type=_ints, required=True)

    s = add("act", "substitute x -> T x")
    s.add_argument("form")
    s.add_argument("--matrix", type=_matrix, required=True, help='rows ";"-separated, e.g. "0,1;1,0"')

    s = add("reduce", "detect reduced shape; with --radius search SL(n+1, Z)", threads)
    s.add_argument("form")
    s.add_argument("--radius", type=int, default=0)
    s.add_argument("--equiv-radius", type=int, default=4)

    s = add("equiv", "bounded equivalence search for two reduced forms")
    s.add_argument("form1")
    s.add_argument("form2")
    s.add_argument("--radius", type=int, default=2)

    s = add("enumerate-binary", "reduced triples of a x^3 + b x^2 y + c y^3")
    for name in ("a", "b", "c"):
        s.add_argument(f"--{name}", type=int, required=True)
    s.add_argument("--bound", type=int, default=20)

    s = add("lowrank", "rational points where the Hessian rank is small")
    s.add_argument("form")
    s.add_argument("--max-rank", type=int, default=1)
    s.add_argument("--box", type=int, default=5)

    s = add("normalize-line", "clear x0^2 x_j for j >= 2")
    s.add_argument("form")

    s = add("estimate-s", "lower estimate of sup |a| over reduced triples", threads)
    s.add_argument("form")
    s.add_argument("--radius", type=int, default=3)

    s = add("extract-point", "split off a Hessian-rank-one class")
    s.add_argument("form")
    s.add_argument("--alpha", type=_ints, required=True)
    s.add_argument("--radius", type=int, default=None)

    s = add("pell", "Pell-indexed reduced forms")
    s.add_argument("--a", type=int, required=True)
    s.add_argument("--b", type=int, required=True)
    s.add_argument("--count", type=int, default=5)

    s = add("fixtures", "built-in worked examples")
    s.add_argument("name", choices=["p3-blowup"])

    s = add("simulate", "replay a contraction scenario file", threads)
    s.add_argument("file")
    s.add_argument("--radius", type=int, default=3, help="search radius for the curve-contraction bound")

    s = add("bounds", "volume, point and curve bounds")
    s.add_argument("--b2", type=int, required=True)
    s.add_argument("--b3", type=int, default=0)
    s.add_argument("--S", type=int, default=0)
    s.add_argument("--K3", type=_rational, default=Fraction(0))
    s.add_argument("--Kc2", type=_rational, default=Fraction(0))
    s.add_argument("--basket", type=lambda t: _ints(t) if t else (), default=None)
    return p


def run(argv):
    parser = build_parser()
    echo = " ".join(argv)
    try:
        args = parser.parse_args(argv)
    except _UsageError as exc:
        return CommandResult("usage", echo, exit_code=2, error={"code": "usage_error", "message": str(exc)},
                             usage=str(exc))
    except SystemExit as exc:
        # --help
        return CommandResult("help", echo, exit_code=int(exc.code or 0), result=None)
    warnings = []
    try:
        shown, result = COMMANDS[args.command](args, warnings)
    except Cubic3Error as exc:
        return CommandResult(args.command, echo, exit_code=1,
                             error={"code": exc.code, "message": str(exc), "details": exc.details})
    except (ValueError, ZeroDivisionError) as exc:
        return CommandResult(args.command, echo, exit_code=1, error={"code": "domain_error", "message": str(exc)})
    code = 0
    if args.command == "simulate" and not result["ok"]:
        code = 1
    return CommandResult(args.command, str(shown), result, warnings, exit_code=code)


def main(argv=None):
    argv = sys.argv[1:] if argv is None else argv
    res = run(argv)
    as_json = "--json" in argv
    if res.op == "help":
        return res.exit_code
    if res.exit_code == 2:
        print(res.to_json() if as_json else res.usage, file=sys.stdout if as_json else sys.stderr)
        return 2
    out = res.to_json() if as_json else res.to_text()
    print(out, file=sys.stderr if res.error and not as_json else sys.stdout)
    return res.exit_code


if __name__ == "__main__":
    sys.exit(main())

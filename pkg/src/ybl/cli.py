"""Command line: ``ybl verify`` runs suites, ``ybl emit`` prints one object.

Exit codes are 0 (everything passed), 1 (a check failed) and 2 (bad
configuration, including a tripped genericity guard).
"""

import argparse
import ast
import json
import sys
from fractions import Fraction

from .exact_algebra import DEFAULT_Z, GenericityError, RegistryError, Scalars, fraction_str, to_fraction
from .weight_space import Composition, build_xi
from .cohomology import class_from_poly, mu_map
from .yangian import bethe_generators
from .wronskian_quantum import chern_sum_operator, cm_matrix, pairings, wronskian
from .suites import SUITES, run_suite, _full_flag_scalars

SCHEMA = "ybl/1"
EMIT_OBJECTS = ("xi", "bethe-matrix", "mu", "quantum-matrix", "wronskian", "pairing", "cm-matrix")


class ConfigError(ValueError):
    pass


# -- rendering

def render(x):
    """Rationals as 'p/q' (integers bare), rational functions with a factored denominator."""
    if isinstance(x, (int, Fraction)):
        x = Fraction(x)
        return str(x.numerator) if x.denominator == 1 else fraction_str(x)
    if x.is_constant():
        return render(x.constant_value())
    num, den = x._n, x._d
    ns = str(num)
    if den.is_one():
        return ns
    c, facs = den.factor()
    c = to_fraction(c)
    if c != 1:
        num = num / c if c.denominator == 1 else num * Fraction(c.denominator, c.numerator)
        ns = str(num)
    if len(num) > 1:
        ns = f"({ns})"
    ds = "".join(f"({p})" + (f"^{e}" if e > 1 else "") for p, e in facs)
    return f"{ns}/{ds}"


def _matrix(m):
    return [[render(m[i, j]) for j in range(m.cols)] for i in range(m.rows)]


def _operator(op):
    return {"sourceBasis": [list(w) for w in op.src.words], "targetBasis": [list(w) for w in op.dst.words],
            "basis": op.basis, "matrix": _matrix(op.matrix)}


# -- expressions

_BIN = {ast.Add: lambda a, b: a + b, ast.Sub: lambda a, b: a - b,
        ast.Mult: lambda a, b: a * b, ast.Div: lambda a, b: a / b}


def parse_expr(text, sc):
    """A rational expression in the registry names (z1, h, q1, g1_1, ...)."""
    try:
        tree = ast.parse(text.replace("^", "**"), mode="eval")
    except SyntaxError as e:
        raise ConfigError(f"cannot parse {text!r}") from e

    def ev(node):
        if isinstance(node, ast.Expression):
            return ev(node.body)
        if isinstance(node, ast.Constant) and isinstance(node.value, int):
            return sc.const(node.value)
        if isinstance(node, ast.Name):
            if node.id not in sc.reg:
                raise ConfigError(f"unknown variable {node.id!r}")
            return sc.specialize(sc.var(node.id))
        if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
            v = ev(node.operand)
            return -v if isinstance(node.op, ast.USub) else v
        if isinstance(node, ast.BinOp) and type(node.op) in _BIN:
            return _BIN[type(node.op)](ev(node.left), ev(node.right))
        if isinstance(node, ast.BinOp) and isinstance(node.op, ast.Pow):
            e = node.right
            if not (isinstance(e, ast.Constant) and isinstance(e.value, int) and e.value >= 0):
                raise ConfigError("exponents must be nonnegative integers")
            return ev(node.left) ** e.value
        raise ConfigError(f"unsupported expression {ast.dump(node)}")

    return ev(tree)


# -- configuration

def _rationals(text, what):
    try:
        return [Fraction(t.strip()) for t in text.split(",") if t.strip()]
    except (ValueError, ZeroDivisionError) as e:
        raise ConfigError(f"bad {what} {text!r}") from e


def build_config(args):
    if args.lambda_ is not None:
        try:
            parts = tuple(int(t) for t in args.lambda_.split(","))
        except ValueError as e:
            raise ConfigError(f"bad lambda {args.lambda_!r}") from e
    elif args.n is not None and (args.N is None or args.N == args.n):
        parts = (1,) * args.n
    else:
        raise ConfigError("give --lambda, or --n for full flags")
    try:
        lam = Composition(parts)
    except ValueError as e:
        raise ConfigError(str(e)) from e
    if args.n is not None and args.n != lam.n:
        raise ConfigError(f"lambda sums to {lam.n}, not n = {args.n}")
    if args.N is not None and args.N != lam.N:
        raise ConfigError(f"lambda has {lam.N} parts, not N = {args.N}")
    if args.order is not None and args.order < 1:
        raise ConfigError("order must be at least 1")
    z = _rationals(args.spec_z, "z-values") if args.spec_z else None
    h = _rationals(args.h, "h")[0] if args.h else None
    q = None
    if args.q and args.q != "symbolic":
        q = _rationals(args.q, "q-values")
    if z is not None and len(z) != lam.n:
        raise ConfigError(f"need {lam.n} z-values, got {len(z)}")
    if q is not None and len(q) != lam.N:
        raise ConfigError(f"need {lam.N} q-values, got {len(q)}")
    if not args.symbolic:
        z = z if z is not None else list(DEFAULT_Z[:lam.n])
        if len(z) < lam.n:
            raise ConfigError(f"no default z-values for n = {lam.n}; pass --spec-z")
        h = h if h is not None else 3
    q_mode = "symbolic" if args.q == "symbolic" or (args.symbolic and q is None) else q
    cfg = {"lambda": list(lam.parts), "N": lam.N, "n": lam.n,
           "z": z, "h": h, "q": q, "symbolic": bool(args.symbolic), "order": args.order or 20}
    try:
        if args.symbolic or q_mode == "symbolic":
            sc = Scalars(lam.n, lam.N, z=z, h=h, q=None if q_mode == "symbolic" else q)
        else:
            sc = Scalars.specialized(lam.n, lam.N, z=z, h=h, q=q if q is not None else "default")
    except GenericityError as e:
        raise ConfigError(f"genericity guard: {e}") from e
    return lam, sc, cfg


def _config_json(cfg):
    def v(x):
        if x is None:
            return "symbolic"
        if isinstance(x, list):
            return [render(t) for t in x]
        return render(x)
    return {"N": cfg["N"], "n": cfg["n"], "lambda": cfg["lambda"], "z": v(cfg["z"]), "h": v(cfg["h"]),
            "q": v(cfg["q"]) if cfg["q"] is not None else ("symbolic" if cfg["symbolic"] else "default"),
            "order": cfg["order"]}


# -- commands

def cmd_verify(args):
    lam, sc, cfg = build_config(args)
    names = [s.strip() for item in (args.suite or []) for s in item.split(",") if s.strip()]
    if not names:
        raise ConfigError("empty suite list")
    if "all" in names:
        names = list(SUITES)
    unknown = [s for s in names if s not in SUITES]
    if unknown:
        raise ConfigError(f"unknown suite(s) {unknown}; choose from {sorted(SUITES)} or all")
    suites = []
    for name in sorted(set(names)):
        checks = run_suite(name, lam, sc, cfg)
        status = "fail" if any(c.status == "fail" for c in checks) else "pass"
        entries = [c.to_json() for c in checks]
        if args.no_timings:
            for e in entries:
                e.pop("elapsedMs")
        suites.append({"suite": name, "status": status, "checks": entries})
    ok = all(s["status"] == "pass" for s in suites)
    report = {"schema": SCHEMA, "command": "verify", "config": _config_json(cfg),
              "status": "pass" if ok else "fail", "suites": suites}
    return report, 0 if ok else 1


def _need(rest, k, usage):
    if len(rest) != k:
        raise ConfigError(f"usage: emit {usage}")
    return rest


def cmd_emit(args):
    lam, sc, cfg = build_config(args)
    obj, rest = args.object, args.args
    out = {"schema": SCHEMA, "command": "emit", "object": obj, "config": _config_json(cfg),
           "variables": list(sc.reg.names)}
    if obj == "xi":
        _need(rest, 0, "xi")
        for sign in ("plus", "minus"):
            out["xi+" if sign == "plus" else "xi-"] = {
                "basis": [list(w) for w in lam.words], "columns": "xi_I in the v_J basis",
                "matrix": _matrix(build_xi(sign, lam, sc).matrix)}
    elif obj == "bethe-matrix":
        p, s = (int(t) for t in _need(rest, 2, "bethe-matrix P S"))
        gens = bethe_generators(args.sign, lam, sc, s_max=max(s, max(lam.parts) + 1), check=False)
        if (p, s) not in gens.B:
            raise ConfigError(f"no generator B_({p},{s}) for {lam.parts}")
        out.update({"sign": args.sign, "p": p, "s": s, "operator": _operator(gens.B[(p, s)])})
    elif obj == "mu":
        kind, f = _need(rest, 2, "mu KIND F")
        if kind not in ("plus", "eq", "minus"):
            raise ConfigError(f"unknown mu kind {kind!r}")
        c = class_from_poly(lam, parse_expr(f, sc), sc)
        out.update({"kind": kind, "f": f, "operator": _operator(mu_map(kind, c))})
    elif obj == "quantum-matrix":
        kind, i = _need(rest, 2, "quantum-matrix KIND I")
        if kind not in ("star", "bullet"):
            raise ConfigError(f"unknown product {kind!r}")
        i = int(i)
        if not 1 <= i <= lam.N:
            raise ConfigError(f"block {i} outside 1..{lam.N}")
        out.update({"kind": kind, "block": i, "operator": _operator(chern_sum_operator(kind, i, lam, sc))})
    elif obj == "wronskian":
        _need(rest, 0, "wronskian")
        w = wronskian(lam, sc)
        out["W"] = render(w.W)
        out["relations"] = [{"coefficient": f"u^{k}", "value": render(v), "equation": f"{render(v)} = 0"}
                            for k, v in reversed(list(enumerate(w.relations)))]
    elif obj == "pairing":
        kind, f, g = _need(rest, 3, "pairing KIND F G")
        if kind not in ("round", "angle"):
            raise ConfigError(f"unknown pairing {kind!r}")
        val = pairings(kind, parse_expr(f, sc), parse_expr(g, sc), lam, sc)
        out.update({"kind": kind, "f": f, "g": g, "value": render(val)})
    elif obj == "cm-matrix":
        _need(rest, 0, "cm-matrix")
        s = _full_flag_scalars(lam, sc, cfg)
        out.update({"n": s.n, "matrix": _matrix(cm_matrix(s.n, s))})
    else:
        raise ConfigError(f"unknown object {obj!r}; choose from {', '.join(EMIT_OBJECTS)}")
    return out, 0


# -- text output

def _table(rows):
    widths = [max(len(r[j]) for r in rows) for j in range(len(rows[0]))]
    return "\n".join("  ".join(c.rjust(w) for c, w in zip(r, widths)) for r in rows)


def to_text(doc):
    lines = []
    if doc["command"] == "verify":
        for s in doc["suites"]:
            lines.append(f"[{s['status']}] {s['suite']}")
            for c in s["checks"]:
                extra = f"  -- {c['witness']}" if "witness" in c else (f"  -- {c['note']}" if "note" in c else "")
                lines.append(f"  {c['status']:4}  {c['id']}  ({c['paperAnchor']}){extra}")
        lines.append(f"overall: {doc['status']}")
        return "\n".join(lines)
    for key, val in doc.items():
        if key in ("schema", "command", "variables"):
            continue
        if isinstance(val, dict) and "matrix" in val:
            lines.append(f"{key}:")
            lines.append(_table(val["matrix"]))
        elif key == "relations":
            lines.extend(r["equation"] for r in val)
        elif isinstance(val, list) and val and isinstance(val[0], list):
            lines.append(f"{key}:")
            lines.append(_table(val))
        elif key != "config":
            lines.append(f"{key}: {val}")
    return "\n".join(lines)


# -- entry point

def _common(p):
    p.add_argument("--N", type=int)
    p.add_argument("--n", type=int)
    p.add_argument("--lambda", dest="lambda_", metavar="PARTS", help="comma separated, e.g. 2,1")
    p.add_argument("--spec-z", metavar="Z", help="comma separated rationals")
    p.add_argument("--h", metavar="H")
    p.add_argument("--q", metavar="Q", help="comma separated rationals or 'symbolic'")
    p.add_argument("--symbolic", action="store_true", help="keep z, h, q symbolic unless given")
    p.add_argument("--order", type=int, help="series order D for the qde suite")
    p.add_argument("--out", metavar="PATH")
    p.add_argument("--format", choices=("json", "text"), default="json")


def make_parser():
    parser = argparse.ArgumentParser(prog="ybl", description="Exact checks for Bethe algebras and quantum cohomology of flag varieties.")
    sub = parser.add_subparsers(dest="command", required=True)
    v = sub.add_parser("verify", help="run verification suites")
    _common(v)
    v.add_argument("--suite", action="append", help=f"comma separated: {', '.join(SUITES)} or all")
    v.add_argument("--no-timings", action="store_true", help="omit elapsedMs for byte-identical reports")
    e = sub.add_parser("emit", help="print one object")
    _common(e)
    e.add_argument("object", choices=EMIT_OBJECTS)
    e.add_argument("args", nargs="*")
    e.add_argument("--sign", choices=("plus", "minus"), default="plus")
    return parser


def main(argv=None):
    parser = make_parser()
    args = parser.parse_args(argv)
    # in emit, a ValueError means the object cannot be resolved under the config
    errors = (ConfigError, GenericityError, RegistryError) + ((ValueError,) if args.command == "emit" else ())
    try:
        doc, code = (cmd_verify if args.command == "verify" else cmd_emit)(args)
    except errors as e:
        print(f"ybl: config error: {e}", file=sys.stderr)
        return 2
    text = to_text(doc) if args.format == "text" else json.dumps(doc, indent=2)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)
    return code


if __name__ == "__main__":
    sys.exit(main())

"""Command line interface: ``python -m polykit <command> ...``.

Exit codes: 0 success, 1 predicate false, 2 error, 3 usage.
"""

import argparse
import json
import os
import sys

from . import autos, polygons, rigid, steinberg, triangular
from .columns import ColSet, col_divisibility, embed_in_simplex, is_balanced
from .doubling import double, spectrum
from .errors import PolykitError, SchemaError
from .lattice import hull, make

OK, FALSE, ERROR, USAGE = 0, 1, 2, 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        sys.stderr.write("%s: error: %s\n" % (self.prog, message))
        sys.exit(USAGE)


# -- input parsing ----------------------------------------------------------------------

def parse_polytope(text):
    """Corpus name, inline JSON, or a path to a JSON file."""
    text = text.strip()
    if os.path.isfile(text):
        with open(text) as fh:
            text = fh.read()
    if not text.startswith("{"):
        return make(text)
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError("line %d column %d: %s" % (exc.lineno, exc.colno, exc.msg))
    if "vertices" not in obj:
        if "name" in obj:
            return make(obj["name"])
        raise SchemaError("field 'vertices' is missing")
    vs = obj["vertices"]
    if not isinstance(vs, list) or not vs:
        raise SchemaError("field 'vertices' must be a nonempty list")
    n = None
    for i, v in enumerate(vs):
        if not isinstance(v, list) or not all(isinstance(a, int) for a in v):
            raise SchemaError("vertices[%d]: expected a list of integers" % i)
        if n is None:
            n = len(v)
        elif len(v) != n:
            raise SchemaError("vertices[%d]: arity %d, expected %d" % (i, len(v), n))
    return hull([tuple(v) for v in vs], obj.get("name"))


def parse_vectors(text):
    text = text.strip()
    if text.startswith("["):
        return [tuple(int(a) for a in v) for v in json.loads(text)]
    return [tuple(int(a) for a in part.split(",")) for part in text.split(";") if part.strip()]


def parse_vector(text):
    return parse_vectors(text)[0]


def _load_json(text):
    if os.path.isfile(text):
        with open(text) as fh:
            text = fh.read()
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError("line %d column %d: %s" % (exc.lineno, exc.colno, exc.msg))


def _vec(v):
    return list(v)


# -- commands ---------------------------------------------------------------------------

def cmd_cols(a):
    P = parse_polytope(a.polytope)
    return OK, {"polytope": P.name, "columns": ColSet(P).to_json()}


def cmd_balanced(a):
    P = parse_polytope(a.polytope)
    ok, wit = is_balanced(ColSet(P))
    out = {"polytope": P.name, "balanced": ok}
    if not ok:
        out["witness"] = {"u": _vec(wit[0]), "v": _vec(wit[1]), "pairing": wit[2]}
    return (OK if ok else FALSE), out


def cmd_divisible(a):
    P = parse_polytope(a.polytope)
    rep = col_divisibility(ColSet(P))
    out = {"polytope": P.name, "col_divisible": rep.cd1_ok and rep.cd2_ok}
    out.update(rep.to_json())
    return (OK if out["col_divisible"] else FALSE), out


def cmd_classify(a):
    P = parse_polytope(a.polytope)
    return OK, polygons.classify(P).to_json()


def cmd_double(a):
    P = parse_polytope(a.polytope)
    return OK, double(P, a.facet).to_json()


def cmd_spectrum(a):
    P = parse_polytope(a.polytope)
    return OK, spectrum(P, a.horizon).to_json()


def cmd_rigid(a):
    P = parse_polytope(a.polytope)
    S, why = rigid.check_rigid(ColSet(P), parse_vectors(a.vectors))
    if S is None:
        return FALSE, {"rigid": False, "reason": why[0], "detail": repr(why[1])}
    out = {"rigid": True, "lambda_complexity": list(rigid.lambda_complexity(S.graph))}
    out.update(S.to_json())
    return OK, out


def cmd_yresolve(a):
    P = parse_polytope(a.polytope)
    trace = []
    W = rigid.y_resolve(ColSet(P), parse_vectors(a.vectors), trace)
    out = W.to_json()
    out["complexity_trace"] = [list(c) for c in trace]
    return OK, out


def cmd_steinberg(a):
    P = parse_polytope(a.polytope)
    if a.ring in ("poly", "polynomials"):
        rep = autos.verify_steinberg(P, parse_vector(a.u), parse_vector(a.v), "symbolic")
    else:
        rep = autos.verify_steinberg(P, parse_vector(a.u), parse_vector(a.v), "sampled",
                                     samples=a.samples, seed=a.seed)
    return (OK if rep["pass"] else FALSE), rep


def _word(a):
    obj = _load_json(a.word)
    if isinstance(obj, list):
        obj = {"letters": obj}
    if a.ring and "ring" not in obj:
        obj["ring"] = a.ring
    return steinberg.parse_word(obj)


def cmd_canon(a):
    P = parse_polytope(a.polytope)
    S = rigid.rigid_system(ColSet(P), parse_vectors(a.system))
    w = _word(a)
    L = triangular.layer_partition(S)
    cf = triangular.canonicalize(L, w.letters, w.ring)
    formal = triangular.canonicalize(L, w.letters, w.ring, mode="formal", verify=False)
    return OK, {"ring": w.ring.spec(), "canonical_form": cf.to_json(),
                "formal_agrees": cf == formal}


def cmd_embed(a):
    P = parse_polytope(a.polytope)
    return OK, embed_in_simplex(ColSet(P)).to_json()


def cmd_k2screen(a):
    P = parse_polytope(a.polytope)
    w = _word(a)
    S = spectrum(P, a.stages)
    rep = steinberg.k2_screen(w, w.ring, S.stages)
    return (OK if rep["evaluates_to_identity_on_stages"] else FALSE), rep


def cmd_dot(a):
    P = parse_polytope(a.polytope)
    C = ColSet(P)
    if a.what == "graph":
        if not a.vectors:
            raise SchemaError("--what graph needs --vectors")
        return OK, rigid.rigid_system(C, parse_vectors(a.vectors)).graph.to_dot()
    # product graph on column vectors; ids follow the sorted vector order
    ids = {c.v: "c%d" % i for i, c in enumerate(C)}
    lines = ["digraph products {"]
    for c in C:
        lines.append('  %s [label="%s"];' % (ids[c.v], ",".join(map(str, c.v))))
    for i, j, k in C.products:
        lines.append('  %s -> %s [label="%s"];' % (
            ids[C.vectors[i].v], ids[C.vectors[j].v], ",".join(map(str, C.vectors[k].v))))
    lines.append("}")
    return OK, "\n".join(lines)


def build_parser():
    p = _Parser(prog="polykit", description="Column vectors, doublings and elementary "
                                             "automorphisms of lattice polytopes.")
    p.add_argument("--seed", type=int, default=0, help="seed for sampled checks")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name, fn, help_):
        q = sub.add_parser(name, help=help_)
        q.add_argument("polytope", help="corpus name, inline JSON or JSON file")
        q.set_defaults(fn=fn)
        return q

    add("cols", cmd_cols, "column vectors and products")
    add("balanced", cmd_balanced, "balancedness with a witness")
    add("divisible", cmd_divisible, "CD1/CD2 check")
    add("classify", cmd_classify, "balanced polygon class")
    add("double", cmd_double, "double along a facet").add_argument("--facet", type=int, required=True)
    add("spectrum", cmd_spectrum, "fair doubling spectrum").add_argument(
        "--horizon", type=int, required=True)
    add("rigid", cmd_rigid, "rigidity decision").add_argument("--vectors", required=True)
    add("yresolve", cmd_yresolve, "Y-resolution").add_argument("--vectors", required=True)
    q = add("steinberg", cmd_steinberg, "verify a commutator relation")
    q.add_argument("--u", required=True)
    q.add_argument("--v", required=True)
    q.add_argument("--ring", default="poly", help="poly (symbolic) or z/5 (sampled)")
    q.add_argument("--samples", type=int, default=10)
    q = add("canon", cmd_canon, "canonical form in a triangular group")
    q.add_argument("--system", required=True)
    q.add_argument("--word", required=True, help="word JSON (inline or file)")
    q.add_argument("--ring", default=None)
    add("embed", cmd_embed, "embedding into a unit simplex")
    q = add("k2screen", cmd_k2screen, "identity screen along a spectrum")
    q.add_argument("--stages", type=int, required=True)
    q.add_argument("--word", required=True)
    q.add_argument("--ring", default=None)
    q = add("dot", cmd_dot, "Graphviz output")
    q.add_argument("--what", choices=("graph", "products"), required=True)
    q.add_argument("--vectors", default=None)
    return p


_VALUE_OPTS = ("--u", "--v", "--vectors", "--system")


def _glue_negative(argv):
    # "--v -1,0" would otherwise be read as an option
    out, i = [], 0
    while i < len(argv):
        tok = argv[i]
        if tok in _VALUE_OPTS and i + 1 < len(argv) and argv[i + 1][:2].lstrip("-")[:1].isdigit() \
                and argv[i + 1].startswith("-"):
            out.append("%s=%s" % (tok, argv[i + 1]))
            i += 2
        else:
            out.append(tok)
            i += 1
    return out


def run(argv=None, out=None):
    out = out or sys.stdout
    argv = sys.argv[1:] if argv is None else list(argv)
    args = build_parser().parse_args(_glue_negative(argv))
    try:
        code, result = args.fn(args)
    except PolykitError as exc:
        json.dump({"error": type(exc).__name__, "message": str(exc)}, sys.stderr, sort_keys=True)
        sys.stderr.write("\n")
        return ERROR
    except (ValueError, json.JSONDecodeError) as exc:
        json.dump({"error": "SchemaError", "message": str(exc)}, sys.stderr, sort_keys=True)
        sys.stderr.write("\n")
        return ERROR
    if isinstance(result, str):
        out.write(result + "\n")
    else:
        out.write(json.dumps({"command": args.command, "result": result},
                             sort_keys=True, indent=1) + "\n")
    return code


def main(argv=None):
    sys.exit(run(argv))

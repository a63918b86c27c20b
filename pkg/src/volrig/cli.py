"""Command-line interface: ``volrig <command> [options]``.

Every command writes JSON to standard output (or ``-o FILE``).  Exit status
is 0 on success or a passing verdict, 1 on a failing verdict, 2 on usage
errors or malformed input and 3 when a configuration is degenerate.
"""
from __future__ import annotations

import argparse
import sys

from . import certify
from .complexes import (Hypergraph, SimplicialComplex, complete_uniform, cone, contract,
                        contract_complex, hypergraph_link, presets, skeleton)
from .errors import ArgumentError, DegeneracyError, DimensionError
from .exactlinalg import random_realisation, rank
from .rigidity import DEGENERATE, rigidity_matrix, rigidity_report
from .serialize import (SchemaError, dumps, loads, parts_from_json, realisation_from_json,
                        structure_from_json)

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_DEGENERATE = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _read(path):
    where = "<stdin>" if path == "-" else path
    try:
        if path == "-":
            text = sys.stdin.read()
        else:
            with open(path, encoding="utf-8") as fh:
                text = fh.read()
    except OSError as e:
        raise UsageError(f"cannot read {path}: {e.strerror}") from None
    return loads(text, where), where


def _structure(path):
    obj, where = _read(path)
    return structure_from_json(obj, where)


def _hypergraph(args):
    """Input as a hypergraph; complexes need ``--k`` to pick a skeleton."""
    X = _structure(args.input)
    if isinstance(X, SimplicialComplex):
        if args.k is None:
            raise UsageError("input is a simplicial complex; pass --k to take its k-skeleton")
        return skeleton(X, args.k)
    if args.k is not None:
        raise UsageError("--k only applies to simplicial complex input")
    return X


# -- commands ------------------------------------------------------------------

def cmd_gen(args):
    if args.kind == "complete":
        if args.n is None or args.k is None:
            raise UsageError("gen complete needs --n and --k")
        return complete_uniform(args.n, args.k), EXIT_OK
    if args.name is None:
        raise UsageError("gen preset needs --name")
    return presets(args.name, args.dim), EXIT_OK


def cmd_skeleton(args):
    S = _structure(args.input)
    if not isinstance(S, SimplicialComplex):
        raise UsageError("skeleton needs a simplicial complex (a 'facets' field)")
    return skeleton(S, args.k), EXIT_OK


def cmd_cone(args):
    S = _structure(args.input)
    if not isinstance(S, SimplicialComplex):
        raise UsageError("cone needs a simplicial complex (a 'facets' field)")
    return cone(S, args.apex), EXIT_OK


def cmd_contract(args):
    X = _structure(args.input)
    if isinstance(X, SimplicialComplex):
        return contract_complex(X, args.u, args.v), EXIT_OK
    return contract(X, args.u, args.v), EXIT_OK


def cmd_rank(args):
    H = _hypergraph(args)
    if args.realisation:
        obj, where = _read(args.realisation)
        p = realisation_from_json(obj, where)
        if p.dim != args.dim:
            raise UsageError(f"realisation has dim {p.dim} but --dim is {args.dim}")
        missing = [v for v in H.vertices if v not in p]
        if missing:
            raise SchemaError(where, f"coords.{missing[0]}", "missing vertex")
        seed = None
    else:
        seed = args.seed
        p = random_realisation(H.vertices, args.dim, seed, args.field)
    R = rigidity_matrix(H, p)
    cert = rank(R.inner, seed=seed)
    out = {"rank": cert.rank, "rows": R.inner.nrows, "cols": R.inner.ncols,
           "dim": args.dim, "field": p.field.kind, "prime": p.field.prime, "seed": seed}
    if args.show_matrix:
        out["matrix"] = R.inner
    return out, EXIT_OK


def _report(args):
    H = _hypergraph(args)
    rep = rigidity_report(H, args.dim, args.trials, args.seed, args.field)
    out = rep.as_dict()
    out["achieved_rank"] = rep.rank
    return rep, out


def cmd_rigid(args):
    rep, out = _report(args)
    if rep.verdict == DEGENERATE:
        return out, EXIT_DEGENERATE
    return out, EXIT_OK if rep.rigid else EXIT_FAIL


def cmd_dof(args):
    rep, out = _report(args)
    return out, EXIT_DEGENERATE if rep.verdict == DEGENERATE else EXIT_OK


def cmd_split_check(args):
    H = _hypergraph(args)
    fn = certify.split_check if args.matrix_only else certify.split_certify
    ev = fn(H, args.u, args.v, args.dim, args.seed, args.trials, args.field)
    out = ev.as_dict()
    if args.show_matrix:
        out["matrix"] = ev.matrix
    return out, EXIT_OK if ev.ok else EXIT_FAIL


def cmd_cone_check(args):
    H = _hypergraph(args)
    if args.link is None:
        ev = certify.coning_rank_check(H, args.dim, args.seed, args.target, args.trials,
                                       args.field)
        return ev.as_dict(), EXIT_OK if ev.ok else EXIT_FAIL
    # H - w rigid in d-space and rank of the coning matrix of H_w = |V| - 1
    # together give rigidity of H in (d + 1)-space
    w = str(args.link)
    Hw = hypergraph_link(H, w)
    target = len(H.vertices) - 1 if args.target is None else args.target
    ev = certify.coning_rank_check(Hw, args.dim, args.seed, target, args.trials, args.field)
    rest = Hypergraph([x for x in H.vertices if x != w], [e for e in H.edges if w not in e])
    rep = rigidity_report(rest, args.dim, args.trials, args.seed, args.field)
    ok = ev.ok and rep.rigid
    out = {"pass": ok, "link_vertex": w, "coning": ev.as_dict(), "deleted": rep.as_dict(),
           "certifies_dim": args.dim + 1, "seed": args.seed}
    return out, EXIT_OK if ok else EXIT_FAIL


def cmd_glue_plan(args):
    H = _hypergraph(args)
    obj, where = _read(args.parts)
    parts = parts_from_json(obj, where)
    if args.certify:
        plan = certify.glue_certify(H, parts, args.dim, args.seed, args.trials, args.field)
    else:
        plan = certify.glue_plan(H, parts, args.dim)
    out = plan.as_dict()
    if args.certify:
        out["seed"] = args.seed
    return out, EXIT_OK if plan.ok else EXIT_FAIL


def cmd_verify_paper(args):
    out = certify.verify_paper(args.case, args.seed)
    return out, EXIT_OK if out["pass"] else EXIT_FAIL


# -- parser --------------------------------------------------------------------

def _common(p, dim=True, random=True, k=True):
    if k:
        p.add_argument("input", help="JSON file, or - for standard input")
        p.add_argument("--k", type=int, help="take the k-skeleton of complex input")
    if dim:
        p.add_argument("--dim", type=int, required=True, help="ambient dimension")
    if random:
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--trials", type=int, default=3)
        p.add_argument("--field", choices=["rational", "prime"], default="prime")
    p.add_argument("-o", "--output", help="write JSON here instead of standard output")


def build_parser():
    ap = _Parser(prog="volrig", description="Generic volume rigidity of hypergraphs.")
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("gen", help="generate a hypergraph or a named complex")
    p.add_argument("kind", choices=["complete", "preset"])
    p.add_argument("--n", type=int)
    p.add_argument("--k", type=int)
    p.add_argument("--name")
    p.add_argument("--dim", type=int, help="dimension for simplex / cross-polytope presets")
    p.add_argument("-o", "--output")
    p.set_defaults(fn=cmd_gen)

    p = sub.add_parser("skeleton", help="k-skeleton hypergraph of a complex")
    p.add_argument("input")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("-o", "--output")
    p.set_defaults(fn=cmd_skeleton)

    p = sub.add_parser("cone", help="cone a complex over new apex vertices")
    p.add_argument("input")
    p.add_argument("--apex", nargs="+", required=True)
    p.add_argument("-o", "--output")
    p.set_defaults(fn=cmd_cone)

    p = sub.add_parser("contract", help="contract vertex u onto v")
    p.add_argument("input")
    p.add_argument("--u", required=True)
    p.add_argument("--v", required=True)
    p.add_argument("-o", "--output")
    p.set_defaults(fn=cmd_contract)

    p = sub.add_parser("rank", help="rank of the volume rigidity matrix")
    _common(p)
    p.add_argument("--realisation", help="JSON realisation instead of a random one")
    p.add_argument("--show-matrix", action="store_true")
    p.set_defaults(fn=cmd_rank)

    p = sub.add_parser("rigid", help="certify generic rigidity")
    _common(p)
    p.set_defaults(fn=cmd_rigid)

    p = sub.add_parser("dof", help="degrees of freedom at a random realisation")
    _common(p)
    p.set_defaults(fn=cmd_dof)

    p = sub.add_parser("split-check", help="vertex splitting condition for u -> v")
    _common(p)
    p.add_argument("--u", required=True)
    p.add_argument("--v", required=True)
    p.add_argument("--matrix-only", action="store_true",
                   help="skip the rigidity check of the contracted hypergraph")
    p.add_argument("--show-matrix", action="store_true")
    p.set_defaults(fn=cmd_split_check)

    p = sub.add_parser("cone-check", help="rank of the coning matrix")
    _common(p)
    p.add_argument("--link", help="check the coning step at this vertex")
    p.add_argument("--target", type=int)
    p.set_defaults(fn=cmd_cone_check)

    p = sub.add_parser("glue-plan", help="glue rigid parts along large overlaps")
    _common(p)
    p.add_argument("--parts", required=True, help="JSON list of hypergraphs")
    p.add_argument("--certify", action="store_true", help="also certify every part")
    p.set_defaults(fn=cmd_glue_plan)

    p = sub.add_parser("verify-paper", help="run the reproduction suite")
    p.add_argument("--case", default="all", choices=sorted(certify.CASES) + ["all"])
    p.add_argument("--seed", type=int, default=certify.RECORDED_SEED)
    p.add_argument("-o", "--output")
    p.set_defaults(fn=cmd_verify_paper)
    return ap


def _validate(args):
    for name in ("dim", "n", "trials"):
        val = getattr(args, name, None)
        if val is not None and val < 1:
            raise UsageError(f"--{name} must be positive")
    k = getattr(args, "k", None)
    if k is not None and k < 0:
        raise UsageError("--k must be non-negative")


def main(argv=None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    try:
        args = build_parser().parse_args(argv)
        _validate(args)
        out, status = args.fn(args)
    except (UsageError, ArgumentError, DimensionError) as e:
        print(f"volrig: error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except DegeneracyError as e:
        print(f"volrig: degenerate: {e}", file=sys.stderr)
        return EXIT_DEGENERATE
    text = dumps(out)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return status


if __name__ == "__main__":
    sys.exit(main())

"""Command-line entry point ``rp2b``.

Every command builds a report dictionary ``{"command", "config", "result",
"status"}``.  ``--json`` prints it as key-sorted JSON; otherwise it is shown as
an indented key/value listing of the same data.  Timing is left out unless
``--timing`` is given, so repeated runs print identical bytes.

Exit codes: 0 success, 1 a check failed or a search ran out of budget,
2 usage error.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from typing import Sequence

from . import acceptance, artin, cosets, kernel, p3model, presentation, torsion, vc
from .words import WordError, abelianize, format_word, freely_reduce, invert, parse_word, permutation_of


class UsageError(Exception):
    pass


EPILOG = """\
word grammar: tokens s<i> and r<j> with optional ^<int>, e for the empty word  (e.g. "s2^-1 s1^-1 r1")
p3 grammar:   ( <f2-word> , <q8> ), q8 in 1 -1 t1 -t1 t2 -t2 t3 -t3, f2 words over x, y  (e.g. "(x y^-1, t3)")
kernel words: r, B1 ... B<rank-1> with optional ^<int>  (e.g. "r^2 B1^-1")
"""


# --- rendering ---------------------------------------------------------------------

def to_json(report: dict) -> str:
    return json.dumps(report, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def _human(value, indent: int = 0) -> list[str]:
    pad = "  " * indent
    if isinstance(value, dict):
        out = []
        for k in sorted(value, key=str):
            v = value[k]
            if isinstance(v, (dict, list)) and v:
                out.append(f"{pad}{k}:")
                out += _human(v, indent + 1)
            else:
                out.append(f"{pad}{k}: {_scalar(v)}")
        return out
    if isinstance(value, list):
        out = []
        for v in value:
            if isinstance(v, (dict, list)) and v:
                out.append(f"{pad}-")
                out += _human(v, indent + 1)
            else:
                out.append(f"{pad}- {_scalar(v)}")
        return out
    return [pad + _scalar(value)]


def _scalar(v) -> str:
    if v is True:
        return "true"
    if v is False:
        return "false"
    if v is None:
        return "null"
    if v == [] or v == {}:
        return "[]" if v == [] else "{}"
    return str(v)


def to_human(report: dict) -> str:
    return "\n".join(_human(report)) + "\n"


# --- commands --------------------------------------------------------------------------

def _word(args) -> tuple[dict, bool]:
    w = parse_word(args.word, args.n)
    if args.action == "reduce":
        return {"word": format_word(freely_reduce(w))}, True
    if args.action == "inverse":
        return {"word": format_word(invert(w))}, True
    if args.action == "perm":
        perm = permutation_of(w)
        return {"cycles": str(perm), "cycle_type": list(perm.cycle_type()), "images": list(perm.images)}, True
    ab = abelianize(w)
    return {"eps_sigma": ab.eps_sigma, "eps_rho": ab.eps_rho}, True


def _load_presentation(args) -> presentation.Presentation:
    if args.presentation:
        with open(args.presentation, encoding="utf-8") as fh:
            p = presentation.parse_presentation(fh.read())
        if p.strands != args.n:
            raise UsageError(f"presentation has {p.strands} strands, --n is {args.n}")
        return p
    return presentation.van_buskirk_presentation(args.n)


def _prove_eq(args) -> tuple[dict, bool]:
    p = _load_presentation(args)
    u, v = parse_word(args.u, args.n), parse_word(args.v, args.n)
    res = presentation.prove_equal(p, u, v, max_edits=args.max_edits, max_visited=args.max_visited)
    if isinstance(res, presentation.NotFound):
        return {"outcome": "budget-exhausted", "reason": res.reason, "visited": res.visited,
                "depth": res.depth, "ceiling": res.ceiling}, False
    return {
        "outcome": "proved",
        "start": format_word(res.start),
        "edits": res.edits,
        "steps": [s.as_dict() for s in res.steps],
        "relator_labels": list(p.labels),
        "replays": presentation.check_trace(p, res),
    }, True


def _nf_dict(nf: artin.GarsideNF) -> dict:
    return {"halftwist_power": nf.halftwist_power, "factors": [list(f.perm) for f in nf.factors],
            "text": str(nf)}


def _artin_eq(args) -> tuple[dict, bool]:
    m = args.m
    u, v = parse_word(args.u, m), parse_word(args.v, m)
    nu, nv = artin.left_normal_form(u, m), artin.left_normal_form(v, m)
    return {"equal": nu == nv, "nf_1": _nf_dict(nu), "nf_2": _nf_dict(nv)}, True


def _torsion(args) -> tuple[dict, bool]:
    if args.action == "list":
        if len(args.values) != 1:
            raise UsageError("usage: torsion list <n>")
        (n,) = args.values
        rows = []
        for spec, order in torsion.canonical_torsion_reps(n):
            w = torsion.murasugi_element(spec)
            ab = abelianize(w)
            rows.append({
                "family": spec.family, "r": spec.r, "s": spec.s, "q": spec.q, "order": order,
                "cycle_type": list(permutation_of(w).cycle_type()),
                "abelian": [ab.eps_sigma, ab.eps_rho], "word": format_word(w),
            })
        return {"n": n, "rows": rows}, True
    if len(args.values) != 3:
        raise UsageError("usage: torsion order <family> <n> <r>")
    family, n, r = args.values
    spec = torsion.canonical_spec(family, n, r)
    return {"order": torsion.torsion_order(spec), "spec": str(spec)}, True


def _enumerate(args) -> tuple[dict, bool]:
    p = presentation.van_buskirk_presentation(args.n)
    if args.subgroup == "trivial" and args.n >= 3:
        raise UsageError("B_n(RP^2) is infinite for n >= 3; use --subgroup pure")
    sub = cosets.pure_subgroup_generators(args.n) if args.subgroup == "pure" else []
    try:
        table = cosets.todd_coxeter(p, sub, max_cosets=args.max_cosets)
    except cosets.CosetOverflow as exc:
        return {"outcome": "budget-exhausted", "max_cosets": exc.limit}, False
    out = {"outcome": "complete", "index": table.index, "defined": table.defined,
           "relators_close": table.relators_close()}
    if args.subgroup == "trivial":
        prof = cosets.cayley_from(table).profile()
        out["profile"] = {"order": prof.order, "histogram": {str(k): v for k, v in prof.histogram},
                          "center": prof.center_size, "involutions": prof.involutions,
                          "identified": str(cosets.identify_group(prof))}
    if args.dump:
        out["generators"] = [f"{g.kind}{g.index}" for g in p.generators]
        out["rows"] = [list(r) for r in table.rows]
    return out, out["relators_close"]


def _p3(args) -> tuple[dict, bool]:
    a = args.action
    if a == "fix":
        q = p3model.parse_q8(args.elements[0])
        words = p3model.fixed_words_ball(q, args.radius)
        return {"q": str(q), "radius": args.radius, "fixed": [p3model.format_f2(w) for w in words]}, True
    els = [p3model.parse_p3(t) for t in args.elements]
    need = {"mul": 2, "inv": 1, "order": 1, "centralizer": 1}[a]
    if len(els) != need:
        raise UsageError(f"p3 {a} takes {need} element(s)")
    if a == "mul":
        return {"product": str(p3model.p3_multiply(*els))}, True
    if a == "inv":
        return {"inverse": str(p3model.p3_invert(els[0]))}, True
    if a == "order":
        o = p3model.p3_order(els[0])
        return {"order": "infinite" if o == p3model.INFINITE else o}, True
    cent = p3model.centralizer_ball(els[0], args.radius)
    return {"radius": args.radius, "centralizer": [str(h) for h in cent]}, True


def _kernel(args) -> tuple[dict, bool]:
    rank = args.n
    if args.action == "fix":
        aut = kernel.named_aut(args.aut, rank)
        radius = kernel.default_radius() if args.radius is None else args.radius
        found = kernel.fixed_points_ball(aut, radius)
        return {"aut": args.aut, "rank": rank, "radius": radius,
                "table": [list(t) for t in aut.table()], "fixed": [kernel.format_free(w) for w in found]}, True
    w = kernel.parse_free(args.word, rank)
    if args.action == "apply":
        aut = kernel.named_aut(args.aut, rank)
        return {"aut": args.aut, "image": kernel.format_free(kernel.apply(aut, w))}, True
    dec = kernel.syllable_decompose(w, kernel.RHO)
    out = {"k": dec.k, "exponents": list(dec.exponents), "middles": [kernel.format_free(m) for m in dec.middles]}
    if dec.k >= 1:
        laws = {}
        for which in ("alpha", "beta"):
            laws[which] = {"predicted": list(kernel.predicted_exponents(which, dec)),
                           "holds": kernel.check_syllable_law(which, w)}
        out["laws"] = laws
        return out, all(v["holds"] for v in laws.values())
    return out, True


def _classify(args) -> tuple[dict, bool]:
    rep = vc.classify(args.n)
    return rep.as_dict(), rep.replays()


def _reproduce(args) -> tuple[dict, bool]:
    results = acceptance.reproduce(args.suite)
    rows = [r.as_dict(args.timing) for r in results]
    return {"suite": args.suite, "criteria": rows, "passed": all(r.passed for r in results)}, all(
        r.passed for r in results
    )


# --- parser ------------------------------------------------------------------------

class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{message}\n\n{self.format_usage()}{EPILOG}")


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="rp2b", description="Braid groups of the projective plane: words, orders, models.",
                 epilog=EPILOG, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("--json", action="store_true", help="machine-readable output")
    ap.add_argument("--timing", action="store_true", help="add wall-clock timing to the report")
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)
    # the output flags are accepted after the subcommand too
    common = _Parser(add_help=False)
    common.add_argument("--json", action="store_true", default=argparse.SUPPRESS)
    common.add_argument("--timing", action="store_true", default=argparse.SUPPRESS)

    p = sub.add_parser("word", parents=[common], help="reduce, invert, permutation or abelian image of a word")
    p.add_argument("action", choices=["reduce", "inverse", "perm", "abelian"])
    p.add_argument("--n", type=int, required=True)
    p.add_argument("word")
    p.set_defaults(func=_word)

    p = sub.add_parser("prove-eq", parents=[common], help="search a relator-edit proof of u = v")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--presentation", help="presentation file (default: the built-in one)")
    p.add_argument("--max-edits", type=int, default=None)
    p.add_argument("--max-visited", type=int, default=presentation.DEFAULT_MAX_VISITED)
    p.add_argument("u")
    p.add_argument("v")
    p.set_defaults(func=_prove_eq)

    p = sub.add_parser("artin-eq", parents=[common], help="compare Garside normal forms in B_m")
    p.add_argument("m", type=int)
    p.add_argument("u")
    p.add_argument("v")
    p.set_defaults(func=_artin_eq)

    p = sub.add_parser("torsion", parents=[common], help="torsion catalog")
    p.add_argument("action", choices=["list", "order"])
    p.add_argument("values", type=int, nargs="+")
    p.set_defaults(func=_torsion)

    p = sub.add_parser("enumerate", parents=[common], help="Todd-Coxeter coset enumeration")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--subgroup", choices=["pure", "trivial"], default="trivial")
    p.add_argument("--max-cosets", type=int, default=None)
    p.add_argument("--dump", action="store_true", help="include the full coset table")
    p.set_defaults(func=_enumerate)

    p = sub.add_parser("p3", parents=[common], help="arithmetic in the model of P_3(RP^2)")
    p.add_argument("action", choices=["mul", "inv", "order", "centralizer", "fix"])
    p.add_argument("elements", nargs="+")
    p.add_argument("--radius", type=int, default=6)
    p.set_defaults(func=_p3)

    p = sub.add_parser("kernel", parents=[common], help="automorphisms of the free kernel")
    ksub = p.add_subparsers(dest="action", required=True, parser_class=_Parser)
    for name in ("fix", "apply", "syllables"):
        k = ksub.add_parser(name, parents=[common])
        k.add_argument("--n", type=int, required=True, help="rank of the free group")
        if name != "syllables":
            k.add_argument("--aut", choices=["alpha", "beta", "phi", "phi-prime", "id"], default="alpha")
        if name == "fix":
            k.add_argument("--radius", type=int, default=None)
            k.set_defaults(word=None)
        else:
            k.add_argument("word")
        k.set_defaults(func=_kernel)

    p = sub.add_parser("classify", parents=[common], help="infinite virtually cyclic subgroups of P_n(RP^2)")
    p.add_argument("--n", type=int, required=True)
    p.set_defaults(func=_classify)

    p = sub.add_parser("reproduce", parents=[common], help="run acceptance suites")
    p.add_argument("suite", choices=sorted(acceptance.SUITES))
    p.set_defaults(func=_reproduce)
    return ap


def _config(args) -> dict:
    skip = {"func", "json", "timing", "command"}
    return {k: v for k, v in sorted(vars(args).items()) if k not in skip}


def run(argv: Sequence[str] | None = None) -> tuple[int, dict | None, str]:
    """Parse and execute; returns ``(exit code, report, rendered text)``."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as exc:
        return 2, None, f"usage error: {exc}\n"
    except SystemExit as exc:  # --help
        return int(exc.code or 0), None, ""
    t0 = time.perf_counter()
    try:
        result, ok = args.func(args)
    except UsageError as exc:
        return 2, None, f"usage error: {exc}\n\n{parser.format_usage()}{EPILOG}"
    except (WordError, ValueError, KeyError) as exc:
        return 2, None, f"usage error: {exc}\n\n{EPILOG}"
    report = {
        "command": args.command,
        "config": _config(args),
        "result": result,
        "status": "ok" if ok else "failed",
    }
    if args.timing:
        report["seconds"] = round(time.perf_counter() - t0, 3)
    text = to_json(report) if args.json else to_human(report)
    return (0 if ok else 1), report, text


def main(argv: Sequence[str] | None = None) -> int:
    code, _, text = run(argv)
    stream = sys.stderr if code == 2 else sys.stdout
    stream.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())

"""Command-line driver.

Exit codes: 0 when the requested check or computation passes, 1 when a
mathematical check fails (d^2 != 0, not Sullivan, data not concordant,
...), 2 on usage or parse errors.  --json emits {command, inputs, result,
witnesses} against the shipped schema; --out redirects the rendered
output to a file.

File arguments accept either a path or corpus:NAME for a built-in model.
"""

import argparse
import json
import random
import sys
from fractions import Fraction

from ..chern_weil import (CurvatureMatrix, chern_forms, euler_form, i8,
                          pontrjagin_forms)
from ..character import (ConcordanceDatum, FlatFormDatum,
                         TwistedFlatFormDatum, decide_concordance,
                         line_quotient, verify_concordance, verify_flat,
                         verify_twisted_flat)
from ..dgca import check_d_squared, cohomology
from ..linfty import brackets_from_ce, is_minimal, is_sullivan
from ..minimal_model import BudgetExceeded, RelativeExtension, minimal_model
from ..simplicial_forms import CylinderAlgebra, check_projection, check_stokes
from ..twisted_derham import (TwistedClass, TwistedComplex,
                              op_square_then_twist, op_wedge_square,
                              op_wedge_twist, twisted_cohomology)
from . import corpus
from .parser import ParseError, parse


class UsageError(Exception):
    pass


def _load_model(path):
    if path.startswith("corpus:"):
        name = path[len("corpus:"):]
        try:
            return corpus.load(name)
        except KeyError as e:
            raise UsageError(str(e.args[0]))
    try:
        with open(path) as fh:
            text = fh.read()
    except OSError as e:
        raise UsageError("cannot read %s: %s" % (path, e.strerror))
    return parse(text)


def _first_algebra(mf):
    name, A = mf.first_algebra()
    if A is None:
        raise UsageError("the file declares no algebra")
    return name, A


def _morphisms(mf):
    return [mf.morphisms[n] for k, n in mf.order if k == "morphism"]


def _first_matrix(mf, antisymmetric=False):
    for kind, name in mf.order:
        if kind == "matrix":
            rows = mf.matrices[name].rows
            try:
                return name, CurvatureMatrix(rows, antisymmetric=antisymmetric)
            except (ValueError, TypeError) as e:
                raise UsageError("matrix %s: %s" % (name, e))
    raise UsageError("the file declares no matrix")


def _twist_form(mf, name):
    if name not in mf.twists:
        raise UsageError("no twist named %r in the file" % name)
    t = mf.twists[name]
    return mf.algebras[t.algebra], t.form


def _jsonable(x):
    if isinstance(x, Fraction):
        return str(x) if x.denominator != 1 else str(x.numerator)
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if isinstance(x, (int, bool, str)) or x is None:
        return x
    return str(x)


def _comb_str(targets, order):
    """Linear combination {name: coeff} rendered in a fixed basis order."""
    parts = []
    for name in order:
        c = targets.get(name)
        if not c:
            continue
        if c == 1:
            term = name
        elif c == -1:
            term = "-" + name
        else:
            term = "%s*%s" % (c, name)
        if parts and not term.startswith("-"):
            parts.append("+ " + term)
        elif parts:
            parts.append("- " + term[1:])
        else:
            parts.append(term)
    return " ".join(parts) if parts else "0"


# -- commands -----------------------------------------------------------------


def _cmd_check(args):
    mf = _load_model(args.file)
    names = [n for k, n in mf.order if k == "algebra"]
    lines = []
    outcomes = {}
    witnesses = []
    for name in names:
        rep = check_d_squared(mf.algebras[name])
        outcomes[name] = rep.passed
        if rep.passed:
            lines.append("%s: d^2 = 0" % name)
        else:
            lines.append("%s: d^2 != 0 (%s)" % (name, rep))
            for gen, res in rep.failures:
                witnesses.append({"algebra": name, "generator": gen,
                                  "residual": str(res)})
    ok = all(outcomes.values())
    return (0 if ok else 1,
            {"passed": ok, "algebras": outcomes}, witnesses, lines)


def _cmd_cohomology(args):
    mf = _load_model(args.file)
    name, A = _first_algebra(mf)
    top = args.max_degree if args.max_degree is not None else 8
    try:
        slices = cohomology(A, (0, top), polybound=args.polybound)
    except ValueError as e:
        raise UsageError(str(e))
    lines = ["cohomology of %s in degrees 0..%d" % (name, top)]
    dims = {}
    witnesses = []
    for sl in slices:
        dims[sl.degree] = sl.dim
        lines.append("H^%d = %d" % (sl.degree, sl.dim))
        for p in sl.representatives:
            witnesses.append({"degree": sl.degree, "representative": str(p)})
    return 0, {"algebra": name, "dims": dims}, witnesses, lines


def _cmd_minimal_model(args):
    mf = _load_model(args.file)
    name, A = _first_algebra(mf)
    top = args.max_degree if args.max_degree is not None else 8
    try:
        res = minimal_model(A, top, polybound=args.polybound)
    except BudgetExceeded as e:
        return 1, {"algebra": name, "error": str(e)}, [], [str(e)]
    except ValueError as e:
        raise UsageError(str(e))
    M = res.model
    lines = ["minimal model of %s through degree %d" % (name, res.bound)]
    for g, d in zip(M.gens.names, M.gens.degrees):
        lines.append("  gen %s:%d" % (g, d))
    for g in M.gens.names:
        if not M.d[g].is_zero():
            lines.append("  d %s = %s" % (g, M.d[g]))
    result = {"algebra": name, "bound": res.bound,
              "counts": dict(res.counts),
              "generators": [[g, d] for g, d in
                             zip(M.gens.names, M.gens.degrees)],
              "differentials": {g: str(M.d[g]) for g in M.gens.names
                                if not M.d[g].is_zero()}}
    witnesses = [{"generator": g, "image": str(res.comparison.assignment[g])}
                 for g in M.gens.names]
    return 0, result, witnesses, lines


def _cmd_brackets(args):
    mf = _load_model(args.file)
    name, A = _first_algebra(mf)
    L = brackets_from_ce(A)
    order = [n for n, _ in L.basis]
    lines = ["brackets of %s (basis %s)" % (name, ", ".join(order))]
    table = []
    for key in sorted(L.brackets, key=lambda k: (len(k),
                                                 [L.index[n] for n in k])):
        value = L.brackets[key]
        lines.append("  l%d(%s) = %s"
                     % (len(key), ", ".join(key), _comb_str(value, order)))
        table.append({"arity": len(key), "args": list(key),
                      "value": {t: value[t] for t in order if t in value}})
    result = {"algebra": name, "basis": [[n, d] for n, d in L.basis],
              "brackets": table}
    return 0, result, [], lines


def _cmd_is_sullivan(args):
    mf = _load_model(args.file)
    name, A = _first_algebra(mf)
    cert = is_sullivan(A)
    if cert.ok:
        lines = ["%s: sullivan" % name,
                 "order: %s" % " < ".join(cert.order)]
        return 0, {"algebra": name, "sullivan": True,
                   "order": list(cert.order)}, [], lines
    cycle = list(cert.cycle)
    arrow = " -> ".join(cycle + [cycle[0]])
    lines = ["%s: not sullivan" % name, "cycle: %s" % arrow]
    return 1, {"algebra": name, "sullivan": False, "cycle": cycle}, \
        [{"cycle": cycle}], lines


def _cmd_is_minimal(args):
    mf = _load_model(args.file)
    name, A = _first_algebra(mf)
    flag, offenders = is_minimal(A)
    if flag:
        return 0, {"algebra": name, "minimal": True}, [], \
            ["%s: minimal" % name]
    lines = ["%s: not minimal" % name,
             "offending generators: %s" % ", ".join(offenders)]
    return 1, {"algebra": name, "minimal": False,
               "offenders": list(offenders)}, \
        [{"offenders": list(offenders)}], lines


def _twisted_complex(args, mf):
    if args.twist is not None:
        base, form = _twist_form(mf, args.twist)
    else:
        _, base = _first_algebra(mf)
        form = base.zero()
    try:
        return base, TwistedComplex(base, form, period=args.period,
                                    truncation=args.max_degree)
    except ValueError as e:
        raise UsageError(str(e))


def _cmd_twisted_cohomology(args):
    mf = _load_model(args.file)
    base, C = _twisted_complex(args, mf)
    slices = twisted_cohomology(C)
    lines = ["twisted cohomology (period %d)" % C.period]
    dims = {}
    witnesses = []
    for sl in slices:
        dims[sl.residue] = sl.dim
        note = " (boundary window truncated)" if sl.boundary_affected else ""
        lines.append("residue %d: dim %d%s" % (sl.residue, sl.dim, note))
        for cls in sl.representatives:
            witnesses.append({"residue": sl.residue,
                              "representative": str(cls.rep)})
    return 0, {"period": C.period, "dims": dims}, witnesses, lines


_TWISTED_OPS = {"wedge-twist": op_wedge_twist,
                "wedge-square": op_wedge_square,
                "square-then-twist": op_square_then_twist}


def _cmd_twisted_op(args):
    mf = _load_model(args.file)
    base, C = _twisted_complex(args, mf)
    if args.rep not in mf.twists:
        raise UsageError("no twist named %r in the file" % args.rep)
    rep_decl = mf.twists[args.rep]
    if mf.algebras[rep_decl.algebra] is not base:
        raise UsageError("representative %r lives over a different algebra"
                         % args.rep)
    try:
        cls = TwistedClass(C, rep_decl.form)
        out = _TWISTED_OPS[args.op](C, cls)
    except ValueError as e:
        raise UsageError(str(e))
    lines = ["%s: %s  ->  %s (residue %d)"
             % (args.op, cls.rep, out.rep, out.residue)]
    result = {"op": args.op, "input": str(cls.rep),
              "input_residue": cls.residue,
              "output": str(out.rep), "output_residue": out.residue}
    return 0, result, [], lines


def _cmd_chern(args):
    mf = _load_model(args.file)
    name, phi = _first_matrix(mf)
    kmax = (args.max_degree // 2) if args.max_degree is not None else phi.size
    forms = chern_forms(phi, kmax)
    lines = ["chern forms of %s" % name]
    result = {"matrix": name, "forms": {}}
    for k, c in enumerate(forms, start=1):
        lines.append("c_%d = %s" % (k, c))
        result["forms"]["c%d" % k] = str(c)
    return 0, result, [], lines


def _cmd_pontrjagin(args):
    mf = _load_model(args.file)
    name, phi = _first_matrix(mf, antisymmetric=True)
    kmax = (args.max_degree // 4) if args.max_degree is not None \
        else max(phi.size // 2, 1)
    forms = pontrjagin_forms(phi, kmax)
    lines = ["pontrjagin forms of %s" % name]
    result = {"matrix": name, "forms": {}}
    for k, p in enumerate(forms, start=1):
        lines.append("p_%d = %s" % (k, p))
        result["forms"]["p%d" % k] = str(p)
    return 0, result, [], lines


def _cmd_euler(args):
    mf = _load_model(args.file)
    name, phi = _first_matrix(mf, antisymmetric=True)
    try:
        e = euler_form(phi)
    except ValueError as err:
        raise UsageError(str(err))
    return 0, {"matrix": name, "euler": str(e)}, [], ["e = %s" % e]


def _cmd_i8(args):
    mf = _load_model(args.file)
    name, phi = _first_matrix(mf, antisymmetric=True)
    p1, p2 = pontrjagin_forms(phi, 2)
    val = i8(p1, p2)
    lines = ["p_1 = %s" % p1, "p_2 = %s" % p2, "I_8 = %s" % val]
    return 0, {"matrix": name, "p1": str(p1), "p2": str(p2),
               "i8": str(val)}, [], lines


def _flat_datum(mf, decl):
    return FlatFormDatum(mf.algebras[decl.source], mf.algebras[decl.target],
                         decl.morphism)


def _cmd_verify_flat(args):
    mf = _load_model(args.file)
    morphs = _morphisms(mf)
    if not morphs:
        raise UsageError("the file declares no morphism")
    decl = morphs[0]
    try:
        F = _flat_datum(mf, decl)
    except ValueError as e:
        raise UsageError(str(e))
    rep = verify_flat(F)
    if rep.passed:
        return 0, {"datum": decl.name, "flat": True}, [], \
            ["%s: flat" % decl.name]
    lines = ["%s: not flat" % decl.name]
    witnesses = []
    for gen, res in rep.failures:
        lines.append("  d mismatch at %s: %s" % (gen, res))
        witnesses.append({"generator": gen, "residual": str(res)})
    return 1, {"datum": decl.name, "flat": False}, witnesses, lines


def _cmd_verify_twisted(args):
    mf = _load_model(args.file)
    morphs = _morphisms(mf)
    if len(morphs) < 2:
        raise UsageError("verify-twisted needs two morphisms: the datum on "
                         "the total algebra, then the twist on the base")
    M, tau = morphs[0], morphs[1]
    if M.target != tau.target:
        raise UsageError("datum and twist land in different algebras")
    try:
        bundle = RelativeExtension(mf.algebras[tau.source],
                                   mf.algebras[M.source])
        T = TwistedFlatFormDatum(bundle, _flat_datum(mf, tau), M.morphism)
    except ValueError as e:
        raise UsageError(str(e))
    rep = verify_twisted_flat(T)
    lines = []
    witnesses = []
    if rep.sullivan.ok:
        lines.append("bundle order: ok")
    else:
        cycle = list(rep.sullivan.cycle)
        lines.append("bundle order: cycle %s" % " -> ".join(cycle + cycle[:1]))
        witnesses.append({"leg": "sullivan", "cycle": cycle})
    for leg, failures in (("chain", rep.chain_failures),
                          ("triangle", rep.triangle_failures)):
        if failures:
            for gen, res in failures:
                lines.append("%s failure at %s: %s" % (leg, gen, res))
                witnesses.append({"leg": leg, "generator": gen,
                                  "residual": str(res)})
        else:
            lines.append("%s: ok" % leg)
    ok = rep.passed
    lines.append("twisted-flat: %s" % ("yes" if ok else "no"))
    return (0 if ok else 1), {"datum": M.name, "twist": tau.name,
                              "passed": ok}, witnesses, lines


def _cmd_verify_concordance(args):
    mf = _load_model(args.file)
    morphs = _morphisms(mf)
    if len(morphs) < 2:
        raise UsageError("verify-concordance needs at least two morphisms")
    try:
        f0 = _flat_datum(mf, morphs[0])
        f1 = _flat_datum(mf, morphs[1])
    except ValueError as e:
        raise UsageError(str(e))
    if len(morphs) == 2:
        try:
            ccd = decide_concordance(f0, f1, polybound=args.polybound)
        except (NotImplementedError, ValueError) as e:
            raise UsageError(str(e))
        if ccd is None:
            return 1, {"concordant": False}, [], ["concordant: no"]
        witnesses = [{"generator": g, "image": str(p)}
                     for g, p in sorted(ccd.morphism.assignment.items())]
        return 0, {"concordant": True}, witnesses, ["concordant: yes"]
    third = morphs[2]
    cyl = CylinderAlgebra(f0.target)
    declared = mf.algebras[third.target]
    if declared.gens != cyl.algebra.gens or declared.d != cyl.algebra.d:
        raise UsageError(
            "the third morphism must land in the cylinder algebra: base "
            "generators, then %s:0 and %s:1 with d %s = %s"
            % (cyl.t_name, cyl.dt_name, cyl.t_name, cyl.dt_name))
    try:
        ccd = ConcordanceDatum(cyl, f0, f1, third.morphism.assignment)
    except ValueError as e:
        raise UsageError(str(e))
    rep = verify_concordance(ccd)
    lines = []
    witnesses = []
    for gen, res in rep.chain_failures:
        lines.append("chain failure at %s: %s" % (gen, res))
        witnesses.append({"leg": "chain", "generator": gen,
                          "residual": str(res)})
    for end, gen, res in rep.endpoint_failures:
        lines.append("%s mismatch at %s: %s" % (end, gen, res))
        witnesses.append({"leg": end, "generator": gen,
                          "residual": str(res)})
    ok = rep.passed
    lines.append("concordance: %s" % ("valid" if ok else "invalid"))
    return (0 if ok else 1), {"concordant": ok}, witnesses, lines


def _cmd_line_quotient(args):
    mf = _load_model(args.file)
    name, A = _first_algebra(mf)
    if args.max_degree is None:
        raise UsageError("line-quotient needs --max-degree (the line degree n)")
    lattice = range(-2, 3)
    try:
        res = line_quotient(A, args.max_degree, lattice,
                            polybound=args.polybound)
    except ValueError as e:
        raise UsageError(str(e))
    except RuntimeError as e:
        return 1, {"algebra": name, "error": str(e)}, [], [str(e)]
    lines = ["line coefficients of degree %d over %s"
             % (args.max_degree + 1, name),
             "concordance classes: %d" % res.class_count,
             "cohomology dimension: %d" % res.h_dim,
             "concordances built: %d, refusals: %d"
             % (res.concordances, res.refusals)]
    result = {"algebra": name, "degree": args.max_degree,
              "classes": res.class_count, "h_dim": res.h_dim,
              "concordances": res.concordances, "refusals": res.refusals}
    witnesses = [{"class": i, "representative": str(p)}
                 for i, p in enumerate(res.reps)]
    return 0, result, witnesses, lines


def _random_monomial(rng, gens, max_even_exp=2):
    names = list(gens.names)
    rng.shuffle(names)
    expo = {}
    for name in names[:rng.randint(1, min(3, len(names)))]:
        if gens.degree_of(name) % 2 == 1:
            expo[name] = 1
        else:
            expo[name] = rng.randint(1, max_even_exp)
    return gens.monomial(expo)


def _random_element(rng, gens):
    out = gens.zero()
    for _ in range(rng.randint(1, 3)):
        c = Fraction(rng.choice([-2, -1, 1, 2]), rng.choice([1, 2]))
        out = out + gens.constant(c) * _random_monomial(rng, gens)
    return out


def _cmd_stokes_check(args):
    mf = _load_model(args.file)
    name, A = _first_algebra(mf)
    C = CylinderAlgebra(A)
    rng = random.Random(20260816)
    stokes = projection = 0
    trials = 30
    for _ in range(trials):
        w = _random_element(rng, C.algebra.gens)
        if check_stokes(C, w):
            stokes += 1
        beta = A.constant(Fraction(rng.choice([-2, -1, 1, 2]), 2)) \
            * _random_monomial(rng, A.gens)
        alpha = _random_element(rng, C.algebra.gens)
        if check_projection(C, beta, alpha):
            projection += 1
    ok = stokes == trials and projection == trials
    lines = ["stokes: %d/%d" % (stokes, trials),
             "projection: %d/%d" % (projection, trials)]
    return (0 if ok else 1), {"algebra": name, "stokes": stokes,
                              "projection": projection,
                              "trials": trials}, [], lines


def _cmd_corpus(args):
    if args.list:
        lines = []
        entries = []
        for n in corpus.names():
            e = corpus.entry(n)
            lines.append("%-12s %s" % (n, e["description"]))
            lines.append("             [%s]" % e["citation"])
            entries.append({"name": n, "description": e["description"],
                            "citation": e["citation"]})
        return 0, {"entries": entries}, [], lines
    if args.name is None:
        raise UsageError("corpus needs a name or --list")
    try:
        text = corpus.text(args.name)
    except KeyError as e:
        raise UsageError(str(e.args[0]))
    return 0, {"name": args.name, "text": text}, [], [text.rstrip("\n")]


_HANDLERS = {
    "check": (_cmd_check, "verify d^2 = 0 for every algebra in the file"),
    "cohomology": (_cmd_cohomology,
                   "cohomology table of the first algebra"),
    "minimal-model": (_cmd_minimal_model,
                      "minimal model of the first algebra"),
    "brackets": (_cmd_brackets,
                 "bracket table read off the first algebra"),
    "is-sullivan": (_cmd_is_sullivan,
                    "well-founded generator order, or a cycle"),
    "is-minimal": (_cmd_is_minimal,
                   "minimality of the first algebra"),
    "twisted-cohomology": (_cmd_twisted_cohomology,
                           "periodic twisted cohomology over a twist block"),
    "twisted-op": (_cmd_twisted_op,
                   "apply a periodic operation to a representative"),
    "chern": (_cmd_chern, "chern forms of the first matrix"),
    "pontrjagin": (_cmd_pontrjagin,
                   "pontrjagin forms of the first (antisymmetric) matrix"),
    "euler": (_cmd_euler, "euler form of the first (antisymmetric) matrix"),
    "i8": (_cmd_i8, "the degree-8 polynomial (p2 - p1^2/4)/48"),
    "verify-flat": (_cmd_verify_flat,
                    "check the first morphism as a flat form datum"),
    "verify-twisted": (_cmd_verify_twisted,
                       "check a twisted datum: morphisms M then tau"),
    "verify-concordance": (_cmd_verify_concordance,
                           "decide (2 morphisms) or verify (3) a concordance"),
    "line-quotient": (_cmd_line_quotient,
                      "concordance classes of line-coefficient lattice data"),
    "stokes-check": (_cmd_stokes_check,
                     "fiberwise Stokes and projection on random elements"),
    "corpus": (_cmd_corpus, "list or print built-in models"),
}


def _build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--max-degree", type=int, default=None, metavar="N")
    common.add_argument("--polybound", type=int, default=None, metavar="D")
    common.add_argument("--twist", default=None, metavar="NAME")
    common.add_argument("--period", type=int, default=None, metavar="R")
    common.add_argument("--json", action="store_true")
    common.add_argument("--out", default=None, metavar="FILE")
    top = argparse.ArgumentParser(
        prog="ratho",
        description="exact rational homotopy calculations on model files")
    sub = top.add_subparsers(dest="command", required=True)
    for name, (_, help_) in _HANDLERS.items():
        p = sub.add_parser(name, parents=[common], help=help_)
        if name == "corpus":
            p.add_argument("name", nargs="?", default=None)
            p.add_argument("--list", action="store_true")
        elif name == "twisted-op":
            p.add_argument("op", choices=sorted(_TWISTED_OPS))
            p.add_argument("rep",
                           help="twist block naming the representative")
            p.add_argument("file")
        else:
            p.add_argument("file")
    return top


def _inputs(args):
    skip = {"command", "json", "out"}
    out = {}
    for key, value in sorted(vars(args).items()):
        if key in skip or value in (None, False):
            continue
        out[key] = value
    return out


def main(argv=None):
    try:
        args = _build_parser().parse_args(argv)
    except SystemExit as e:
        return 0 if e.code == 0 else 2
    handler = _HANDLERS[args.command][0]
    try:
        code, result, witnesses, lines = handler(args)
    except UsageError as e:
        print("error: %s" % e, file=sys.stderr)
        return 2
    except ParseError as e:
        print("parse error: %s" % e, file=sys.stderr)
        return 2
    payload = {"command": args.command, "inputs": _jsonable(_inputs(args)),
               "result": _jsonable(result),
               "witnesses": _jsonable(witnesses)}
    text = json.dumps(payload, indent=2) if args.json else "\n".join(lines)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)
    return code


def console_entry():
    sys.exit(main(sys.argv[1:]))

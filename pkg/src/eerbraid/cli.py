"""Command-line front end.

Exit codes: 0 yes/success, 1 no/failure, 2 indeterminate or resource limit,
64 usage error.  Errors go to stderr as ``eerbraid: <kind>: <message>``.
"""

from __future__ import annotations

import argparse
import os
import sys
from typing import Sequence

from . import __version__, bmr, checks, garside, oracle, reversing
from ._accel import backend
from .presentation import Params, WordSyntaxError, is_positive, presentation

OK, NO, INDET, USAGE = 0, 1, 2, 64


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _positive_int(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"{text!r} is not an integer") from None
    if value < 1:
        raise argparse.ArgumentTypeError(f"{value} is not positive")
    return value


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="eerbraid", description="Word problem, Garside structure and checks for B(e,e,r).")
    p.add_argument("--e", type=_positive_int)
    p.add_argument("--r", type=_positive_int)
    p.add_argument("--step-limit", type=_positive_int)
    p.add_argument("--size-guard", type=_positive_int, default=garside.DEFAULT_SIZE_GUARD)
    p.add_argument("--cache", metavar="PATH", help="simples cache file (read if present, written otherwise)")
    p.add_argument("--version", action="store_true")
    sub = p.add_subparsers(dest="cmd", parser_class=_Parser)

    s = sub.add_parser("reverse", help="right (or left) reversing of a signed word")
    s.add_argument("word")
    s.add_argument("--left", action="store_true")
    s.add_argument("--trace", action="store_true")
    for name in ("equal", "conjugate"):
        s = sub.add_parser(name)
        s.add_argument("w1")
        s.add_argument("w2")
        if name == "conjugate":
            s.add_argument("--budget", type=_positive_int, default=10**5)
    sub.add_parser("nf").add_argument("word")
    for name in ("lcm", "gcd"):
        s = sub.add_parser(name)
        s.add_argument("u")
        s.add_argument("v")
    s = sub.add_parser("divides", help="does A divide W (on the left unless --right)")
    s.add_argument("a")
    s.add_argument("w")
    s.add_argument("--right", action="store_true")
    sub.add_parser("delta")
    sub.add_parser("simples").add_argument("--count", action="store_true")
    s = sub.add_parser("complete-check")
    s.add_argument("--mode", choices=("direct", "reduced"), default="direct")
    s.add_argument("--gap", choices=sorted(reversing.GAP_CASES), help="run one fixed-parameter family instead")
    sub.add_parser("nu").add_argument("word")
    sub.add_parser("bmr-phi").add_argument("word")
    sub.add_parser("bmr-class").add_argument("word")
    s = sub.add_parser("noncancel-demo")
    s.add_argument("--e", dest="demo_e", type=_positive_int)
    s = sub.add_parser("nofinite-check")
    s.add_argument("--n-max", type=_positive_int, default=3)
    s = sub.add_parser("verify", help="structural sweeps")
    s.add_argument("what", choices=("chi-rev", "garside", "rho-delta", "nu", "oracle", "dihedral",
                                     "bmr", "alpharot", "cancellative"))
    return p


def _params(args) -> Params:
    if args.e is None or args.r is None:
        raise UsageError(f"{args.cmd} needs --e and --r")
    try:
        return Params(args.e, args.r)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _load_cache(args, P) -> None:
    if not args.cache:
        return
    if os.path.exists(args.cache):
        with open(args.cache) as fh:
            garside.install_lattice(garside.SimpleLattice.load(fh.read(), P))
    else:
        lat = garside.simples(P.e, P.r, args.size_guard)
        with open(args.cache, "w") as fh:
            fh.write(lat.dump())


def _yes(flag: bool, out) -> int:
    print("yes" if flag else "no", file=out)
    return OK if flag else NO


def _positive(P, text: str, what: str):
    w = P.parse(text)
    if not is_positive(w):
        raise UsageError(f"{what} must be a positive word")
    return w


def _dispatch(args, out) -> int:
    cmd = args.cmd
    if cmd == "noncancel-demo":
        e = args.demo_e or args.e
        if e is None or e < 2:
            raise UsageError("noncancel-demo needs --e >= 2")
        w = bmr.noncancel_witness(e, args.size_guard)
        f = bmr.format_bmr
        print(f"a = {f(w.a)}", file=out)
        print(f"u = {f(w.u)}", file=out)
        print(f"v = {f(w.v)}", file=out)
        for name, cls in (("u", w.class_u), ("v", w.class_v)):
            print(f"class of {name}: {len(cls)}", file=out)
            for x in cls:
                print(f"  {f(x)}", file=out)
        print(f"a u = a v in the monoid: {'yes' if w.joined else 'no'}", file=out)
        print(f"u = v in the monoid: {'no' if w.distinct else 'yes'}", file=out)
        print(f"witness: {'yes' if w.ok else 'no'}", file=out)
        return OK if w.ok else NO
    if cmd == "complete-check" and args.gap:
        rep = reversing.check_gap_case(args.gap, args.step_limit)
        case = rep.case
        blocks = reversing.exponent_blocks(case.union, case.e)
        print(f"{case.name} at e={case.e} r={case.r}: {rep.checked} triples, "
              f"{len(rep.failures)} failing, {len(rep.outside)} outside {blocks}", file=out)
        return OK if rep.ok else NO
    if cmd == "verify" and args.what in ("chi-rev", "dihedral"):
        sweep = checks.chi_rev_symmetry() if args.what == "chi-rev" else checks.dihedral_counts()
        print(sweep.render(), file=out)
        return OK if sweep.ok else NO

    params = _params(args)
    P = presentation(params.e, params.r)
    _load_cache(args, P)
    limit = args.step_limit

    if cmd == "reverse":
        w = P.parse(args.word)
        if args.trace:
            fn = reversing.left_reverse_full if args.left else reversing.reverse_full
            table = reversing.left_complement_table(P.e, P.r) if args.left else reversing.complement_table(P.e, P.r)
            tr = fn(w, table, limit)
            for x in tr.words:
                print(P.format(x) or "e", file=out)
            status = tr.status
        else:
            if args.left:
                res = reversing.left_reverse(w, reversing.left_complement_table(P.e, P.r), limit)
            else:
                res = reversing.reverse(w, reversing.complement_table(P.e, P.r), limit)
            print(P.format(res.result) or "e", file=out)
            status = res.status
        print(f"status: {status}", file=out)
        return OK if status == reversing.TERMINATED else INDET
    if cmd == "equal":
        return _yes(garside.equal(P, P.parse(args.w1), P.parse(args.w2)), out)
    if cmd == "nf":
        print(garside.normal_form(P, P.parse(args.word)).render(), file=out)
        return OK
    if cmd in ("lcm", "gcd"):
        u, v = _positive(P, args.u, "u"), _positive(P, args.v, "v")
        fn = garside.right_lcm if cmd == "lcm" else garside.left_gcd
        print(P.format(garside.canonical_word(P, fn(P, u, v, limit))) or "e", file=out)
        return OK
    if cmd == "divides":
        a, w = _positive(P, args.a, "a"), _positive(P, args.w, "w")
        fn = garside.right_divides if args.right else garside.left_divides
        flag, rest = fn(P, a, w, limit)
        code = _yes(flag, out)
        if flag:
            print(f"quotient: {P.format(garside.canonical_word(P, rest)) or 'e'}", file=out)
        return code
    if cmd == "delta":
        print(P.format(garside.delta(P)), file=out)
        return OK
    if cmd == "simples":
        lat = garside.simples(P.e, P.r, args.size_guard)
        print(len(lat), file=out)
        if not args.count:
            for w in lat.words:
                print(P.format(w) or "e", file=out)
        return OK
    if cmd == "complete-check":
        rep = reversing.check_presentation_complete(P.e, P.r, args.mode, limit)
        counts = {s: rep.count(s) for s in (reversing.PASS, reversing.FAIL, reversing.INDET)}
        print(f"e={P.e} r={P.r} mode={args.mode} triples={len(rep.results)} "
              + " ".join(f"{k}={v}" for k, v in counts.items()), file=out)
        for t in rep.bad[:20]:
            print(f"  {t.status} {P.format(t.triple)}", file=out)
        if counts[reversing.FAIL]:
            return NO
        return INDET if counts[reversing.INDET] else OK
    if cmd == "conjugate":
        res = garside.conjugate_test(P, P.parse(args.w1), P.parse(args.w2), args.budget)
        print(res.status, file=out)
        return {True: OK, False: NO, None: INDET}[res.verdict]
    if cmd == "nu":
        print(P.nu(P.parse(args.word)), file=out)
        return OK
    if cmd == "bmr-phi":
        print(P.format(bmr.phi(bmr.parse_bmr(args.word, P.r), P)) or "e", file=out)
        return OK
    if cmd == "bmr-class":
        w = bmr.parse_bmr(args.word, P.r)
        if not is_positive(w):
            raise UsageError("bmr-class needs a positive word")
        cls = oracle.equivalence_class(w, bmr.bmr_relations(params), args.size_guard)
        print(len(cls), file=out)
        for x in cls:
            print(bmr.format_bmr(x), file=out)
        return OK
    if cmd == "nofinite-check":
        rep = bmr.nofinite_witnesses(P.e, args.n_max, args.size_guard)
        for row in rep.rows:
            print(f"n={row.n} {'PASS' if row.ok else 'FAIL'} group-equal={row.group_equal} "
                  f"bmr-equal={row.bmr_equal} extended-equal={row.s_equal} padded-extended-equal={row.s_equal_padded}",
                  file=out)
        print(rep.probes.render(), file=out)
        return OK if rep.ok else NO
    if cmd == "verify":
        what = args.what
        if what in ("bmr", "alpharot"):
            rep = bmr.verify_phi(params) if what == "bmr" else bmr.verify_alpharot(params)
            if what == "bmr":
                extra = bmr.verify_b_relations(params)
                rep.rows += extra.rows
            print(rep.render(), file=out)
            return OK if rep.ok else NO
        if what == "cancellative":
            found = oracle.cancellativity_probe(oracle.RewriteSystem.from_relations(P), 6)
            print(f"witnesses up to length 6: {len(found)}", file=out)
            return OK if not found else NO
        fn = {
            "garside": checks.garside_axioms, "rho-delta": checks.rho_fixes_delta,
            "nu": checks.nu_homomorphism, "oracle": checks.oracle_agreement,
        }.get(what)
        sweep = fn(P.e, P.r)
        print(sweep.render(), file=out)
        return OK if sweep.ok else NO
    raise UsageError("missing subcommand")


def run(argv: Sequence[str] | None = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        args = build_parser().parse_args(argv)
        if args.version:
            print(f"eerbraid {__version__} ({backend()} kernels)", file=out)
            return OK
        if args.cmd is None:
            raise UsageError("missing subcommand")
        return _dispatch(args, out)
    except UsageError as exc:
        print(f"eerbraid: usage: {exc}", file=err)
        return USAGE
    except WordSyntaxError as exc:
        print(f"eerbraid: parse: {exc}", file=err)
        return USAGE
    except garside.Indeterminate as exc:
        print(f"eerbraid: indeterminate: {exc}", file=err)
        return INDET
    except garside.ResourceLimit as exc:
        print(f"eerbraid: resource: {exc}", file=err)
        return INDET
    except (ValueError, OSError) as exc:
        print(f"eerbraid: error: {exc}", file=err)
        return NO


def main() -> None:
    sys.exit(run())

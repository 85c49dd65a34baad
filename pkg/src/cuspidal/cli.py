"""Command-line front end: every verification behind a named subcommand.

Output is either human-readable text or a single deterministic JSON document
{"config": ..., "results": [...], "failures": [...]}.  Exit codes: 0 all
checks passed, 1 verification failure, 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from .abelian import abelianization, commutator_abelianization_rank
from .alexander import alexander_polynomial, cyclotomic_target
from .errors import InvalidParameter, SplittingFailure, VerificationFailure
from .geometry import (PrimeField, choose_prime, milnor_ratio,
                       singular_points,
                       singular_points_scan, splitting_check_n2,
                       superabundance, superabundance_multi,
                       tangent_cone_rank)
from .homcount import count_homs
from .presentations import (derive_pi1_via_rs, map_check, oka_quotient,
                            presentation_G, presentation_G_raw,
                            presentation_oka, presentation_pi1,
                            presentation_pi1_reduced, presentation_zariski3,
                            zariski_iso_candidate)
from .words import Presentation, format_presentation

FAMILIES = ("G", "G-raw", "pi1", "pi1-reduced", "zariski3", "oka",
            "oka-quotient")


def build_family(family: str, n: int | None, variant: str) -> Presentation:
    if family == "G":
        return presentation_G()
    if family == "G-raw":
        return presentation_G_raw()
    if n is None:
        raise InvalidParameter(f"--n is required for family {family!r}")
    if family == "pi1":
        return presentation_pi1(n)
    if family == "pi1-reduced":
        return presentation_pi1_reduced(n)
    if family == "zariski3":
        if n != 3:
            raise InvalidParameter("zariski3 is only defined for n = 3")
        return presentation_zariski3(variant)
    if family == "oka":
        return presentation_oka(n)
    if family == "oka-quotient":
        return oka_quotient(n)[1]
    raise InvalidParameter(f"unknown family: {family!r}")


def _presentation_doc(p: Presentation) -> dict:
    return {"generators": list(p.generators),
            "relators": [list(r) for r in p.relators]}


def _abelian_doc(a) -> dict:
    return {"free_rank": a.free_rank, "torsion": list(a.torsion),
            "display": str(a)}


class Run:
    """Accumulates results and failures for one CLI invocation."""

    def __init__(self, config: dict):
        self.config = config
        self.results: list[dict] = []
        self.failures: list[str] = []

    def record(self, name: str, value, passed: bool | None = None):
        entry = {"check": name, "value": value}
        if passed is not None:
            entry["passed"] = passed
            if not passed:
                self.failures.append(name)
        self.results.append(entry)

    def emit(self, fmt: str) -> int:
        if fmt == "structured":
            doc = {"config": self.config, "results": self.results,
                   "failures": self.failures}
            print(json.dumps(doc, sort_keys=True, default=str))
        else:
            for entry in self.results:
                mark = ""
                if "passed" in entry:
                    mark = "  [ok]" if entry["passed"] else "  [FAIL]"
                print(f"{entry['check']}: {entry['value']}{mark}")
            if self.failures:
                print("failures: " + ", ".join(self.failures))
        return 1 if self.failures else 0


def cmd_present(args, run: Run) -> None:
    p = build_family(args.family, args.n, args.variant)
    if args.format == "structured":
        run.record("presentation", _presentation_doc(p))
    else:
        sys.stdout.write(format_presentation(p))


def cmd_derive(args, run: Run) -> None:
    p = derive_pi1_via_rs(args.n)
    if args.format == "structured":
        run.record("presentation", _presentation_doc(p))
    else:
        sys.stdout.write(format_presentation(p))


def cmd_abelianize(args, run: Run) -> None:
    p = build_family(args.family, args.n, args.variant)
    run.record("abelianization", _abelian_doc(abelianization(p)))


def cmd_alexander(args, run: Run) -> None:
    p = build_family(args.family, args.n, args.variant)
    poly, stripped = alexander_polynomial(p)
    run.record("alexander_polynomial",
               {"low": poly.low, "coeffs": list(poly.coeffs),
                "display": str(poly), "stripped_t_minus_1": stripped})
    if args.family in ("pi1", "pi1-reduced") and args.n % 2 == 1:
        target = cyclotomic_target(args.n)
        run.record("matches_cyclotomic_cube",
                   str(target), poly.normalized() == target.normalized())


def cmd_homcount(args, run: Run) -> None:
    p = build_family(args.family, args.n, args.variant)
    rep = count_homs(p, args.k, args.budget, count_surjective=args.surjective)
    doc = {"symbols": rep.symbols, "total": rep.total}
    if rep.surjective is not None:
        doc["surjective"] = rep.surjective
    run.record("hom_count", doc)


def cmd_compare(args, run: Run) -> None:
    a = build_family(args.family_a, args.n, args.variant)
    b = build_family(args.family_b, args.n, args.variant)
    ab_a, ab_b = abelianization(a), abelianization(b)
    run.record("abelianization",
               {"a": str(ab_a), "b": str(ab_b)}, ab_a == ab_b)
    for k in range(2, args.kmax + 1):
        ca = count_homs(a, k, args.budget).total
        cb = count_homs(b, k, args.budget).total
        run.record(f"hom_count_k{k}", {"a": ca, "b": cb}, ca == cb)


def cmd_superabundance(args, run: Run) -> None:
    primes = ([int(tok) for tok in args.primes.split(",")]
              if args.primes else None)
    rep = superabundance_multi(args.n, primes)
    run.record("superabundance",
               {"n": rep.n, "prime": rep.prime, "rank": rep.rank,
                "h0": rep.h0, "s": rep.s})


def cmd_singular_points(args, run: Run) -> None:
    field = PrimeField(args.prime)
    pts = singular_points(args.n, field)
    run.record("singular_points",
               {"count": len(pts),
                "points": sorted(list(pt.coords) for pt in pts)})
    if args.scan:
        scan = singular_points_scan(args.n, field)
        run.record("exhaustive_scan_agrees", {"count": len(scan)},
                   sorted(pt.coords for pt in pts)
                   == sorted(pt.coords for pt in scan))
    ranks = sorted({tangent_cone_rank(pt, args.n, field) for pt in pts})
    run.record("tangent_cone_ranks", ranks)


def cmd_milnor_ratio(args, run: Run) -> None:
    r = milnor_ratio(args.n)
    run.record("milnor_ratio", {"numerator": r.numerator,
                                "denominator": r.denominator,
                                "display": str(r)})


def cmd_split_check(args, run: Run) -> None:
    rep = splitting_check_n2(PrimeField(args.prime))
    run.record("splitting",
               {"prime": rep.prime,
                "linear_forms": [list(f) for f in rep.linear_forms],
                "intersection_points":
                    [list(pt) for pt in rep.intersection_points]},
               len(rep.linear_forms) == 4
               and len(set(rep.intersection_points)) == 6)


def cmd_verify_all(args, run: Run) -> None:
    n = args.n
    pi1 = presentation_pi1(n)
    ab = abelianization(pi1)
    if n % 2 == 1:
        expected = (ab.free_rank == 0 and ab.torsion == (2 * n,))
    elif n == 2:
        expected = (ab.free_rank == 3 and ab.torsion == ())
    else:
        expected = (ab.free_rank == 3 and ab.torsion == (n // 2,))
    run.record("abelianization_dichotomy", str(ab), expected)

    if n <= 4:
        derived = derive_pi1_via_rs(n)
        ok = abelianization(derived) == ab
        for k in (3, 4) if n <= 3 else (3,):
            ok = ok and (count_homs(derived, k).total
                         == count_homs(pi1, k).total)
        run.record("derivation_match", {"generators":
                                        len(derived.generators)}, ok)

    if n % 2 == 1:
        poly, stripped = alexander_polynomial(presentation_pi1_reduced(n))
        target = cyclotomic_target(n)
        run.record("alexander_vs_cyclotomic_cube",
                   {"display": str(poly), "stripped": stripped},
                   poly.normalized() == target.normalized())
        rank = commutator_abelianization_rank(n)
        run.record("commutator_abelianization_rank", rank,
                   rank == 3 * (n - 1))
        rep = superabundance_multi(n)
        run.record("superabundance",
                   {"prime": rep.prime, "h0": rep.h0, "s": rep.s},
                   rep.s == 3 and rep.h0 == (n - 3) * (n - 2) // 2)

    field = choose_prime(n, 100)
    pts = singular_points(n, field)
    ranks = {tangent_cone_rank(pt, n, field) for pt in pts}
    run.record("singular_points",
               {"prime": field.p, "count": len(pts),
                "tangent_cone_ranks": sorted(ranks)},
               len(pts) == 3 * n and ranks == ({2} if n == 2 else {1}))

    if n == 2:
        rep = splitting_check_n2(choose_prime(2, 10, mod4=True))
        run.record("splitting", {"prime": rep.prime,
                                 "forms": len(rep.linear_forms)},
                   len(rep.linear_forms) == 4)

    gm, quotient = oka_quotient(n)
    oka = presentation_oka(n)
    if n % 2 == 1:
        ok = abelianization(quotient) == abelianization(oka)
        for k in (3, 4):
            ok = ok and (count_homs(quotient, k).total
                         == count_homs(oka, k).total)
        run.record("oka_quotient_match", str(abelianization(quotient)), ok)

    if n == 3:
        rep = map_check(zariski_iso_candidate("corrected"), kmax=4)
        run.record("zariski_correspondence",
                   {"h1": str(rep.target_h1),
                    "hom_counts": list(rep.hom_counts),
                    "triviality": rep.triviality.passed},
                   rep.consistent_with_isomorphism)

    r = milnor_ratio(n)
    ok = n < 4 or abs(r - Fraction(3, 4)) < Fraction(1, n)
    run.record("milnor_ratio", str(r), r == Fraction(3 * (n - 1), 4 * n)
               and ok)


def make_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cuspidal",
        description="Exact verification toolkit for a family of cuspidal "
                    "plane curves: presentations, abelianizations, Alexander "
                    "polynomials, and finite-field singularity geometry.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, fn, **kw):
        p = sub.add_parser(name, **kw)
        p.add_argument("--format", choices=("text", "structured"),
                       default="text")
        p.set_defaults(fn=fn)
        return p

    def family_args(p, need_n=True):
        p.add_argument("--family", choices=FAMILIES, required=True)
        p.add_argument("--n", type=int, default=None)
        p.add_argument("--variant", choices=("stated", "corrected"),
                       default="corrected")

    p = add("present", cmd_present, help="print a presentation")
    family_args(p)
    p = add("derive", cmd_derive,
            help="derive the curve presentation by coset rewriting")
    p.add_argument("--n", type=int, required=True)
    p = add("abelianize", cmd_abelianize, help="abelianization invariants")
    family_args(p)
    p = add("alexander", cmd_alexander, help="Alexander polynomial")
    family_args(p)
    p = add("homcount", cmd_homcount,
            help="count homomorphisms into a symmetric group")
    family_args(p)
    p.add_argument("--k", type=int, default=3)
    p.add_argument("--budget", type=int, default=10**9)
    p.add_argument("--surjective", action="store_true")
    p = add("compare", cmd_compare,
            help="compare two families on the invariant battery")
    p.add_argument("family_a", choices=FAMILIES)
    p.add_argument("family_b", choices=FAMILIES)
    p.add_argument("--n", type=int, default=None)
    p.add_argument("--variant", choices=("stated", "corrected"),
                   default="corrected")
    p.add_argument("--kmax", type=int, default=3)
    p.add_argument("--budget", type=int, default=10**9)
    p = add("superabundance", cmd_superabundance,
            help="superabundance over three admissible primes")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--primes", default=None,
                   help="comma-separated primes, each 1 mod 2n")
    p = add("singular-points", cmd_singular_points,
            help="construct and verify the singular locus over F_p")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--prime", type=int, required=True)
    p.add_argument("--scan", action="store_true",
                   help="also run the exhaustive projective-plane scan")
    p = add("milnor-ratio", cmd_milnor_ratio,
            help="total Milnor number over degree squared")
    p.add_argument("--n", type=int, required=True)
    p = add("split-check", cmd_split_check,
            help="split the n=2 quartic into linear forms over F_p")
    p.add_argument("--prime", type=int, required=True)
    p = add("verify-all", cmd_verify_all, help="run the full battery")
    p.add_argument("--n", type=int, required=True)
    return parser


def main(argv=None) -> int:
    parser = make_parser()
    args = parser.parse_args(argv)
    config = {k: v for k, v in sorted(vars(args).items())
              if k != "fn" and v is not None}
    run = Run(config)
    try:
        args.fn(args, run)
    except (InvalidParameter, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (VerificationFailure, SplittingFailure) as exc:
        print(f"verification failure: {exc}", file=sys.stderr)
        return 1
    return run.emit(args.format)


if __name__ == "__main__":
    sys.exit(main())

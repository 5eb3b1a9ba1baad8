"""Command-line interface.

Exit codes: 0 success, 1 input error or guard violation, 2 when a closed
formula disagrees with its oracle somewhere in the run.
"""
from __future__ import annotations

import argparse
import json
import sys

from .doubling import AlgebraError, load_algebra
from .gf_tower import TowerError
from .rings import NormGroupUnknown

EXIT_OK, EXIT_INPUT, EXIT_DISAGREE = 0, 1, 2


class InputError(Exception):
    pass


def _emit(obj, args, csv_text: str | None = None):
    if getattr(args, "format", "json") == "csv" and csv_text is not None:
        text = csv_text
    else:
        text = json.dumps(obj, indent=1, sort_keys=True) + "\n"
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _load(path):
    try:
        return load_algebra(path)
    except FileNotFoundError:
        raise InputError(f"no such file: {path}") from None
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: malformed JSON ({exc.msg}, line {exc.lineno})") from None
    except (AlgebraError, TowerError, ValueError, TypeError) as exc:
        raise InputError(f"{path}: {exc}") from None


def _disagreements(report) -> list[str]:
    return report.disagreements


def cmd_structure(args) -> int:
    from .structure import probe
    A = _load(args.algebra)
    rep = probe(A)
    _emit(rep.to_json(), args)
    return EXIT_OK if rep.ok else EXIT_DISAGREE


def cmd_division(args) -> int:
    from .structure import (YES, _division_finite, _division_quat)
    A = _load(args.algebra)
    if A.finite:
        if A.size > 10_000:
            raise InputError(f"brute-force division scan needs q^2 <= 10000, got {A.size}")
        _, _, detail, ok = _division_finite(A)
        out = {k: detail[k] for k in ("square_test", "norm_criterion", "bruteforce")}
    else:
        verdict, method, detail, ok = _division_quat(A)
        out = {"norm_criterion": detail.get("norm_criterion"), "verdict": verdict, "method": method}
        if "witness" in detail:
            out["witness"] = detail["witness"]
    _emit(out, args)
    return EXIT_OK if ok is not False else EXIT_DISAGREE


def cmd_aut(args) -> int:
    from .morphisms import aut_bruteforce, aut_theorem_enumerate, tables_as_set
    from .structure import probe
    A = _load(args.algebra)
    if not A.finite:
        return _quat_aut(A, args)
    out, status = {}, EXIT_OK
    theo = bf = None
    if args.method in ("theorem", "both"):
        theo = aut_theorem_enumerate(A)
        out["theorem"] = [G.to_json() for G in theo]
    if args.method in ("bruteforce", "both"):
        bf = aut_bruteforce(A)
        out["bruteforce"] = [m.to_json() for m in bf]
    if theo is not None and bf is not None:
        applies = any(probe(A, division=False).nucleus_equals_ring().values())
        ts, bs = tables_as_set(theo), tables_as_set(bf)
        out["theorem_applies"] = applies
        out["agree"] = ts == bs
        out["counts"] = {"theorem": len(ts), "bruteforce": len(bs)}
        if not ts <= bs or (applies and ts != bs):
            status = EXIT_DISAGREE
    _emit(out, args)
    return status


def _quat_aut(A, args) -> int:
    from .morphisms import MorphismError
    from .quaternion_csa import verify_csa_automorphism
    if args.method != "theorem" or args.g is None:
        raise InputError("quaternion automorphisms: use --method theorem with --g, --h, --b")
    R = A.ring
    g, h = R.aut_from_json(args.g), R.aut_from_json(args.h or args.g)
    try:
        G = verify_csa_automorphism(A, g, h, args.b)
    except MorphismError as exc:
        _emit({"verified": False, "reason": str(exc)}, args)
        return EXIT_OK
    _emit({"verified": G.verified, "map": G.to_json()}, args)
    return EXIT_OK


def cmd_iso(args) -> int:
    from .morphisms import (ISO_LIMIT, OBSTRUCTED, iso_bruteforce, norm_obstruction,
                            restricted_iso_search, tables_as_set)
    A, B = _load(args.left), _load(args.right)
    if not (A.finite and B.finite):
        raise InputError("iso needs two finite-field doublings")
    if A.ring != B.ring:
        raise InputError("iso needs both algebras over the same tower")
    restricted = restricted_iso_search(A, B)
    obstruction = norm_obstruction(A, B)
    out = {"norm_obstruction": obstruction, "restricted": [G.to_json() for G in restricted]}
    status = EXIT_OK
    if obstruction == OBSTRUCTED and restricted:
        status = EXIT_DISAGREE
    if A.size <= ISO_LIMIT:
        full = iso_bruteforce(A, B)
        out["bruteforce"] = [m.to_json() for m in full]
        out["non_restricting"] = sum(1 for m in full if not m.preserves_first_slot())
        if not tables_as_set(restricted) <= tables_as_set(full):
            status = EXIT_DISAGREE
    _emit(out, args)
    return status


def cmd_census(args) -> int:
    from .census import GuardError, SweepSpec, census
    if args.spec:
        try:
            with open(args.spec, encoding="utf-8") as fh:
                spec = SweepSpec.from_json(json.load(fh))
        except FileNotFoundError:
            raise InputError(f"no such file: {args.spec}") from None
        except json.JSONDecodeError as exc:
            raise InputError(f"{args.spec}: malformed JSON ({exc.msg})") from None
    else:
        if args.p is None or args.r is None:
            raise InputError("census needs --spec or --p/--s/--r")
        spec = SweepSpec(args.p, args.s, args.r, division_only=args.division_only,
                         proper_only=args.proper_only)
    try:
        rep = census(spec, args.mode, jobs=args.jobs)
    except (GuardError, TowerError) as exc:
        raise InputError(str(exc)) from None
    _emit(rep.to_json(), args, rep.to_csv())
    for d in rep.to_json()["disagreements"]:
        print(f"disagreement: c={d['c']} sigma={d['sigma']} flags={d['flags']}", file=sys.stderr)
    return EXIT_OK if rep.ok else EXIT_DISAGREE


def cmd_quat(args) -> int:
    from .quaternion_csa import (centralizer_type_solve, division_sufficient,
                                 random_nonzero_product_sanity)
    from .structure import probe
    A = _load(args.algebra)
    if A.finite:
        raise InputError("quat needs a quaternion doubling (base 'quat')")
    rep = probe(A)
    out = {"structure": rep.to_json()}
    try:
        out["division_sufficient"] = division_sufficient(A)
    except NormGroupUnknown as exc:
        out["division_sufficient"] = f"error: {exc}"
    out["nuc_left_condition"] = centralizer_type_solve(A, "nuc_left_condition").to_json()
    out["commutant_dim"] = centralizer_type_solve(A, "commutant").dim
    status = EXIT_OK if rep.ok else EXIT_DISAGREE
    if args.samples:
        zeros = random_nonzero_product_sanity(A, args.samples, args.seed)
        out["random_products"] = {"samples": args.samples, "seed": args.seed, "zero": zeros}
        if zeros and out["division_sufficient"] == "yes":
            status = EXIT_DISAGREE
    _emit(out, args)
    return status


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="cayley-doubling",
                                 description="Doubled algebras Cay(R, c, s1..s4): structure and morphisms.")
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--out", help="write output here instead of stdout")
        return p

    p = common(sub.add_parser("structure", help="commutator, nuclei, centre, agreement flags"))
    p.add_argument("--algebra", required=True)
    p.set_defaults(func=cmd_structure)

    p = common(sub.add_parser("division", help="the three division tests"))
    p.add_argument("--algebra", required=True)
    p.set_defaults(func=cmd_division)

    p = common(sub.add_parser("aut", help="automorphisms"))
    p.add_argument("--algebra", required=True)
    p.add_argument("--method", choices=("theorem", "bruteforce", "both"), default="both")
    p.add_argument("--g", help="quaternion case: witness of g")
    p.add_argument("--h", help="quaternion case: witness of h (defaults to g)")
    p.add_argument("--b", default="1", help="quaternion case: rational b")
    p.set_defaults(func=cmd_aut)

    p = common(sub.add_parser("iso", help="isomorphisms between two algebras"))
    p.add_argument("--left", required=True)
    p.add_argument("--right", required=True)
    p.set_defaults(func=cmd_iso)

    p = common(sub.add_parser("census", help="sweep and isomorphism classes"))
    p.add_argument("--spec", help="sweep spec JSON")
    p.add_argument("--p", type=int)
    p.add_argument("--s", type=int, default=1)
    p.add_argument("--r", type=int)
    p.add_argument("--mode", choices=("restricted", "full"), default="restricted")
    p.add_argument("--division-only", action="store_true")
    p.add_argument("--proper-only", action="store_true")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.set_defaults(func=cmd_census)

    p = common(sub.add_parser("quat", help="quaternion-case report"))
    p.add_argument("--algebra", required=True)
    p.add_argument("--samples", type=int, default=0, help="random nonzero-product checks")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_quat)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (AlgebraError, TowerError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())

"""Command-line front end: build, analyze, words, check, verify-suite.

Exit codes: 0 success / identity holds; 1 semantic failure (counterexample
or suite failure); 2 invalid input or validation error.  BGLAB_BUDGET in
the environment overrides the default evaluation budget.
"""

from __future__ import annotations

import argparse
import json
import re
import sys

from . import analysis, checker, constructions, suite, terms
from .core import FiniteAlgebra, load_algebra, mult_reduct, validate
from .errors import BglabError

_GROUP_SPEC = re.compile(r"^(S|C|D)(\d+)$|^Q8$")


def _group_from_spec(spec: str) -> FiniteAlgebra:
    m = _GROUP_SPEC.match(spec)
    if m:
        if spec == "Q8":
            return constructions.quaternion_group()
        family = {"S": "symmetric", "C": "cyclic", "D": "dihedral"}[m.group(1)]
        return constructions.make_group(family, int(m.group(2)))
    return load_algebra(spec)


def build_from_meta(meta: dict) -> FiniteAlgebra:
    """Rebuild a constructed algebra from its recorded parameters."""
    kind = meta.get("construction")
    if kind == "group":
        return constructions.make_group(meta["family"], meta.get("n"))
    if kind == "b21":
        return constructions.brandt_monoid_b21()
    if kind == "brandt":
        return constructions.brandt_semigroup(build_from_meta(meta["group"]),
                                              meta["index_count"])
    if kind == "power-semiring":
        return constructions.power_semiring(build_from_meta(meta["group"]),
                                            nonempty_only=meta.get("nonempty", False),
                                            with_star=meta.get("with_star", False))
    if kind == "involution-power":
        return constructions.involution_power(build_from_meta(meta["group"]))
    if kind == "hall":
        return constructions.hall_semiring(meta["n"], meta.get("with_star", True))
    if kind == "kadourek":
        return constructions.kadourek_semigroup(meta["n"], meta["h"])[0]
    if kind == "subalgebra":
        parent = build_from_meta(meta["parent"])
        return constructions.induced_algebra(parent, meta["elements"])[0]
    if kind == "rees-quotient":
        parent = build_from_meta(meta["parent"])
        return constructions.rees_quotient(parent, meta["ideal"])
    if kind == "adjoin-zero":
        return constructions.adjoin_zero(build_from_meta(meta["parent"]))
    if kind == "adjoin-identity":
        return constructions.adjoin_identity(build_from_meta(meta["parent"]))
    raise BglabError(f"cannot rebuild construction {kind!r}")


def _cmd_build(args) -> int:
    what = args.what
    if what == "group":
        alg = _group_from_spec(args.group)
    elif what == "brandt":
        alg = constructions.brandt_semigroup(_group_from_spec(args.group), args.indices)
    elif what == "b21":
        alg = constructions.brandt_monoid_b21()
    elif what == "power-semiring":
        alg = constructions.power_semiring(_group_from_spec(args.group),
                                           nonempty_only=args.nonempty,
                                           with_star=args.with_star)
    elif what == "involution-power":
        alg = constructions.involution_power(_group_from_spec(args.group))
    elif what == "hall":
        alg = constructions.hall_semiring(args.n, with_star=not args.no_star)
    elif what == "kadourek":
        alg = constructions.kadourek_semigroup(args.n, args.height)[0]
    elif what == "subset-b":
        group = _group_from_spec(args.group)
        members = [group.index(s.strip()) for s in args.subgroup.split(",")]
        g = group.index(args.element)
        masks = constructions.subset_b(group, members, g)
        power = constructions.power_semiring(group, with_star=args.with_star)
        alg, _ = constructions.induced_algebra(power, masks)
    elif what == "subalgebra":
        parent = load_algebra(args.algebra)
        seeds = [int(s) for s in args.seeds.split(",")]
        members = constructions.subalgebra_generate(parent, seeds)
        alg, _ = constructions.induced_algebra(parent, members)
    elif what == "rees-quotient":
        parent = load_algebra(args.algebra)
        alg = constructions.rees_quotient(parent, [int(s) for s in args.ideal.split(",")])
    elif what == "adjoin-zero":
        alg = constructions.adjoin_zero(load_algebra(args.algebra))
    elif what == "adjoin-identity":
        alg = constructions.adjoin_identity(load_algebra(args.algebra))
    elif what == "from-meta":
        alg = build_from_meta(load_algebra(args.algebra).meta)
    else:
        raise BglabError(f"unknown construction {what!r}")
    alg.save(args.output)
    print(f"{args.output}: {alg.kind} with {alg.size} elements")
    return 0


def _cmd_analyze(args) -> int:
    alg = load_algebra(args.algebra)
    bad = validate(alg)
    if bad is not None:
        print(f"validation failed: {bad.describe(alg)}", file=sys.stderr)
        return 2
    reduct = mult_reduct(alg)
    out: dict = {"kind": alg.kind, "size": alg.size}
    if analysis.is_group(reduct):
        out["group"] = True
        try:
            out.update(analysis.group_analytics(reduct).to_dict())
        except BglabError:
            out["exponent"] = analysis.group_exponent(reduct)
            out["derived_length"] = analysis.derived_length(reduct)
            out["solvable"] = out["derived_length"] is not None
            out["subgroup_enumeration"] = "skipped (size budget)"
    else:
        core_set = analysis.idempotent_generated(reduct)
        out["block_group"] = analysis.is_block_group(reduct)
        out["j_trivial_ES"] = analysis.j_trivial(reduct, core_set)[0]
        rep = analysis.principal_series(reduct)
        out.update(rep.to_dict())
        out["subgroups"] = [
            {"idempotent": e, "order": len(members)}
            for e, members in analysis.maximal_subgroups(reduct)
        ]
    text = json.dumps(out, indent=2, sort_keys=True)
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text + "\n")
    print(text)
    return 0


def _cmd_words(args) -> int:
    if args.family == "v":
        term = terms.v_word(args.n, args.m, args.height)
        word = term.flatten(args.budget)
    elif args.family == "u":
        word = terms.u_word(args.n, args.k, args.m)
    else:
        word = terms.w_word(args.n, args.height, args.budget)
    if args.json:
        if isinstance(word, terms.Word):
            letters = [{"indices": list(v.indices), "exp": 1} for v in word.letters]
        else:
            letters = [{"indices": list(v.indices), "exp": e} for v, e in word.letters]
        payload = {"alphabet": [v.name for v in word.variables()],
                   "letters": letters}
        print(json.dumps(payload))
    else:
        print(terms.format_term(word))
    return 0


_FAMILY_ATOM = re.compile(
    r"^\s*(?P<fam>[vuw])\[(?P<args>\d+(?:\s*,\s*\d+)*)\]\s*(?:\^(?P<exp>\d+))?\s*$")


def _parse_side(text: str):
    m = _FAMILY_ATOM.match(text)
    if not m:
        return terms.parse_term(text)
    params = [int(x) for x in m.group("args").split(",")]
    fam = m.group("fam")
    if fam == "v":
        base = terms.v_word(*params)
    elif fam == "u":
        base = terms.u_word(*params)
    else:
        base = terms.w_word(*params)
    exp = m.group("exp")
    return terms.PowerOf(base, int(exp)) if exp else base


def _parse_identity_arg(text: str):
    if "=" not in text:
        raise BglabError("identity must contain '='")
    lhs, rhs = text.split("=", 1)
    return _parse_side(lhs), _parse_side(rhs)


def _cmd_check(args) -> int:
    alg = load_algebra(args.algebra)
    lhs, rhs = _parse_identity_arg(args.identity)
    domains = {}
    for spec in args.domain or []:
        name, path = spec.split("=", 1)
        with open(path) as fh:
            values = json.load(fh)
        elems = [alg.index(v) if isinstance(v, str) else int(v) for v in values]
        for v in set(lhs.variables()) | set(rhs.variables()):
            if v.name == name:
                domains[v] = elems
    if args.mode == "exhaustive":
        verdict = checker.check_identity_exhaustive(
            alg, lhs, rhs, domains=domains or None, budget=args.budget)
    elif args.mode == "sampled":
        verdict = checker.check_identity_sampled(
            alg, lhs, rhs, samples=args.samples, seed=args.seed,
            domains=domains or None)
    elif args.mode == "block":
        if not (isinstance(lhs, terms.BlockWord) and isinstance(rhs, terms.PowerOf)
                and rhs.base == lhs and rhs.exponent == 2):
            raise BglabError("block mode expects v[n,m,h] = v[n,m,h]^2")
        img = checker.check_v_square_image(alg, lhs.n, lhs.m, lhs.depth)
        verdict = checker.CheckVerdict(img.status, witness=img.witness,
                                       evaluations=img.evaluations)
    else:
        raise BglabError(f"unknown mode {args.mode!r}")
    payload = {"status": verdict.status, "evaluations": verdict.evaluations}
    if verdict.seed is not None:
        payload["seed"] = verdict.seed
    if verdict.witness:
        payload["witness"] = {v.name: alg.labels[i] for v, i in
                              sorted(verdict.witness.items())}
    if verdict.note:
        payload["note"] = verdict.note
    print(json.dumps(payload, indent=2, sort_keys=True))
    if verdict.status == checker.COUNTEREXAMPLE:
        return 1
    if verdict.status == checker.BUDGET_EXCEEDED:
        return 2
    return 0


def _cmd_verify_suite(args) -> int:
    report = suite.run_suite(profile=args.profile, seed=args.seed)
    for result in sorted(report.results, key=lambda r: r.id):
        flag = "PASS" if result.status == "pass" else "FAIL"
        note = "" if result.mandatory else " [non-mandatory]"
        print(f"{flag}{note} {result.id}: {result.claim} "
              f"({result.evaluations} evaluations, {result.wall_ms:.0f} ms)")
        if result.status != "pass":
            print(f"      {result.detail}")
    print(f"suite: {'PASS' if report.passed else 'FAIL'} ({args.profile} profile)")
    if args.output:
        with open(args.output, "w") as fh:
            json.dump(report.to_dict(), fh, indent=2, sort_keys=True)
            fh.write("\n")
    return 0 if report.passed else 1


def _parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="bglab",
                                description="finite semigroup/semiring workbench")
    sub = p.add_subparsers(dest="command", required=True)

    b = sub.add_parser("build", help="construct an algebra and write it as JSON")
    b.add_argument("what", choices=[
        "group", "brandt", "b21", "power-semiring", "involution-power", "hall",
        "kadourek", "subset-b", "subalgebra", "rees-quotient", "adjoin-zero",
        "adjoin-identity", "from-meta"])
    b.add_argument("--group", help="group spec (S3, C6, D4, Q8) or algebra file")
    b.add_argument("--indices", type=int, default=2, help="Brandt index count")
    b.add_argument("--n", type=int, default=2)
    b.add_argument("--height", type=int, default=1)
    b.add_argument("--nonempty", action="store_true")
    b.add_argument("--with-star", action="store_true")
    b.add_argument("--no-star", action="store_true")
    b.add_argument("--subgroup", help="comma-separated element labels")
    b.add_argument("--element", help="conjugating element label")
    b.add_argument("--algebra", help="input algebra file for derived builds")
    b.add_argument("--seeds", help="comma-separated element indices")
    b.add_argument("--ideal", help="comma-separated element indices")
    b.add_argument("-o", "--output", required=True)
    b.set_defaults(fn=_cmd_build)

    a = sub.add_parser("analyze", help="validate and report structure")
    a.add_argument("algebra")
    a.add_argument("-o", "--output")
    a.set_defaults(fn=_cmd_analyze)

    w = sub.add_parser("words", help="emit a word-family member")
    w.add_argument("family", choices=["v", "u", "w"])
    w.add_argument("--n", type=int, required=True)
    w.add_argument("--m", type=int, default=1)
    w.add_argument("--k", type=int, default=0)
    w.add_argument("--height", type=int, default=1)
    w.add_argument("--budget", type=int, default=terms.DEFAULT_LENGTH_BUDGET)
    w.add_argument("--json", action="store_true")
    w.set_defaults(fn=_cmd_words)

    c = sub.add_parser("check", help="check an identity on an algebra")
    c.add_argument("--algebra", required=True)
    c.add_argument("--identity", required=True,
                   help="\"LHS = RHS\"; sides may be DSL text or v[n,m,h], "
                        "u[n,k,m], w[n,h] with an optional ^k")
    c.add_argument("--mode", choices=["exhaustive", "sampled", "block"],
                   default="exhaustive")
    c.add_argument("--budget", type=int, default=None)
    c.add_argument("--samples", type=int, default=10_000)
    c.add_argument("--seed", type=int, default=1)
    c.add_argument("--domain", action="append",
                   help="VAR=SETFILE restricting one variable (repeatable)")
    c.set_defaults(fn=_cmd_check)

    v = sub.add_parser("verify-suite", help="run the whole verification suite")
    v.add_argument("--profile", choices=["quick", "full"], default="quick")
    v.add_argument("--seed", type=int, default=1)
    v.add_argument("-o", "--output")
    v.set_defaults(fn=_cmd_verify_suite)
    return p


def main(argv=None) -> int:
    args = _parser().parse_args(argv)
    try:
        return args.fn(args)
    except BglabError as ex:
        print(f"error: {ex}", file=sys.stderr)
        return 2
    except (OSError, ValueError, KeyError, json.JSONDecodeError) as ex:
        print(f"error: {ex}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())

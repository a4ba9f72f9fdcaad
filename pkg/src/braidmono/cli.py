"""Command-line pipeline: validate factorizations and compute their groups.

Exit codes: 0 success, 1 a mathematical check failed, 2 bad input.
All output is deterministic; ``--format structured`` emits sorted JSON.
"""

from __future__ import annotations

import argparse
import json
import sys
from importlib import resources

from . import covers, factorization, mcg, vankampen
from .factorization import BMF, ParseError
from .vankampen import SimplifyPolicy

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_BAD_INPUT = 2


def _load_bmf(args) -> BMF:
    if args.fixture:
        return factorization.builtin_fixture(args.fixture)
    if args.input:
        with open(args.input, encoding="utf-8") as fh:
            return factorization.parse_bmf(fh.read())
    raise ParseError("no input: pass --input FILE or --fixture NAME", 0, 0)


def _default_aux(args, suffix: str) -> str:
    if args.fixture == "cayley":
        return resources.files("braidmono.fixtures").joinpath(f"cayley.{suffix}").read_text("utf-8")
    raise ParseError(f"--{suffix} FILE is required for this input", 0, 0)


def _emit(args, payload: dict, text_lines: list[str]) -> None:
    if args.format == "structured":
        print(json.dumps(payload, sort_keys=True, ensure_ascii=False))
    else:
        for line in text_lines:
            print(line)


def cmd_validate(args) -> int:
    b = _load_bmf(args)
    ok_delta = factorization.is_delta_squared(b)
    census = factorization.degree_census(b)
    degrees = {str(i): factorization.forgetting_degree(b, i) for i in b.labels.pair_indices()}
    ok_degrees = all(v == 2 for v in degrees.values())
    payload = {
        "full_twist_product": ok_delta,
        "census": census.__dict__,
        "forgetting_degrees": degrees,
        "calibration": json.loads(
            resources.files("braidmono.fixtures").joinpath("calibration.json").read_text("utf-8")
        ),
    }
    lines = [
        f"product equals full twist: {'yes' if ok_delta else 'NO'}",
        f"census: {census.branch} branch, {census.node} node, {census.cusp} cusp, "
        f"{census.tangency} tangency; total degree {census.total}",
    ]
    for pair, deg in degrees.items():
        lines.append(f"forgetting degree of pair {pair},{pair}': {deg}")
    _emit(args, payload, lines)
    return EXIT_OK if ok_delta and ok_degrees else EXIT_CHECK_FAILED


def cmd_census(args) -> int:
    b = _load_bmf(args)
    census = factorization.degree_census(b)
    _emit(
        args,
        {"census": census.__dict__},
        [
            f"branch points: {census.branch}",
            f"nodes: {census.node}",
            f"cusps: {census.cusp}",
            f"tangencies: {census.tangency}",
            f"total degree: {census.total}",
        ],
    )
    return EXIT_OK


def cmd_forget(args) -> int:
    b = _load_bmf(args)
    deg = factorization.forgetting_degree(b, args.pair)
    _emit(args, {"pair": args.pair, "degree": deg}, [f"deg f_{args.pair} = {deg}"])
    return EXIT_OK


def cmd_complete(args) -> int:
    b = _load_bmf(args)
    done = factorization.complete_branch_points(b)
    text = factorization.print_bmf(done)
    _emit(args, {"factorization": text}, [text.rstrip("\n")])
    return EXIT_OK


def cmd_regenerate(args) -> int:
    b = _load_bmf(args)
    if not (1 <= args.factor <= len(b.factors)):
        raise ParseError(f"factor index {args.factor} out of range", 0, 0)
    new_factors = factorization.apply_regeneration(
        b.factors[args.factor - 1], args.rule, args.doubling
    )
    replaced = b.factors[: args.factor - 1] + tuple(new_factors) + b.factors[args.factor :]
    text = factorization.print_bmf(BMF(b.labels, replaced))
    _emit(args, {"factorization": text}, [text.rstrip("\n")])
    return EXIT_OK


def cmd_pi1(args) -> int:
    b = _load_bmf(args)
    pres = vankampen.presentation_affine(b)
    if args.projective:
        pres = vankampen.presentation_projective(pres, pres.generators)
    moves = []
    if args.simplify:
        pres, moves = vankampen.tietze_simplify(
            pres, SimplifyPolicy(drop_redundant=args.projective)
        )
    payload = vankampen.presentation_dump(pres)
    payload["moves"] = [[m.kind, m.detail] for m in moves]
    lines = vankampen.presentation_text(pres).rstrip("\n").splitlines()
    if args.abelianize:
        group = vankampen.abelianization(pres)
        payload["abelianization"] = {
            "invariant_factors": list(group.invariant_factors),
            "free_rank": group.free_rank,
        }
        lines.append(f"abelianization: {group}")
    _emit(args, payload, lines)
    return EXIT_OK


def _surface_inputs(args):
    b = _load_bmf(args)
    pres = vankampen.presentation_affine(b)
    simplified, _ = vankampen.tietze_simplify(pres)
    mono_text = (
        open(args.monodromy, encoding="utf-8").read()
        if args.monodromy
        else _default_aux(args, "monodromy")
    )
    m = covers.parse_monodromy(mono_text)
    return b, simplified, m


def cmd_surface_pi1(args) -> int:
    b, simplified, m = _surface_inputs(args)
    if args.method == "rs":
        sub, data = covers.rs_presentation(simplified, m)
        quotient, _ = covers.boundary_loop_quotient(sub, simplified, m, data)
        group = vankampen.abelianization(quotient)
        gens = covers.rs_generators(simplified, m, data)
        payload = {
            "method": "rs",
            "subgroup_generators": [
                {"name": name, "word": list(word.letters), "identity": trivial}
                for name, word, trivial in gens
            ],
            "quotient": vankampen.presentation_dump(quotient),
            "group": {"invariant_factors": list(group.invariant_factors), "free_rank": group.free_rank},
        }
        lines = ["subgroup generators:"]
        for name, word, trivial in gens:
            shown = " ".join(
                simplified.generators[abs(x) - 1] + ("" if x > 0 else "^-1") for x in word.letters
            )
            lines.append(f"  {name} = {shown if shown else 'Id'}")
        lines.extend(vankampen.presentation_text(quotient).rstrip("\n").splitlines())
        lines.append(f"group: {group}")
        _emit(args, payload, lines)
        return EXIT_OK
    seeds_text = (
        open(args.seeds, encoding="utf-8").read() if args.seeds else _default_aux(args, "seeds")
    )
    seeds = mcg.parse_seeds(seeds_text)
    lift, log = mcg.lift_factorization(b, m, seeds)
    identity_ok = mcg.verify_mcg_identity(lift)
    group = mcg.mcg_cokernel(lift)
    payload = {
        "method": "mcg",
        "twists": mcg.twist_report(lift),
        "identity": identity_ok,
        "log": log,
        "group": {"invariant_factors": list(group.invariant_factors), "free_rank": group.free_rank},
    }
    lines = [*log, "twist sequence:"]
    for t in lift.twists:
        m2 = mcg.twist_power_matrix(t)
        lines.append(f"  twist about {t.cls} ^{t.exponent}: matrix {list(m2.rows)}")
    lines.append(f"composition is identity: {'yes' if identity_ok else 'NO'}")
    lines.append(f"group: {group}")
    _emit(args, payload, lines)
    return EXIT_OK if identity_ok else EXIT_CHECK_FAILED


def cmd_lift(args) -> int:
    b, _, m = _surface_inputs(args)
    seeds_text = (
        open(args.seeds, encoding="utf-8").read() if args.seeds else _default_aux(args, "seeds")
    )
    lift, log = mcg.lift_factorization(b, m, mcg.parse_seeds(seeds_text))
    payload = {"twists": mcg.twist_report(lift), "log": log,
               "identity": mcg.verify_mcg_identity(lift)}
    lines = [*log]
    for t in lift.twists:
        lines.append(f"twist about {t.cls} ^{t.exponent}")
    lines.append(f"composition is identity: {'yes' if payload['identity'] else 'NO'}")
    _emit(args, payload, lines)
    return EXIT_OK


def cmd_fixtures(args) -> int:
    _emit(
        args,
        {"fixtures": list(factorization.FIXTURE_NAMES)},
        list(factorization.FIXTURE_NAMES),
    )
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="braidmono", description="braid monodromy factorization toolkit"
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, needs_input=True):
        if needs_input:
            p.add_argument("--input", help="factorization file")
            p.add_argument("--fixture", choices=factorization.FIXTURE_NAMES)
        p.add_argument("--format", choices=("text", "structured"), default="text")

    p = sub.add_parser("validate", help="full-twist product, census, forgetting degrees")
    common(p)
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("census", help="singularity counts and total degree")
    common(p)
    p.set_defaults(func=cmd_census)

    p = sub.add_parser("forget", help="forgetting degree of a doubled pair")
    common(p)
    p.add_argument("--pair", type=int, required=True, help="pair index i for labels i, i'")
    p.set_defaults(func=cmd_forget)

    p = sub.add_parser("complete", help="append branch points until degrees reach two")
    common(p)
    p.set_defaults(func=cmd_complete)

    p = sub.add_parser("regenerate", help="apply a line-doubling rule to one factor")
    common(p)
    p.add_argument("--factor", type=int, required=True)
    p.add_argument("--rule", type=int, choices=(1, 2, 3), required=True)
    p.add_argument("--doubling", choices=("first", "second", "both"), default="second")
    p.set_defaults(func=cmd_regenerate)

    p = sub.add_parser("pi1", help="curve-complement group presentation")
    common(p)
    p.add_argument("--projective", action="store_true")
    p.add_argument("--simplify", action="store_true")
    p.add_argument("--abelianize", action="store_true")
    p.set_defaults(func=cmd_pi1)

    p = sub.add_parser("surface-pi1", help="group of the covering surface minus singular points")
    common(p)
    p.add_argument("--method", choices=("rs", "mcg"), required=True)
    p.add_argument("--monodromy", help="sheet monodromy file")
    p.add_argument("--seeds", help="twist seed file (mcg method)")
    p.set_defaults(func=cmd_surface_pi1)

    p = sub.add_parser("lift", help="lift the factorization to torus twists")
    common(p)
    p.add_argument("--monodromy", help="sheet monodromy file")
    p.add_argument("--seeds", help="twist seed file")
    p.set_defaults(func=cmd_lift)

    p = sub.add_parser("fixtures", help="list built-in factorizations")
    common(p, needs_input=False)
    p.set_defaults(func=cmd_fixtures)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ParseError, FileNotFoundError, KeyError) as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_BAD_INPUT
    except ValueError as err:  # math-level failures (lift errors, bad maps)
        print(f"error: {err}", file=sys.stderr)
        return EXIT_CHECK_FAILED


if __name__ == "__main__":
    sys.exit(main())

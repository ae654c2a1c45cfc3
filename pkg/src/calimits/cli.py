"""Command-line interface.

Exit codes follow the three-valued verdict convention everywhere:
0 = property holds / success, 1 = property refuted, 2 = unknown within
budget, 3 and above = usage or validation errors.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from .attractors import (
    AttractorError,
    is_invariant_clopen,
    is_spreading_clopen,
    omega_of_clopen,
)
from .ca import CellularAutomaton, image
from .clopen import ClopenSet
from .constructions import (
    ConstructionError,
    augment_spreading,
    product_collapse,
    surjective_counterexample,
)
from .decisions import (
    check_closing,
    check_injective,
    check_surjective,
    limit_property_semitest,
    pair_shift,
    periodic_point_exists,
)
from .limits import check_nilpotent, check_stable, limit_approximation, limit_language
from .params import DEFAULT_EXPONENT_BUDGET, DEFAULT_STEP_BUDGET, DEFAULT_WINDOW
from .rules import RuleError, eca_rule
from .shifts import ShiftError, subshift_equal

USAGE_ERROR = 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(USAGE_ERROR, f"{self.prog}: error: {message}\n")


def build_parser():
    parser = _Parser(prog="calimits", description=__doc__)
    sub = parser.add_subparsers(dest="verb", required=True)

    p_eca = sub.add_parser("eca", help="write an elementary rule file")
    p_eca.add_argument("number", type=int)
    p_eca.add_argument("-o", "--output", help="target path (default: eca<N>.json)")

    p_check = sub.add_parser("check", help="run a property check")
    p_check.add_argument(
        "property",
        choices=[
            "surjective",
            "injective",
            "nilpotent",
            "stable",
            "closing",
            "periodic-point",
            "limit-property",
        ],
    )
    p_check.add_argument("rule", help="rule JSON file")
    p_check.add_argument("--budget", type=int, default=DEFAULT_STEP_BUDGET,
                         help="search budget for semi-decisions (stages/exponents)")
    p_check.add_argument("--side", choices=["right", "left"], default="right",
                         help="side for the closing check")
    p_check.add_argument("-n", "--steps", type=int, default=1, help="period for periodic-point")
    p_check.add_argument(
        "--limit-prop",
        choices=["identity", "injective", "closing", "transitive", "expansive-window"],
        help="sub-property for limit-property",
    )
    p_check.add_argument("--k", type=int, default=None, help="window for limit-property")
    p_check.add_argument("--json", action="store_true", help="emit the verdict as JSON")

    p_limit = sub.add_parser("limit", help="limit set approximations")
    p_limit.add_argument("mode", choices=["language", "approx"])
    p_limit.add_argument("rule")
    p_limit.add_argument("--k", type=int, default=DEFAULT_WINDOW, help="word length to probe")
    p_limit.add_argument("--budget", type=int, default=DEFAULT_STEP_BUDGET,
                         help="maximum number of image stages")
    p_limit.add_argument("--emit-dot", metavar="DIR", help="write one DOT file per stage")
    p_limit.add_argument("--json", action="store_true", help="emit words and status as JSON")

    p_attr = sub.add_parser("attractor", help="attractor of a cylinder basin")
    p_attr.add_argument("rule")
    p_attr.add_argument("--cylinder", required=True, help="window word of the basin")
    p_attr.add_argument("--at", type=int, default=0, help="window start coordinate")
    p_attr.add_argument("--budget", type=int, default=DEFAULT_STEP_BUDGET,
                        help="image-stage budget for the attractor chain")
    p_attr.add_argument("--exponent-budget", type=int, default=DEFAULT_EXPONENT_BUDGET,
                        help="largest spreading exponent to try")
    p_attr.add_argument("--json", action="store_true", help="emit the report as JSON")

    p_con = sub.add_parser("construct", help="rule transformations")
    p_con.add_argument("kind", choices=["augment", "product", "counterexample"])
    p_con.add_argument("rules", nargs="+", help="input rule file(s)")
    p_con.add_argument("--spreading", help="spreading state symbol (augment, product)")
    p_con.add_argument("--substitute", help="symbol the fresh one reads as (counterexample)")
    p_con.add_argument("--new-symbol", default="b", help="name of the added symbol (counterexample)")
    p_con.add_argument("-o", "--output", required=True, help="path of the emitted rule file")
    p_con.add_argument("--json", action="store_true", help="print the audit certificate as JSON")

    p_pair = sub.add_parser("pairshift", help="source/image pair shift")
    p_pair.add_argument("rule")
    p_pair.add_argument("--m", type=int, required=True, help="window parameter (>= radius)")
    p_pair.add_argument("--emit-dot", metavar="DIR", help="write pair/projection graphs as DOT files")
    p_pair.add_argument("--json", action="store_true", help="emit the summary as JSON")

    p_exp = sub.add_parser("experiment", help="exploratory searches")
    p_exp.add_argument("name", choices=["two-attractors"])
    p_exp.add_argument("rule")
    p_exp.add_argument("--budget", type=int, default=DEFAULT_STEP_BUDGET,
                       help="image-stage budget per attractor")
    p_exp.add_argument("--exponent-budget", type=int, default=DEFAULT_EXPONENT_BUDGET,
                       help="largest spreading exponent to try")
    p_exp.add_argument("--json", action="store_true", help="emit findings as JSON")

    return parser


def _load(path):
    try:
        return CellularAutomaton.load(path)
    except FileNotFoundError:
        raise SystemExit(_usage_fail(f"rule file not found: {path}"))
    except RuleError as exc:
        raise SystemExit(_usage_fail(f"invalid rule file {path}: {exc}"))


def _usage_fail(message):
    print(f"calimits: error: {message}", file=sys.stderr)
    return USAGE_ERROR


def _emit_verdict(verdict, as_json, label):
    if as_json:
        print(verdict.to_json(indent=2))
    else:
        print(f"{label}: {verdict.outcome_name()}")
        if verdict.certificate:
            print(f"  certificate: {json.dumps(verdict.certificate, sort_keys=True)}")
        print(f"  budget used: {verdict.budget_used}")
    return verdict.exit_code()


def _cmd_eca(args):
    try:
        rule = eca_rule(args.number)
    except RuleError as exc:
        return _usage_fail(str(exc))
    path = args.output or f"eca{args.number}.json"
    rule.save(path)
    print(f"wrote {path}")
    return 0


def _cmd_check(args):
    ca = _load(args.rule)
    prop = args.property
    if prop == "surjective":
        return _emit_verdict(check_surjective(ca), args.json, "surjective")
    if prop == "injective":
        return _emit_verdict(check_injective(ca), args.json, "injective")
    if prop == "nilpotent":
        return _emit_verdict(check_nilpotent(ca, budget=args.budget), args.json, "nilpotent")
    if prop == "stable":
        return _emit_verdict(check_stable(ca, budget=args.budget), args.json, "stable")
    if prop == "closing":
        verdict = check_closing(ca, side=args.side, budget=args.budget)
        return _emit_verdict(verdict, args.json, f"{args.side}-closing")
    if prop == "periodic-point":
        if args.steps < 1:
            return _usage_fail("--steps must be >= 1")
        verdict = periodic_point_exists(ca, args.steps)
        return _emit_verdict(verdict, args.json, f"periodic-point(n={args.steps})")
    if prop == "limit-property":
        if not args.limit_prop:
            return _usage_fail("--limit-prop is required with limit-property")
        verdict = limit_property_semitest(ca, args.limit_prop, k=args.k, budget=args.budget)
        return _emit_verdict(verdict, args.json, f"limit {args.limit_prop}")
    return _usage_fail(f"unknown property {prop}")


def _cmd_limit(args):
    ca = _load(args.rule)
    if args.mode == "language":
        words, status = limit_language(ca, args.k, budget=args.budget)
        fmt = ca.alphabet.format_word
        if args.json:
            print(
                json.dumps(
                    {
                        "words": sorted(fmt(w) for w in words),
                        "exact": status.exact,
                        "stage": status.stage,
                        "fixed_k_stable_since": status.fixed_k_stable_since,
                    },
                    indent=2,
                )
            )
        else:
            for w in sorted(words):
                print(fmt(w))
            note = "exact" if status.exact else "upper bound"
            print(f"# {len(words)} words, {note} (stage {status.stage})", file=sys.stderr)
        return 0 if status.exact else 2

    approx = limit_approximation(ca, budget=args.budget)
    if args.emit_dot:
        os.makedirs(args.emit_dot, exist_ok=True)
        for i, stage in enumerate(approx.images):
            with open(os.path.join(args.emit_dot, f"stage_{i}.dot"), "w") as fh:
                fh.write(stage.to_dot(name=f"stage_{i}"))
    if args.json:
        print(
            json.dumps(
                {
                    "stages": [
                        {"vertices": s.n_vertices, "edges": s.n_edges}
                        for s in approx.images
                    ],
                    "stabilized_at": approx.stabilized_at,
                },
                indent=2,
            )
        )
    else:
        for i, stage in enumerate(approx.images):
            print(f"stage {i}: {stage.n_vertices} vertices, {stage.n_edges} edges")
        if approx.exact:
            print(f"stabilized at step {approx.stabilized_at}")
        else:
            print("budget exhausted; last stage is an upper approximation")
    return 0 if approx.exact else 2


def _cmd_attractor(args):
    ca = _load(args.rule)
    try:
        word = ca.alphabet.word(args.cylinder)
    except Exception as exc:
        return _usage_fail(f"bad cylinder word: {exc}")
    basin = ClopenSet(ca.alphabet, args.at, len(word), {word})
    inv = is_invariant_clopen(ca, basin)
    if not inv.is_true:
        return _emit_verdict(inv, args.json, "invariant basin")
    spread = is_spreading_clopen(ca, basin, budget=args.exponent_budget)
    if not spread.is_true:
        return _emit_verdict(spread, args.json, "spreading basin")
    try:
        report = omega_of_clopen(
            ca, basin, budget=args.budget, exponent_budget=args.exponent_budget
        )
    except AttractorError as exc:
        return _usage_fail(str(exc))
    if args.json:
        print(json.dumps(report.to_json_dict(ca.alphabet), indent=2))
    else:
        fmt = ca.alphabet.format_word
        print(f"basin: cylinder [{args.cylinder}] at {args.at}")
        print(f"invariant: true; spreading exponent: {spread.certificate['exponent']}")
        print(
            f"inner SFT: order {report.inner.order}, "
            f"{'mixing' if report.inner.mixing else 'not mixing'}"
        )
        print(f"attractor symbols: {sorted(fmt(w) for w in report.omega.language(1))}")
        print(f"status: {report.status()}" + ("; minimal" if report.minimal else ""))
    return 0 if report.exact else 2


def _cmd_construct(args):
    if args.kind == "augment":
        if len(args.rules) != 1 or not args.spreading:
            return _usage_fail("augment needs one rule file and --spreading")
        ca = _load(args.rules[0])
        try:
            result, audit = augment_spreading(ca, args.spreading)
        except ConstructionError as exc:
            return _usage_fail(str(exc))
    elif args.kind == "product":
        if len(args.rules) != 2 or not args.spreading:
            return _usage_fail("product needs two rule files and --spreading")
        ca1 = _load(args.rules[0])
        ca2 = _load(args.rules[1])
        try:
            result, _, audit = product_collapse(ca1, ca2, args.spreading)
        except ConstructionError as exc:
            return _usage_fail(str(exc))
    else:
        if len(args.rules) != 1 or not args.substitute:
            return _usage_fail("counterexample needs one rule file and --substitute")
        ca = _load(args.rules[0])
        try:
            result, audit = surjective_counterexample(
                ca, args.substitute, new_symbol=args.new_symbol
            )
        except ConstructionError as exc:
            return _usage_fail(str(exc))

    result.rule.save(args.output)
    cert_path = args.output + ".cert.json"
    with open(cert_path, "w") as fh:
        json.dump(audit, fh, indent=2, sort_keys=True)
        fh.write("\n")
    if args.json:
        print(json.dumps(audit, indent=2, sort_keys=True))
    else:
        print(f"wrote {args.output} and {cert_path}")
    return 0


def _cmd_pairshift(args):
    ca = _load(args.rule)
    try:
        ps = pair_shift(ca, args.m)
    except ValueError as exc:
        return _usage_fail(str(exc))
    image_matches = subshift_equal(image(ca, ps.proj_x), ps.proj_y)
    if args.emit_dot:
        os.makedirs(args.emit_dot, exist_ok=True)
        for name, shift in (("pair", ps.sft.to_sofic()), ("proj_x", ps.proj_x), ("proj_y", ps.proj_y)):
            with open(os.path.join(args.emit_dot, f"{name}.dot"), "w") as fh:
                fh.write(shift.to_dot(name=name))
    payload = {
        "window": ps.window,
        "pair_words": len(ps.sft.words),
        "proj_x_vertices": ps.proj_x.n_vertices,
        "proj_y_vertices": ps.proj_y.n_vertices,
        "image_of_proj_x_equals_proj_y": image_matches,
    }
    if args.json:
        print(json.dumps(payload, indent=2))
    else:
        for key, val in payload.items():
            print(f"{key}: {val}")
    return 0


def _cmd_experiment(args):
    ca = _load(args.rule)
    stable = check_stable(ca, budget=args.budget)
    basins = []
    m = ca.alphabet.size
    for mask in range(1, 2**m):
        symbols = [i for i in range(m) if mask >> i & 1]
        basin = ClopenSet(ca.alphabet, 0, 1, {(s,) for s in symbols})
        inv = is_invariant_clopen(ca, basin)
        if not inv.is_true:
            continue
        spread = is_spreading_clopen(ca, basin, budget=args.exponent_budget)
        if not spread.is_true:
            continue
        report = omega_of_clopen(
            ca, basin, budget=args.budget, exponent_budget=args.exponent_budget
        )
        basins.append((symbols, report))
    distinct = []
    for symbols, report in basins:
        if not any(subshift_equal(report.omega, other.omega) for _, other in distinct):
            distinct.append((symbols, report))
    payload = {
        "stable": stable.outcome_name(),
        "spreading_symbol_basins": [
            {
                "symbols": [ca.alphabet.name(s) for s in symbols],
                "attractor_exact": report.exact,
                "attractor_symbols": sorted(
                    ca.alphabet.format_word(w) for w in report.omega.language(1)
                ),
            }
            for symbols, report in basins
        ],
        "distinct_attractors_found": len(distinct),
    }
    if args.json:
        print(json.dumps(payload, indent=2))
    else:
        print(f"stability: {stable.outcome_name()}")
        print(f"spreading symbol-union basins found: {len(basins)}")
        for symbols, report in basins:
            names = ",".join(ca.alphabet.name(s) for s in symbols)
            print(f"  basin [{names}]: attractor {report.status()}")
        print(f"distinct attractors among them: {len(distinct)}")
    return 0


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else USAGE_ERROR
    handlers = {
        "eca": _cmd_eca,
        "check": _cmd_check,
        "limit": _cmd_limit,
        "attractor": _cmd_attractor,
        "construct": _cmd_construct,
        "pairshift": _cmd_pairshift,
        "experiment": _cmd_experiment,
    }
    try:
        return handlers[args.verb](args)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else USAGE_ERROR
    except ShiftError as exc:
        return _usage_fail(str(exc))


if __name__ == "__main__":
    sys.exit(main())

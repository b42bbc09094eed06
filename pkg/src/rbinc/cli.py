"""Command-line frontend: ``rbinc <subcommand> ...``.

Exit codes: 0 success (an inconsistent base is still a success), 1 parse or
input error, 2 size limit exceeded, 3 unknown measure or postulate, 4
infeasible generator shape, 64 missing subcommand.
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction
from pathlib import Path

from . import report
from .core import ParseError, RuleBase, format_rule_base, parse_rule_base
from .limits import SizeLimitExceeded, limits
from .measures import MEASURES, RULE_BASED, UnknownMeasure, get_measure
from .postulates import (
    GeneratorConfig,
    ShapeInfeasible,
    UnknownPostulate,
    generate_rule_base,
    run_campaign,
)

EXIT_PARSE = 1
EXIT_LIMIT = 2
EXIT_UNKNOWN = 3
EXIT_SHAPE = 4
EXIT_USAGE = 64


def _read_base(path: str) -> RuleBase:
    if path == "-":
        text = sys.stdin.read()
    else:
        text = Path(path).read_text(encoding="utf-8")
    return parse_rule_base(text)


def _measures(args, default) -> list[str]:
    names = args.measure or list(default)
    for n in names:
        get_measure(n)
    # keep first occurrence order, drop repeats
    return list(dict.fromkeys(names))


def _emit(args, data: dict, text: str) -> None:
    if args.json:
        sys.stdout.write(report.dumps(data))
    else:
        sys.stdout.write(text)


def _fmt_value(x: Fraction) -> str:
    return f"{x} ({report.decimal(x)})"


def _mi_text(data: dict) -> list[str]:
    lines = []
    for key, title in (("mi", "MI"), ("mi_without_facts", "MI without pure fact sets")):
        lines.append(f"{title}: {len(data[key])}")
        lines.extend("  {" + "; ".join(m) + "}" for m in data[key])
    return lines


def _measure_lines(section: dict) -> list[str]:
    width = max((len(n) for n in section), default=0)
    return [f"  {n:<{width}}  {v['fraction']} ({v['decimal']})" for n, v in section.items()]


def _vector_lines(rows: list[dict]) -> list[str]:
    width = max((len(r["element"]) for r in rows), default=0)
    return [f"    {r['element']:<{width}}  {r['fraction']} ({r['decimal']})" for r in rows]


def _shapley_lines(section: dict) -> list[str]:
    lines = []
    for name, entry in section.items():
        for kind in ("classical", "adjusted"):
            if kind in entry:
                lines.append(f"  {name} {kind}:")
                lines.extend(_vector_lines(entry[kind]))
    return lines


def _ranking_lines(rows: list[dict]) -> list[str]:
    width = max((len(r["element"]) for r in rows), default=0)
    return [f"  {r['rank']:>3}. {r['element']:<{width}}  {r['fraction']} ({r['decimal']})" for r in rows]


def cmd_analyze(args) -> int:
    base = _read_base(args.file)
    names = _measures(args, RULE_BASED)
    data = report.analyze(base, names, args.classical_shapley, args.hide_facts, args.timing)
    if args.figures:
        values = {n: Fraction(v["fraction"]) for n, v in data["measures"].items()}
        data["figures"] = report_figures(base, values, names, args.figures, args.classical_shapley)
    lines = [f"rule base: {data['input']['elements']} elements, sha256 {data['input']['sha256']}"]
    lines += _mi_text(data)
    lines.append("measures:")
    lines += _measure_lines(data["measures"])
    lines.append("Shapley inconsistency values:")
    lines += _shapley_lines(data["shapley"])
    for name, rows in data["ranking"].items():
        lines.append(f"culpability ranking ({name}):")
        lines += _ranking_lines(rows)
    if "figures" in data:
        lines.append("figures: " + ", ".join(data["figures"]))
    if "timing" in data:
        lines.append(f"time: {data['timing']['seconds']} s")
    _emit(args, data, "\n".join(lines) + "\n")
    return 0


def report_figures(base, values, names, outdir, classical) -> list[str]:
    from .plotting import write_figures

    return write_figures(base, values, names, Path(outdir), classical)


def cmd_measures(args) -> int:
    base = _read_base(args.file)
    names = _measures(args, MEASURES)
    data = {
        "schema": report.SCHEMA_VERSION,
        "input": report.input_digest(base),
        **report.mi_section(base),
        "measures": report.measures_section(base, names),
    }
    lines = _mi_text(data) + ["measures:"] + _measure_lines(data["measures"])
    _emit(args, data, "\n".join(lines) + "\n")
    return 0


def cmd_shapley(args) -> int:
    base = _read_base(args.file)
    names = _measures(args, RULE_BASED)
    data = {
        "schema": report.SCHEMA_VERSION,
        "input": report.input_digest(base),
        "shapley": report.shapley_section(base, names, args.classical_shapley),
    }
    if args.figures:
        values = {n: get_measure(n)(base) for n in names}
        data["figures"] = report_figures(base, values, names, args.figures, args.classical_shapley)
    lines = _shapley_lines(data["shapley"])
    if "figures" in data:
        lines.append("figures: " + ", ".join(data["figures"]))
    _emit(args, data, "\n".join(lines) + "\n")
    return 0


def cmd_rank(args) -> int:
    base = _read_base(args.file)
    names = _measures(args, ("rb-drastic",))
    data = {
        "schema": report.SCHEMA_VERSION,
        "input": report.input_digest(base),
        "ranking": {n: report.ranking_rows(base, n, args.hide_facts) for n in names},
    }
    lines = []
    for name, rows in data["ranking"].items():
        lines.append(f"culpability ranking ({name}):")
        lines += _ranking_lines(rows)
    _emit(args, data, "\n".join(lines) + "\n")
    return 0


def _config(args) -> GeneratorConfig:
    return GeneratorConfig(
        seed=args.seed,
        atom_count=args.atoms,
        fact_count=args.facts,
        rule_count=args.rules,
        max_body_size=args.max_body,
        negation_probability=Fraction(args.negation),
    )


def cmd_check(args) -> int:
    get_measure(args.measure_name)
    result = run_campaign(args.measure_name, args.postulate, args.budget, _config(args), fixtures=not args.no_fixtures)
    w = result.first_witness
    data = {
        "schema": report.SCHEMA_VERSION,
        "measure": result.measure,
        "postulate": result.postulate,
        "budget": result.budget,
        "seed": result.seed,
        "prng": result.prng,
        "holds": result.holds,
        "violated": result.violated,
        "inapplicable": result.inapplicable,
        "witness": None,
    }
    lines = [
        f"{result.measure} {result.postulate}: {result.instances} instances "
        f"(budget {result.budget}, seed {result.seed}, prng {result.prng})",
        f"  holds {result.holds}, inapplicable {result.inapplicable}",
        f"  {result.violated} violations",
    ]
    if w is not None:
        data["witness"] = {
            "seed": result.first_witness_seed,
            "base": format_rule_base(w.base),
            "extra": None if w.extra is None else str(w.extra),
            "details": {k: str(v) for k, v in w.witness.items()},
        }
        origin = "fixture" if result.first_witness_seed is None else f"seed {result.first_witness_seed}"
        lines.append(f"first witness ({origin}):")
        lines += ["    " + line for line in format_rule_base(w.base).splitlines()]
        if w.extra is not None:
            extra = format_rule_base(w.extra).replace("\n", " ").strip() if isinstance(w.extra, RuleBase) else str(w.extra)
            lines.append(f"  with: {extra}")
        for k, v in w.witness.items():
            lines.append(f"  {k}: {v}")
    _emit(args, data, "\n".join(lines) + "\n")
    return 0


def cmd_generate(args) -> int:
    sys.stdout.write(format_rule_base(generate_rule_base(_config(args))))
    return 0


def _add_generator_flags(p: argparse.ArgumentParser) -> None:
    g = p.add_argument_group("generator")
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--atoms", type=int, default=4)
    g.add_argument("--facts", type=int, default=3)
    g.add_argument("--rules", type=int, default=4)
    g.add_argument("--max-body", type=int, default=2)
    g.add_argument("--negation", default="1/2", help="negation probability as a fraction, e.g. 1/2")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit key-sorted JSON")
    common.add_argument(
        "--limit-subsets", type=int, metavar="N", help="override the element-count guard (cost grows as 2^N)"
    )
    common.add_argument(
        "--limit-atoms", type=int, metavar="N", help="override the atom-count guard for contension (cost grows as 3^N)"
    )

    parser = argparse.ArgumentParser(prog="rbinc", description="Inconsistency measurement for rule bases.")
    sub = parser.add_subparsers(dest="command")

    def with_file(name, help_, fn):
        p = sub.add_parser(name, parents=[common], help=help_)
        p.add_argument("file", help="rule base file, or - for standard input")
        p.add_argument("--measure", action="append", metavar="NAME", help="measure name (repeatable)")
        p.set_defaults(func=fn)
        return p

    p = with_file("analyze", "full report", cmd_analyze)
    p.add_argument("--classical-shapley", action="store_true")
    p.add_argument("--hide-facts", action="store_true")
    p.add_argument("--figures", metavar="DIR", help="write PNG figures and a TSV table into DIR")
    p.add_argument("--timing", action="store_true", help="include wall-clock time (breaks byte stability)")
    with_file("measures", "measure values and MI listings", cmd_measures)
    p = with_file("shapley", "Shapley inconsistency values", cmd_shapley)
    p.add_argument("--classical-shapley", action="store_true")
    p.add_argument("--figures", metavar="DIR")
    p = with_file("rank", "culpability ranking", cmd_rank)
    p.add_argument("--hide-facts", action="store_true")

    p = sub.add_parser("check", parents=[common], help="postulate campaign over generated bases")
    p.add_argument("measure_name", metavar="measure")
    p.add_argument("postulate")
    p.add_argument("--budget", type=int, default=1000)
    p.add_argument("--no-fixtures", action="store_true", help="skip the fixed regression instances")
    _add_generator_flags(p)
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("generate", help="emit a generated rule base")
    _add_generator_flags(p)
    p.set_defaults(func=cmd_generate, limit_subsets=None, limit_atoms=None)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if not args.command:
        parser.print_usage(sys.stderr)
        return EXIT_USAGE
    try:
        with limits(subsets=args.limit_subsets, atoms=args.limit_atoms):
            return args.func(args)
    except ParseError as e:
        print(f"parse error: {e}", file=sys.stderr)
        return EXIT_PARSE
    except OSError as e:
        print(f"cannot read input: {e}", file=sys.stderr)
        return EXIT_PARSE
    except SizeLimitExceeded as e:
        print(f"size limit exceeded: {e}", file=sys.stderr)
        return EXIT_LIMIT
    except UnknownMeasure as e:
        print(f"unknown measure {e.args[0]!r}; known: {', '.join(MEASURES)}", file=sys.stderr)
        return EXIT_UNKNOWN
    except UnknownPostulate as e:
        print(f"unknown postulate {e.args[0]!r}", file=sys.stderr)
        return EXIT_UNKNOWN
    except ShapeInfeasible as e:
        print(f"infeasible generator shape: {e}", file=sys.stderr)
        return EXIT_SHAPE
    except ValueError as e:
        print(f"invalid argument: {e}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())

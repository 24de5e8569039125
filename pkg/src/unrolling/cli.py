"""
Command line interface of the workbench. Every subcommand prints a
:py:class:`Report` and exits with ``0`` when it passed, ``1`` when a check
failed, ``2`` on usage errors and ``3`` when a pipeline hits an internal
consistency failure (:py:class:`NoLift` or :py:class:`BoundExceeded`).
"""
import argparse
import os
import re
import sys

from . import formats
from .cattribe import (
    Diagram,
    KanExtension,
    check_p_fibrant,
    check_tribe_factorization,
    restrict_along_p,
    terminal_map,
    tribe_factorize,
    unit_iso,
)
from .factcheck import (
    check_absolutely_dense,
    check_cofibering,
    check_grothendieck_fibration,
)
from .fincat import CommaCategory, FinCat, FinFunctor
from .misc import (
    BoundExceeded,
    ConfigurationError,
    FormatError,
    LawViolation,
    NoLift,
    UnrollingError,
    _warn,
)
from .reedy import (
    ReedyStructure,
    check_generalized_direct,
    check_generalized_reedy,
    check_lifting_condition,
    check_strict,
    comma_reedy_structure,
    induce_DR_structure,
)
from .report import Report
from .unroll import UnrolledCategory, hom_bound_adequate
from .verify import verify_all
from .zoo import GROUPS, CubeSpec, Example, cube_category, group_example

EXIT_PASSED = 0
EXIT_FAILED = 1
EXIT_USAGE = 2
EXIT_ESCALATION = 3


class UsageError(UnrollingError):
    """Invalid inputs given on the command line"""

    pass


def _read(path, expected):
    value = formats.read(path)
    if not isinstance(value, expected):
        raise UsageError(f"'{path}' does not contain a {expected.__name__}")
    return value


def _presentation(path):
    example = _read(path, Example)
    if example.presentation is None:
        raise UsageError(f"'{path}' has no presentation")
    return example


def _structures(example, path):
    if example.structure is None or example.base_structure is None:
        raise UsageError(f"'{path}' needs 'reedy' and 'reedy0' annotations")
    return example.structure, example.base_structure


def _unrolled(args, example):
    if args.hom_bound is not None:
        _warn(f"using a hom bound of {args.hom_bound} from the command line")
    return UnrolledCategory(example.presentation, args.hom_bound)


def _output(args):
    directory = args.output or "."
    os.makedirs(directory, exist_ok=True)
    return directory


def _write_witnesses(report, directory):
    os.makedirs(directory, exist_ok=True)
    for name, category in sorted(report.attachments.items()):
        safe = re.sub(r"[^A-Za-z0-9_.,<=>()*+-]", "_", name)
        formats.write(os.path.join(directory, safe + ".cat"), category)


def cmd_check_cat(args):
    report = Report("category")
    try:
        category = _read(args.path, FinCat)
    except LawViolation as e:
        report.add("category-laws", False, [type(e).__name__], str(e))
    else:
        report.add("category-laws", True, [], repr(category))
    return report


def cmd_check_functor(args):
    report = Report("functor")
    try:
        functor = _read(args.path, FinFunctor)
    except LawViolation as e:
        report.add("functor-laws", False, [type(e).__name__], str(e))
    else:
        report.add("functor-laws", True, [], repr(functor))
    return report


def cmd_check_reedy(args):
    structure = _read(args.path, ReedyStructure)
    if args.kind == "strict":
        return check_strict(structure)
    elif args.kind == "direct":
        return check_generalized_direct(structure)
    return check_generalized_reedy(structure)


def cmd_check_lifting(args):
    example = _presentation(args.path)
    return check_lifting_condition(example.presentation, example.base_structure)


def cmd_unroll(args):
    example = _presentation(args.path)
    unrolled = _unrolled(args, example)
    directory = _output(args)
    report = Report("unroll")
    report.extend(hom_bound_adequate(example.presentation, unrolled.hom_bound))
    formats.write(os.path.join(directory, "unrolled.cat"), unrolled.category)
    formats.write(os.path.join(directory, "projection.fun"), unrolled.projection)
    if example.structure is not None and example.base_structure is not None:
        S = induce_DR_structure(unrolled, example.structure, example.base_structure)
        report.extend(check_strict(S), prefix="induced")
        formats.write(os.path.join(directory, "unrolled.reedy"), S)
    return report


def cmd_check_density(args):
    if formats.guess_format(args.path) == "Presentation":
        example = _presentation(args.path)
        functor = _unrolled(args, example).projection
    else:
        functor = _read(args.path, FinFunctor)
    report = check_absolutely_dense(functor)
    if args.witness:
        _write_witnesses(report, args.witness)
    return report


def cmd_check_cofibering(args):
    example = _presentation(args.path)
    S, S0 = _structures(example, args.path)
    unrolled = _unrolled(args, example)
    SD = induce_DR_structure(unrolled, S, S0)
    comma = CommaCategory(unrolled.projection, unrolled.projection)
    SC = comma_reedy_structure(comma, SD, SD)
    report = Report("cofibering projection")
    report.extend(check_grothendieck_fibration(comma.pi0))
    cofibering = check_cofibering(comma.pi0, SC, SD)
    report.extend(cofibering)
    if args.witness:
        _write_witnesses(cofibering, args.witness)
    return report


def _diagram(args):
    example = _presentation(args.presentation)
    diagram = _read(args.diagram, Diagram)
    if diagram.shape != example.presentation.R:
        raise UsageError("the diagram shape must be the presented category")
    return _unrolled(args, example), diagram


def cmd_tribe_check_fibrant(args):
    unrolled, X = _diagram(args)
    return check_p_fibrant(unrolled, X)


def cmd_tribe_factorize(args):
    unrolled, X = _diagram(args)
    m = terminal_map(X)
    J, Q = tribe_factorize(unrolled, m)
    report = check_tribe_factorization(unrolled, m, J, Q)
    formats.write(os.path.join(_output(args), "middle.diag"), J.target)
    return report


def cmd_tribe_kan(args):
    unrolled, X = _diagram(args)
    extension = KanExtension(unrolled, restrict_along_p(unrolled, X))
    report = Report("right Kan extension")
    try:
        unit_iso(unrolled, X, extension)
    except UnrollingError as e:
        report.add("unit-iso", False, [], str(e))
    else:
        report.add("unit-iso", True, [], "X is isomorphic to p_*p^*X")
    formats.write(os.path.join(_output(args), "extension.diag"), extension)
    return report


def cmd_zoo(args):
    directory = _output(args)
    if args.kind == "group":
        example = group_example(args.name, GROUPS[args.name]())
        path = os.path.join(directory, f"{args.name}.pres")
    else:
        spec = CubeSpec(args.dim, args.symmetries, args.degeneracies)
        example = cube_category(spec)
        name = "cube.pres" if args.symmetries else "cube.reedy"
        path = os.path.join(directory, name)
    report = Report(f"zoo {example.name}")
    if example.presentation is not None:
        lifting = check_lifting_condition(example.presentation, example.base_structure)
        report.extend(lifting)
        formats.write(path, example)
    else:
        report.extend(check_strict(example.structure))
        formats.write(path, example.structure)
    return report


def cmd_verify(args):
    return verify_all()


def _common():
    parser = argparse.ArgumentParser(add_help=False)
    parser.add_argument("--format", choices=["json", "text"], default="text")
    parser.add_argument("--hom-bound", type=int, default=None, dest="hom_bound")
    parser.add_argument("-o", "--output", default=None, help="directory for outputs")
    parser.add_argument("--witness", default=None, help="directory for witnesses")
    return parser


def parser():
    common = _common()
    main = argparse.ArgumentParser(
        prog="unrolling", description="Unrolled categories and their Reedy structures."
    )
    sub = main.add_subparsers(dest="command", required=True)

    def command(name, function, help, *paths):
        p = sub.add_parser(name, parents=[common], help=help)
        for path in paths:
            p.add_argument(path)
        p.set_defaults(func=function)
        return p

    command("check-cat", cmd_check_cat, "check the laws of a category", "path")
    command("check-functor", cmd_check_functor, "check the laws of a functor", "path")
    reedy = command("check-reedy", cmd_check_reedy, "check a Reedy structure", "path")
    reedy.add_argument(
        "--kind", choices=["generalized", "strict", "direct"], default="generalized"
    )
    command("check-lifting", cmd_check_lifting, "check the lifting condition", "path")
    command("unroll", cmd_unroll, "build the unrolled category", "path")
    command("check-density", cmd_check_density, "check absolute density", "path")
    command(
        "check-cofibering", cmd_check_cofibering, "check the comma projection", "path"
    )

    tribe = sub.add_parser("tribe", help="diagrams of categories")
    tribe_sub = tribe.add_subparsers(dest="tribe_command", required=True)
    for name, function, help in [
        ("check-fibrant", cmd_tribe_check_fibrant, "check p-fibrancy"),
        ("factorize", cmd_tribe_factorize, "factor the map to the terminal diagram"),
        ("kan", cmd_tribe_kan, "compute the right Kan extension of p^*X"),
    ]:
        p = tribe_sub.add_parser(name, parents=[common], help=help)
        p.add_argument("presentation")
        p.add_argument("diagram")
        p.set_defaults(func=function)

    zoo = sub.add_parser("zoo", help="write example inputs")
    zoo_sub = zoo.add_subparsers(dest="kind", required=True)
    group = zoo_sub.add_parser("group", parents=[common])
    group.add_argument("name", choices=sorted(GROUPS))
    group.set_defaults(func=cmd_zoo)
    cube = zoo_sub.add_parser("cube", parents=[common])
    cube.add_argument("--dim", type=int, required=True)
    cube.add_argument("--symmetries", action="store_true")
    cube.add_argument("--degeneracies", action="store_true")
    cube.set_defaults(func=cmd_zoo)

    command("verify", cmd_verify, "run the verification suite")
    return main


def run(argv=None):
    """Parse ``argv`` and run the corresponding command, returning its report"""
    args = parser().parse_args(argv)
    return args, args.func(args)


def main(argv=None):
    try:
        args, report = run(argv)
    except (NoLift, BoundExceeded) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_ESCALATION
    except (UsageError, FormatError, ConfigurationError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except UnrollingError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_FAILED

    if args.format == "json":
        print(report.to_json())
    else:
        print(report.to_text())
    return report.exit_status

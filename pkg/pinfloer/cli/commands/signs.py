"""
signs build / signs verify
"""
import argparse
from typing import Tuple

from pinfloer.cli.output import common_options, read_text, write_text
from pinfloer.core import config
from pinfloer.core.exceptions import EXIT_COMPUTATION_FAILURE, EXIT_OK, GridSizeLimitException
from pinfloer.schemas.files import SignsFile
from pinfloer.schemas.reports import SignBuildReport, SignVerificationReport
from pinfloer.services.signs import FREE_VARIABLE_RULES, SignService


def register(subparsers) -> None:
    signs = subparsers.add_parser("signs", help="Sign assignments for grid rectangles")
    actions = signs.add_subparsers(dest="action", required=True)

    build = actions.add_parser("build", parents=[common_options()], help="solve the sign constraints")
    build.add_argument("--n", type=int, required=True, help="grid size")
    build.add_argument("--rule", choices=FREE_VARIABLE_RULES, default="zeros",
                       help="how free variables are fixed (default: zeros)")
    build.add_argument("--seed", type=int, default=0, help="seed for --rule seeded")
    build.add_argument("--out", help="write the assignment as a signs file")
    build.set_defaults(handler=build_command)

    verify = actions.add_parser("verify", parents=[common_options()],
                                help="check a signs file against every constraint")
    verify.add_argument("--file", required=True, help="signs file")
    verify.set_defaults(handler=verify_command)


def build_command(args: argparse.Namespace) -> Tuple[SignBuildReport, int]:
    if args.n > config.GRID_SIZE_HARD_CAP:
        raise GridSizeLimitException(args.n, config.GRID_SIZE_HARD_CAP)
    assignment = SignService.construct_sign_assignment(args.n, args.rule, args.seed)
    counts = {}
    ranks = {}
    variables = 0
    for direction in (0, 1):
        system = SignService.build_constraints(args.n, direction)
        for kind, total in system.counts().items():
            counts[kind] = counts.get(kind, 0) + total
        ranks[str(direction)] = SignService.system_rank(system)
        variables += len(system.variables)
    if args.out:
        write_text(args.out, SignsFile.render(assignment))
    report = SignBuildReport(
        n=args.n,
        rule=args.rule,
        seed=args.seed,
        rectangle_count=len(assignment),
        equation_counts=counts,
        ranks=ranks,
        free_variables=variables - sum(ranks.values()),
        output=args.out,
    )
    return report, EXIT_OK


def verify_command(args: argparse.Namespace) -> Tuple[SignVerificationReport, int]:
    signs_file = SignsFile.parse(read_text(args.file), args.file)
    report = SignService.verify_sign_assignment(signs_file.to_assignment())
    if not report.passed:
        report.success = False
        report.message = f"{report.violation_count} constraint(s) violated"
        return report, EXIT_COMPUTATION_FAILURE
    return report, EXIT_OK

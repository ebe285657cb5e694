"""
pin demo: Pin(1) multiplication table and a double-cover sample
"""
import argparse
import logging
import random
from typing import Tuple

from pinfloer.cli.output import common_options
from pinfloer.core.exceptions import EXIT_COMPUTATION_FAILURE, EXIT_OK, InvalidInputException
from pinfloer.models.clifford import OrthogonalMatrix
from pinfloer.schemas.reports import PinDemoReport
from pinfloer.services.clifford import CliffordService

logger = logging.getLogger(__name__)


def register(subparsers) -> None:
    pin = subparsers.add_parser("pin", help="Pin group demonstrations")
    actions = pin.add_subparsers(dest="action", required=True)
    demo = actions.add_parser("demo", parents=[common_options()],
                              help="Pin(1) table, its splitting and the Pin(n) -> O(n) kernel")
    demo.add_argument("--n", type=int, default=3, help="dimension of the sampled group (default: 3)")
    demo.add_argument("--samples", type=int, default=200, help="random Pin(n) elements to check")
    demo.add_argument("--seed", type=int, default=0)
    demo.set_defaults(handler=demo_command)


def demo_command(args: argparse.Namespace) -> Tuple[PinDemoReport, int]:
    if not 1 <= args.n <= 6:
        raise InvalidInputException(f"--n must lie in 1..6, got {args.n}")
    if args.samples < 0:
        raise InvalidInputException(f"--samples must be non-negative, got {args.samples}")

    table = {f"{a}*{b}": value for (a, b), value in CliffordService.pin_one_table().items()}
    splitting = {str(k): str(v.value) for k, v in CliffordService.pin_one_splitting().items()}
    identity = OrthogonalMatrix.identity(args.n)
    group = CliffordService.signed_basis_group(args.n)
    kernel = sorted(str(p.value) for p in group if CliffordService.pin_to_orthogonal(p) == identity)

    rng = random.Random(args.seed)
    failures = 0 if len(kernel) == 2 else 1
    for _ in range(args.samples):
        p = CliffordService.random_pin_element(args.n, rng)
        image = CliffordService.pin_to_orthogonal(p)
        if not image.is_orthogonal() or CliffordService.pin_to_orthogonal(p.neg()) != image:
            failures += 1
    if failures:
        logger.warning(f"Double cover check failed {failures} time(s) for n={args.n}")

    report = PinDemoReport(
        n=args.n,
        pin_one_table=table,
        pin_one_splitting=splitting,
        signed_basis_group_size=len(group),
        samples=args.samples,
        kernel=kernel,
        double_cover_failures=failures,
        success=not failures,
        message="Pin(n) -> O(n) is two-to-one on every sample" if not failures
        else "double cover check failed",
    )
    return report, EXIT_OK if not failures else EXIT_COMPUTATION_FAILURE

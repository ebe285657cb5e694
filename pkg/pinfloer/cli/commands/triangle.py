"""
triangle check: signed triangle counts on the torus and the bigon sanity check
"""
import argparse
import logging
from typing import List, Tuple

from pinfloer.cli.output import common_options
from pinfloer.core.exceptions import EXIT_COMPUTATION_FAILURE, EXIT_OK
from pinfloer.models.torus import BigonConfiguration, GenusOneTriple, TriangleClass
from pinfloer.schemas.reports import TriangleReport, TriangleRow
from pinfloer.services.homology import HomologyService
from pinfloer.services.torus_triangles import TriangleService

logger = logging.getLogger(__name__)


def register(subparsers) -> None:
    triangle = subparsers.add_parser("triangle", help="Genus-one triangle counts")
    actions = triangle.add_subparsers(dest="action", required=True)
    check = actions.add_parser("check", parents=[common_options()],
                               help="enumerate triangle pairs and check their signed counts")
    check.add_argument("--maxk", type=int, default=6, help="largest pair index (default: 6)")
    check.add_argument("--twisted", action="store_true",
                       help="require every twisted pair sum to vanish instead of the untwisted sums to be 2")
    check.set_defaults(handler=check_command)


def _rotation_ok(T: GenusOneTriple, members: List[TriangleClass]) -> bool:
    by_h = {cls.h: cls for cls in members}
    for cls in members:
        image = TriangleService.rotate_class(T, cls)
        partner = by_h.get(image.h)
        if partner is None or partner is cls:
            return False
        if image.n_z != partner.n_z or image.delta_p_parity != partner.delta_p_parity:
            return False
    return True


def check_command(args: argparse.Namespace) -> Tuple[TriangleReport, int]:
    T = GenusOneTriple()
    classes = TriangleService.enumerate_triangles(T, args.maxk)
    rows = []
    for k in range(1, args.maxk + 1):
        members = [cls for cls in classes if cls.k == k]
        rows.append(TriangleRow(
            k=k,
            n_z=[cls.n_z for cls in members],
            parities=[cls.delta_p_parity for cls in members],
            untwisted_sum=TriangleService.pair_sum(T, k, False, classes),
            twisted_sum=TriangleService.pair_sum(T, k, True, classes),
            rotation_ok=_rotation_ok(T, members),
        ))
    complete = TriangleService.brute_force_classes(T, args.maxk) == sorted(cls.h for cls in classes)
    untwisted, twisted = TriangleService.generating_functions(T, args.maxk)

    config = BigonConfiguration()
    bigon_signs = [b.sign for b in TriangleService.enumerate_bigons(config)]
    bigon_rank = HomologyService.homology_of_complex(TriangleService.bigon_complex(config)).total_rank

    if args.twisted:
        sums_ok = all(row.twisted_sum == 0 for row in rows)
    else:
        sums_ok = all(abs(row.untwisted_sum) == 2 for row in rows)
    invariants_ok = all(
        row.rotation_ok and all(n_z == row.k * (row.k - 1) // 2 for n_z in row.n_z) for row in rows
    )
    passed = sums_ok and invariants_ok and complete and bigon_signs == [1, -1] and bigon_rank == 2
    if not passed:
        logger.error(f"Triangle check failed up to k={args.maxk}")

    report = TriangleReport(
        max_k=args.maxk,
        twisted=args.twisted,
        rows=rows,
        untwisted_series=str(untwisted),
        twisted_series=str(twisted),
        complete=complete,
        bigon_signs=bigon_signs,
        bigon_rank=bigon_rank,
        passed=passed,
        success=passed,
        message="all triangle and bigon checks passed" if passed else "triangle check failed",
    )
    return report, EXIT_OK if passed else EXIT_COMPUTATION_FAILURE

"""
grid hom / grid moves-check
"""
import argparse
import logging
from typing import Optional, Tuple

from pinfloer.cli.output import common_options, read_text
from pinfloer.core.exceptions import EXIT_COMPUTATION_FAILURE, EXIT_OK, ChainComplexException
from pinfloer.models.grid import Flavor, GridDiagram, GridMove, MarkingKind, MoveKind
from pinfloer.models.signs import SignAssignment
from pinfloer.schemas.base import BaseReport
from pinfloer.schemas.files import GridFile, SignsFile
from pinfloer.schemas.reports import HomologyEntry, HomologyReport, MinusReport, MoveCheckReport
from pinfloer.services.grid import GridService

logger = logging.getLogger(__name__)


def register(subparsers) -> None:
    grid = subparsers.add_parser("grid", help="Grid homology over Z")
    actions = grid.add_subparsers(dest="action", required=True)

    hom = actions.add_parser("hom", parents=[common_options()], help="grid homology of a grid file")
    hom.add_argument("--file", required=True, help="grid file")
    hom.add_argument("--flavor", choices=[f.value for f in Flavor], default=Flavor.TILDE.value)
    hom.add_argument("--signs", help="signs file; the built-in assignment is used otherwise")
    hom.add_argument("--allow-large", action="store_true", help="permit grids up to the hard size cap")
    hom.set_defaults(handler=hom_command)

    moves = actions.add_parser("moves-check", parents=[common_options()],
                               help="compare homology across commutations and a stabilization")
    moves.add_argument("--file", required=True, help="grid file")
    moves.add_argument("--allow-large", action="store_true", help="permit grids up to the hard size cap")
    moves.set_defaults(handler=moves_check_command)


def _load_grid(path: str) -> GridDiagram:
    O, X = GridFile.parse(read_text(path), path).zero_indexed
    return GridService.grid_from_permutations(O, X)


def _load_signs(path: Optional[str]) -> Optional[SignAssignment]:
    if path is None:
        return None
    return SignsFile.parse(read_text(path), path).to_assignment()


def hom_command(args: argparse.Namespace) -> Tuple[BaseReport, int]:
    G = _load_grid(args.file)
    assignment = _load_signs(args.signs)
    flavor = Flavor(args.flavor)
    if flavor == Flavor.TILDE:
        return _tilde_report(G, assignment, args.allow_large)
    return _minus_report(G, assignment, flavor, args.allow_large)


def _tilde_report(G: GridDiagram, assignment: Optional[SignAssignment],
                  allow_large: bool) -> Tuple[HomologyReport, int]:
    summary = GridService.tilde_homology(G, assignment, allow_large)
    mod2 = GridService.unsigned_mod2_homology(G)
    consistent = {k: v for k, v in summary.mod2_ranks().items() if v} == mod2
    if not consistent:
        logger.error(f"Integer homology disagrees with the F2 count for n={G.n}")
    groups = [
        HomologyEntry(maslov=m, alexander=str(a), free_rank=group.free_rank, torsion=list(group.torsion))
        for (m, a), group in sorted(summary.nonzero().items(), key=lambda item: (item[0][1], item[0][0]))
    ]
    report = HomologyReport(
        n=G.n,
        components=G.component_count,
        generator_count=sum(1 for _ in GridService.enumerate_states(G)),
        total_rank=summary.total_rank,
        torsion_free=summary.torsion_free,
        groups=groups,
        mod2_consistent=consistent,
        euler_characteristic=str(GridService.graded_euler_characteristic(G)),
        normalized_alexander=str(GridService.normalized_alexander_polynomial(G)),
        success=consistent,
        message="Computation completed successfully" if consistent else "F2 ranks disagree",
    )
    return report, EXIT_OK if consistent else EXIT_COMPUTATION_FAILURE


def _minus_report(G: GridDiagram, assignment: Optional[SignAssignment], flavor: Flavor,
                  allow_large: bool) -> Tuple[MinusReport, int]:
    complex_ = GridService.differential(G, assignment, flavor, allow_large)
    squared_zero = not GridService.boundary_squared(complex_)
    certificates = GridService.annulus_decomposition(G, assignment, allow_large)
    try:
        GridService.certify_annuli(G, certificates)
        certified = True
    except ChainComplexException as e:
        logger.error(f"Annulus certificate failed: {e.details}")
        certified = False
    passed = squared_zero and certified
    report = MinusReport(
        n=G.n,
        flavor=flavor.value,
        generator_count=len(complex_),
        entry_count=complex_.entry_count(),
        boundary_squared_zero=squared_zero,
        annuli_certified=certified,
        horizontal_terms=sum(len(c.horizontal) for c in certificates),
        vertical_terms=sum(len(c.vertical) for c in certificates),
        success=passed,
        message="d^2 = 0 certified" if passed else "d^2 certificate failed",
    )
    return report, EXIT_OK if passed else EXIT_COMPUTATION_FAILURE


def moves_check_command(args: argparse.Namespace) -> Tuple[MoveCheckReport, int]:
    G = _load_grid(args.file)
    moves = GridService.applicable_commutations(G)
    moves.append(GridMove(MoveKind.STABILIZATION, column=0, row=G.X[0], marking=MarkingKind.X))
    comparisons = GridService.check_moves(G, moves, allow_large=args.allow_large)
    passed = all(c.passed for c in comparisons)
    report = MoveCheckReport(
        n=G.n,
        comparisons=comparisons,
        passed=passed,
        success=passed,
        message="homology invariant under every move" if passed else "homology changed under a move",
    )
    return report, EXIT_OK if passed else EXIT_COMPUTATION_FAILURE

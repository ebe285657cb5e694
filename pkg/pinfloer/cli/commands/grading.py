"""
grading compute: gr_HF of the generators of a Heegaard diagram
"""
import argparse
from typing import Tuple

from pinfloer.cli.output import common_options, read_text
from pinfloer.core.exceptions import EXIT_OK, InvalidInputException
from pinfloer.models.grading import GeneratorLocalData
from pinfloer.schemas.files import DiagramFile
from pinfloer.schemas.reports import GeneratorGrading, GradingReport
from pinfloer.services.grading import GradingService


def register(subparsers) -> None:
    grading = subparsers.add_parser("grading", help="Z/2 gradings of Heegaard Floer generators")
    actions = grading.add_subparsers(dest="action", required=True)
    compute = actions.add_parser("compute", parents=[common_options()],
                                 help="grade the generators listed in a diagram file")
    compute.add_argument("--file", required=True, help="diagram JSON file")
    compute.set_defaults(handler=compute_command)


def compute_command(args: argparse.Namespace) -> Tuple[GradingReport, int]:
    diagram = DiagramFile.parse(read_text(args.file), args.file)
    data = GradingService.surface_data(diagram.genus, diagram.alpha, diagram.beta, diagram.inner_product)
    b1, h2 = GradingService.betti_numbers(data)
    canonical = GradingService.canonical_coupled_orientation(data)

    if diagram.intersections is not None:
        generators = GradingService.enumerate_generators(data, diagram.intersections)
    else:
        generators = []
        for spec in diagram.generators or []:
            if any(not 1 <= p <= diagram.genus for p in spec.permutation):
                raise InvalidInputException(f"permutation entries must lie in 1..{diagram.genus}")
            generators.append(GeneratorLocalData(tuple(p - 1 for p in spec.permutation), tuple(spec.signs)))

    graded = [
        GeneratorGrading(
            permutation=[p + 1 for p in x.permutation],
            signs=list(x.signs),
            gr_hf=GradingService.gr_hf(data, x),
        )
        for x in generators
    ]
    basis = canonical.basis
    report = GradingReport(
        genus=diagram.genus,
        b1=b1,
        h2=h2,
        canonical_orientation=[[str(basis[i, j]) for j in range(basis.shape[1])] for i in range(basis.shape[0])],
        generators=graded,
        euler_characteristic=sum(-1 if g.gr_hf else 1 for g in graded),
    )
    return report, EXIT_OK

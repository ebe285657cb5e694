"""
Tests for the command line tool, run in-process
"""
import json

import pytest

from pinfloer.cli.main import build_parser
from pinfloer.core.exceptions import EXIT_COMPUTATION_FAILURE, EXIT_INPUT_ERROR, EXIT_OK
from pinfloer.schemas.files import SignsFile
from pinfloer.services.signs import SignService

TREFOIL = ([(i + 2) % 5 for i in range(5)], list(range(5)))


def keys_sorted(text):
    """Every JSON object in the report lists its keys in sorted order"""
    ordered = []

    def hook(pairs):
        keys = [k for k, _ in pairs]
        ordered.append(keys == sorted(keys))
        return dict(pairs)

    json.loads(text, object_pairs_hook=hook)
    return all(ordered)


class TestParser:
    """Test argument parsing and usage errors"""

    def test_subcommands_registered(self):
        """Test every command group is reachable"""
        choices = build_parser()._subparsers._group_actions[0].choices
        assert set(choices) == {"pin", "grading", "signs", "grid", "triangle"}

    def test_missing_subcommand(self, cli):
        """Test a bare invocation is a usage error"""
        code, out = cli()
        assert code == EXIT_INPUT_ERROR
        assert out == ""

    def test_unknown_flavor(self, cli, write_grid_file):
        """Test an invalid choice is a usage error"""
        code, _ = cli("grid", "hom", "--file", write_grid_file([1, 0], [0, 1]), "--flavor", "hat")
        assert code == EXIT_INPUT_ERROR


class TestPinDemo:
    """Test pin demo"""

    def test_demo(self, cli):
        """Test the Pin(1) table and a double-cover sample"""
        code, out = cli("pin", "demo", "--n", "2", "--samples", "20")
        report = json.loads(out)
        assert code == EXIT_OK
        assert report["success"]
        assert report["pin_one_table"]["1*e1"] == "e1"
        assert report["signed_basis_group_size"] == 8
        assert len(report["kernel"]) == 2
        assert report["double_cover_failures"] == 0
        assert keys_sorted(out)

    def test_dimension_out_of_range(self, cli):
        """Test --n 7 is rejected"""
        code, out = cli("pin", "demo", "--n", "7")
        assert code == EXIT_INPUT_ERROR
        assert json.loads(out)["error_code"] == "INVALID_INPUT"

    def test_text_format(self, cli):
        """Test the text report has a header and a table per mapping"""
        code, out = cli("pin", "demo", "--n", "1", "--samples", "5", "--format", "text")
        assert code == EXIT_OK
        assert out.startswith("pinfloer ")
        assert "pin_one_table:" in out


class TestGradingCompute:
    """Test grading compute"""

    def test_sphere(self, cli, write_diagram_file):
        """Test the S^3 generator has gr_HF = 0 and chi = 1"""
        path = write_diagram_file({"genus": 1, "alpha": [[1, 0]], "beta": [[0, 1]],
                                   "generators": [{"permutation": [1], "signs": [1]}]})
        code, out = cli("grading", "compute", "--file", path)
        report = json.loads(out)
        assert code == EXIT_OK
        assert report["b1"] == 0
        assert [g["gr_hf"] for g in report["generators"]] == [0]
        assert report["euler_characteristic"] == 1

    def test_s1s2(self, cli, write_diagram_file):
        """Test the two S^1 x S^2 generators cancel in chi"""
        path = write_diagram_file({"genus": 1, "alpha": [[1, 0]], "beta": [[1, 0]],
                                   "generators": [{"permutation": [1], "signs": [1]},
                                                  {"permutation": [1], "signs": [-1]}]})
        code, out = cli("grading", "compute", "--file", path)
        report = json.loads(out)
        assert code == EXIT_OK
        assert report["b1"] == report["h2"] == 1
        assert [g["gr_hf"] for g in report["generators"]] == [1, 0]
        assert report["euler_characteristic"] == 0

    def test_permutation_out_of_range(self, cli, write_diagram_file):
        """Test a generator naming a missing curve is an input error"""
        path = write_diagram_file({"genus": 1, "alpha": [[1, 0]], "beta": [[0, 1]],
                                   "generators": [{"permutation": [2], "signs": [1]}]})
        code, _ = cli("grading", "compute", "--file", path)
        assert code == EXIT_INPUT_ERROR

    def test_malformed_json(self, cli, tmp_path):
        """Test a broken diagram file exits 2 with MALFORMED_FILE"""
        path = tmp_path / "broken.json"
        path.write_text("{")
        code, out = cli("grading", "compute", "--file", str(path))
        assert code == EXIT_INPUT_ERROR
        assert json.loads(out)["error_code"] == "MALFORMED_FILE"


class TestSigns:
    """Test signs build and signs verify"""

    def test_build_and_verify(self, cli, tmp_path):
        """Test a written assignment verifies"""
        out_path = str(tmp_path / "n3.signs")
        code, out = cli("signs", "build", "--n", "3", "--out", out_path)
        report = json.loads(out)
        assert code == EXIT_OK
        assert report["rectangle_count"] == 72
        assert report["output"] == out_path
        assert set(report["ranks"]) == {"0", "1"}
        assert report["free_variables"] >= 0

        code, out = cli("signs", "verify", "--file", out_path)
        assert code == EXIT_OK
        assert json.loads(out)["passed"]

    def test_verify_flipped(self, cli, tmp_path):
        """Test a violated assignment exits 1 and lists violations"""
        assignment = SignService.construct_sign_assignment(3)
        flipped = assignment.flipped(SignService.enumerate_rectangles(3)[0])
        path = tmp_path / "bad.signs"
        path.write_text(SignsFile.render(flipped))
        code, out = cli("signs", "verify", "--file", str(path))
        report = json.loads(out)
        assert code == EXIT_COMPUTATION_FAILURE
        assert not report["success"]
        assert report["violation_count"] == len(report["violations"]) > 0

    def test_build_above_hard_cap(self, cli):
        """Test sizes above the hard cap are refused"""
        code, out = cli("signs", "build", "--n", "11")
        assert code == EXIT_INPUT_ERROR
        assert json.loads(out)["error_code"] == "SIZE_LIMIT_EXCEEDED"


class TestGridHom:
    """Test grid hom"""

    def test_unknot(self, cli, write_grid_file):
        """Test two Z summands in (A, M) = (-1, -1) and (0, 0)"""
        code, out = cli("grid", "hom", "--file", write_grid_file([1, 0], [0, 1]))
        report = json.loads(out)
        assert code == EXIT_OK
        assert report["total_rank"] == 2
        assert [(g["maslov"], g["alexander"]) for g in report["groups"]] == [(-1, "-1"), (0, "0")]
        assert report["mod2_consistent"]
        assert report["normalized_alexander"] == "1"
        assert keys_sorted(out)

    def test_trefoil(self, cli, write_grid_file):
        """Test rank 48 and no torsion"""
        code, out = cli("grid", "hom", "--file", write_grid_file(*TREFOIL))
        report = json.loads(out)
        assert code == EXIT_OK
        assert report["total_rank"] == 48
        assert report["torsion_free"]
        assert report["components"] == 1

    @pytest.mark.parametrize("flavor", ["minus", "unblocked"])
    def test_minus_certificate(self, cli, write_grid_file, flavor):
        """Test the d^2 certificate passes"""
        code, out = cli("grid", "hom", "--file", write_grid_file(*TREFOIL), "--flavor", flavor)
        report = json.loads(out)
        assert code == EXIT_OK
        assert report["flavor"] == flavor
        assert report["boundary_squared_zero"]
        assert report["annuli_certified"]
        assert report["generator_count"] == 120

    def test_with_signs_file(self, cli, tmp_path, write_grid_file):
        """Test an explicit signs file is used"""
        signs = tmp_path / "n2.signs"
        signs.write_text(SignsFile.render(SignService.construct_sign_assignment(2, "seeded", 3)))
        code, out = cli("grid", "hom", "--file", write_grid_file([1, 0], [0, 1]), "--signs", str(signs))
        assert code == EXIT_OK
        assert json.loads(out)["total_rank"] == 2

    def test_signs_of_wrong_size(self, cli, tmp_path, write_grid_file):
        """Test a signs file for another grid size is an input error"""
        signs = tmp_path / "n2.signs"
        signs.write_text(SignsFile.render(SignService.construct_sign_assignment(2)))
        code, out = cli("grid", "hom", "--file", write_grid_file(*TREFOIL), "--signs", str(signs))
        assert code == EXIT_INPUT_ERROR
        assert json.loads(out)["error_code"] == "DIMENSION_MISMATCH"

    def test_size_cap(self, cli, write_grid_file):
        """Test n = 9 needs --allow-large"""
        path = write_grid_file([(i + 1) % 9 for i in range(9)], list(range(9)))
        code, out = cli("grid", "hom", "--file", path)
        assert code == EXIT_INPUT_ERROR
        assert json.loads(out)["error_code"] == "SIZE_LIMIT_EXCEEDED"

    def test_missing_file(self, cli, tmp_path):
        """Test an unreadable file exits 2 with an error report"""
        code, out = cli("grid", "hom", "--file", str(tmp_path / "absent.grid"))
        report = json.loads(out)
        assert code == EXIT_INPUT_ERROR
        assert not report["success"]
        assert report["error_code"] == "INVALID_INPUT"
        assert len(report["run_id"]) == 12

    def test_invalid_grid(self, cli, write_grid_file):
        """Test a doubly marked cell exits 2"""
        code, out = cli("grid", "hom", "--file", write_grid_file([0, 1], [0, 1]))
        assert code == EXIT_INPUT_ERROR
        assert json.loads(out)["error_code"] == "INVALID_GRID"

    def test_text_format(self, cli, write_grid_file):
        """Test the text report tabulates the homology groups"""
        code, out = cli("grid", "hom", "--file", write_grid_file([1, 0], [0, 1]), "--format", "text")
        assert code == EXIT_OK
        assert "groups:" in out
        assert "free_rank" in out


class TestGridMovesCheck:
    """Test grid moves-check"""

    def test_unknot(self, cli, write_grid_file):
        """Test commutations and a stabilization of the unknot"""
        code, out = cli("grid", "moves-check", "--file", write_grid_file([1, 0], [0, 1]))
        report = json.loads(out)
        assert code == EXIT_OK
        assert report["passed"]
        assert report["comparisons"][-1]["size_after"] == 3
        assert report["comparisons"][-1]["rank_after"] == 4

    def test_trefoil_stabilization(self, cli, write_grid_file):
        """Test the trefoil has only the stabilization to check"""
        code, out = cli("grid", "moves-check", "--file", write_grid_file(*TREFOIL))
        report = json.loads(out)
        assert code == EXIT_OK
        assert [c["rank_after"] for c in report["comparisons"]] == [96]


class TestTriangleCheck:
    """Test triangle check"""

    @pytest.mark.parametrize("flag", [(), ("--twisted",)])
    def test_check(self, cli, flag):
        """Test every pair, the rotation, completeness and the bigons"""
        code, out = cli("triangle", "check", "--maxk", "4", *flag)
        report = json.loads(out)
        assert code == EXIT_OK
        assert report["passed"]
        assert [row["n_z"] for row in report["rows"]] == [[0, 0], [1, 1], [3, 3], [6, 6]]
        assert all(row["untwisted_sum"] == 2 and row["twisted_sum"] == 0 for row in report["rows"])
        assert report["bigon_signs"] == [1, -1]
        assert report["bigon_rank"] == 2

    def test_maxk_zero(self, cli):
        """Test --maxk 0 is an input error"""
        code, out = cli("triangle", "check", "--maxk", "0")
        assert code == EXIT_INPUT_ERROR
        assert json.loads(out)["error_code"] == "INVALID_INPUT"

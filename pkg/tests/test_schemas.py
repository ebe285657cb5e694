"""
Tests for input file parsing
"""
import json

import pytest

from pinfloer.core.exceptions import ErrorCode, MalformedFileException
from pinfloer.schemas.files import SIGNS_HEADER, DiagramFile, GridFile, SignsFile
from pinfloer.services.signs import SignService


class TestGridFile:
    """Test grid file parsing"""

    def test_parse(self):
        """Test comments are skipped and rows become 0-indexed"""
        grid = GridFile.parse("# trefoil\nn = 5\nO: 3 4 5 1 2\nX: 1 2 3 4 5\n")
        assert grid.n == 5
        assert grid.zero_indexed == ([2, 3, 4, 0, 1], [0, 1, 2, 3, 4])

    def test_round_trip_through_text(self, trefoil_grid):
        """Test a diagram's text form parses back to its markings"""
        parsed = GridFile.parse(trefoil_grid.to_text())
        assert parsed.zero_indexed == (list(trefoil_grid.O), list(trefoil_grid.X))

    @pytest.mark.parametrize("text, fragment", [
        ("n = 2\nO: 2 1\n", "missing"),
        ("n = 2\nO: 2 1\nX: 1 2\nX: 1 2\n", "unexpected line"),
        ("n = 2\nO: 2 one\nX: 1 2\n", "non-integer"),
        ("n = 3\nO: 2 1\nX: 1 2\n", "expected 3 entries"),
        ("n = 2\nO: 2 3\nX: 1 2\n", "1..n"),
        ("size 2\nO: 2 1\nX: 1 2\n", "unexpected line"),
    ])
    def test_malformed(self, text, fragment):
        """Test each malformed grid file names the problem"""
        with pytest.raises(MalformedFileException) as excinfo:
            GridFile.parse(text, "bad.grid")
        assert fragment in excinfo.value.message
        assert excinfo.value.message.startswith("bad.grid")
        assert excinfo.value.error_code == ErrorCode.MALFORMED_FILE


class TestSignsFile:
    """Test sign file parsing"""

    def test_render_then_parse(self):
        """Test a rendered assignment parses to the same signs"""
        assignment = SignService.construct_sign_assignment(3, "seeded", 11)
        text = SignsFile.render(assignment)
        assert text.startswith(SIGNS_HEADER)
        assert SignsFile.parse(text).to_assignment() == assignment

    def test_missing_rectangles(self):
        """Test a truncated file reports how many rectangles are missing"""
        lines = SignsFile.render(SignService.construct_sign_assignment(2)).splitlines()
        with pytest.raises(MalformedFileException) as excinfo:
            SignsFile.parse("\n".join(lines[:-3]))
        assert excinfo.value.details == {"expected": 8, "found": 5}

    def test_bad_header(self):
        """Test an unknown header is rejected"""
        with pytest.raises(MalformedFileException):
            SignsFile.parse("# other-format\nn=2\n")

    def test_missing_size(self):
        """Test rectangles before n= are rejected"""
        with pytest.raises(MalformedFileException) as excinfo:
            SignsFile.parse("1 2 1 2 0 1\n")
        assert "n=<size>" in excinfo.value.message

    @pytest.mark.parametrize("line", ["1 2 1 2 0 3", "1 2 1 2 0", "1 1 1 2 0 1", "1 2 1 2 0 1\n1 2 1 2 0 1"])
    def test_bad_rectangle_lines(self, line):
        """Test bad signs, short lines, degenerate and duplicate rectangles"""
        with pytest.raises(MalformedFileException):
            SignsFile.parse(f"n=2\n{line}\n")


class TestDiagramFile:
    """Test Heegaard diagram JSON parsing"""

    def test_parse(self):
        """Test a minimal genus-one diagram"""
        diagram = DiagramFile.parse(json.dumps({"genus": 1, "alpha": [[1, 0]], "beta": [[0, 1]]}))
        assert diagram.genus == 1
        assert diagram.generators is None

    def test_generators(self):
        """Test generator specs are validated"""
        payload = {"genus": 1, "alpha": [[1, 0]], "beta": [[1, 0]],
                   "generators": [{"permutation": [1], "signs": [1]}, {"permutation": [1], "signs": [-1]}]}
        diagram = DiagramFile.parse(json.dumps(payload))
        assert [g.signs for g in diagram.generators] == [[1], [-1]]

    @pytest.mark.parametrize("payload", [
        {"genus": 0, "alpha": [], "beta": []},
        {"format": "other", "genus": 1, "alpha": [[1, 0]], "beta": [[0, 1]]},
        {"version": 99, "genus": 1, "alpha": [[1, 0]], "beta": [[0, 1]]},
        {"genus": 1, "alpha": [[1, 0]], "beta": [[0, 1]], "generators": [{"permutation": [1], "signs": [2]}]},
        {"alpha": [[1, 0]], "beta": [[0, 1]]},
    ])
    def test_invalid(self, payload):
        """Test validation failures become malformed-file errors"""
        with pytest.raises(MalformedFileException):
            DiagramFile.parse(json.dumps(payload), "bad.json")

    def test_not_json(self):
        """Test text that is not JSON is rejected"""
        with pytest.raises(MalformedFileException):
            DiagramFile.parse("genus: 1")

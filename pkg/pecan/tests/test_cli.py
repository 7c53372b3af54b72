"""Tests for the command line"""

import sys
from pathlib import Path

import pytest
from click.testing import CliRunner
from loguru import logger

from pecan.cli import cli
from pecan.report import REPORT_COLUMNS

TRUE_FILE = """
Restrict a, b are nat.
Theorem ("commutes", { forall a,b. a + b = b + a }).
"""

FALSE_FILE = 'Theorem ("never", { false }).\n'

SAMPLES = Path(__file__).parents[2] / "theorems"


@pytest.fixture(autouse=True)
def restore_logging():
    yield
    logger.remove()
    logger.add(sys.stderr)


@pytest.fixture
def write(tmp_path):
    def write_file(name: str, text: str) -> str:
        path = tmp_path / name
        path.write_text(text, encoding="utf-8")
        return str(path)

    return write_file


def invoke(*args: str):
    return CliRunner().invoke(cli, list(args))


class TestExitStatus:
    def test_true_theorems(self, write):
        result = invoke(write("true.pn", TRUE_FILE))
        assert result.exit_code == 0
        assert "commutes" in result.output and "TRUE" in result.output

    def test_false_theorem(self, write):
        result = invoke(write("false.pn", FALSE_FILE))
        assert result.exit_code == 1
        assert "FALSE" in result.output

    def test_commutativity_sample(self):
        result = invoke(str(SAMPLES / "commutativity.pn"))
        assert result.exit_code == 0

    def test_thue_morse_sample(self, write):
        text = (SAMPLES / "thue_morse.pn").read_text(encoding="utf-8")
        result = invoke("--csv", write("thue_morse.pn", text))
        verdicts = dict(line.split(",")[:2] for line in result.output.splitlines()[1:])
        assert result.exit_code == 1
        assert verdicts == {
            "doubling": "TRUE",
            "odd positions": "TRUE",
            "neighbours": "FALSE",
            "no cube of letters": "TRUE",
            "squares": "TRUE",
            "no overlap of length 3": "TRUE",
            "recurrence": "TRUE",
        }

    def test_missing_file(self, tmp_path):
        result = invoke(str(tmp_path / "absent.pn"))
        assert result.exit_code == 2
        assert "error: cannot read" in result.output

    def test_worst_file_wins(self, write):
        result = invoke(write("true.pn", TRUE_FILE), write("broken.pn", "Theorem (\n"))
        assert result.exit_code == 2

    def test_invalid_options(self, write):
        assert invoke("--state-budget", "0", write("true.pn", TRUE_FILE)).exit_code == 2
        assert invoke().exit_code == 2


class TestOutput:
    def test_csv_header(self, write):
        result = invoke("--csv", write("false.pn", FALSE_FILE))
        lines = result.output.splitlines()
        assert lines[0] == ",".join(REPORT_COLUMNS)
        assert lines[1].startswith("never,FALSE,")

    def test_empty_program(self, write):
        result = invoke(write("empty.pn", "// nothing to prove\n"))
        assert result.exit_code == 0
        assert result.output == "  ".join(REPORT_COLUMNS) + "\n"

    def test_files_in_command_line_order(self, write):
        first, second = write("true.pn", TRUE_FILE), write("false.pn", FALSE_FILE)
        result = invoke("--jobs", "2", "--csv", second, first)
        names = [line.split(",")[0] for line in result.output.splitlines()[1:]]
        assert names == ["never", "commutes"]

    def test_without_prelude(self, write):
        result = invoke("--no-prelude", write("true.pn", TRUE_FILE))
        assert result.exit_code == 2
        assert "nat" in result.output


class TestLimits:
    WIDE_FILE = """
Restrict a, b, c are nat.
Theorem ("excluded middle", { forall a, b, c. a + b = c | !(a + b = c) }).
"""

    def test_alphabet_limit_is_reported(self, write):
        result = invoke("--max-aps", "2", write("wide.pn", self.WIDE_FILE))
        assert result.exit_code == 2
        assert "error: 3 propositions exceed the limit of 2" in result.output

    def test_default_limit_fits(self, write):
        assert invoke(write("wide.pn", self.WIDE_FILE)).exit_code == 0

    def test_limit_range(self, write):
        assert invoke("--max-aps", "25", write("true.pn", TRUE_FILE)).exit_code == 2

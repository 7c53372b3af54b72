"""Pecan: first order theorems over Büchi automatic structures"""

from pecan.automata_io import parse_document, serialize
from pecan.definitions import OutputMode, Verdict
from pecan.errors import PecanError
from pecan.evaluator import EvalContext, TheoremResult, decide_theorem
from pecan.report import RunReport, report_format
from pecan.session import Session, run_file
from pecan.settings import ProverSettings

__all__ = [
    "EvalContext",
    "OutputMode",
    "PecanError",
    "ProverSettings",
    "RunReport",
    "Session",
    "TheoremResult",
    "Verdict",
    "decide_theorem",
    "parse_document",
    "report_format",
    "run_file",
    "serialize",
]

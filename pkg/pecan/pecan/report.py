"""Verdict tables of a run"""

from typing import Sequence

import pandas as pd
from pydantic import BaseModel, Field

from pecan.definitions import OutputMode, Verdict
from pecan.evaluator import TheoremResult

REPORT_COLUMNS = [
    "name",
    "verdict",
    "complexity",
    "atoms",
    "runtime_s",
    "max_states",
    "max_edges",
    "final_states",
    "final_edges",
]

EXIT_OK = 0
EXIT_FALSE = 1
EXIT_ERROR = 2


class RunReport(BaseModel):
    """Theorems of one source file in source order, and the error that stopped it"""

    path: str
    theorems: list[TheoremResult] = Field(default_factory=list)
    error: str | None = None

    @property
    def exit_status(self) -> int:
        if self.error is not None:
            return EXIT_ERROR
        if any(result.verdict is Verdict.FALSE for result in self.theorems):
            return EXIT_FALSE
        return EXIT_OK


def exit_status(reports: Sequence[RunReport]) -> int:
    """The worst status among the files"""
    return max((report.exit_status for report in reports), default=EXIT_OK)


def report_frame(reports: Sequence[RunReport]) -> pd.DataFrame:
    """One row per theorem with the REPORT_COLUMNS"""
    rows = [
        {
            "name": result.name,
            "verdict": result.verdict.name,
            **result.metrics.model_dump(),
        }
        for report in reports
        for result in report.theorems
    ]
    return pd.DataFrame(rows, columns=REPORT_COLUMNS)


def report_format(reports: Sequence[RunReport], mode: OutputMode = OutputMode.HUMAN) -> str:
    """
    Renders the verdicts.

    Input:
        reports, Sequence[RunReport]: the files in command line order
        mode, OutputMode: aligned table or csv
    Output:
        str, the table; an empty run gives the header alone
    """
    frame = report_frame(reports)
    if mode is OutputMode.CSV:
        return frame.to_csv(index=False)
    if frame.empty:
        return "  ".join(REPORT_COLUMNS) + "\n"
    frame["runtime_s"] = frame["runtime_s"].map(lambda seconds: f"{seconds:.3f}")
    return frame.to_string(index=False) + "\n"

"""
📉 ``gv-compare`` – Goppa-bound codes against the asymptotic GV curve,
as CSV for external plotting
"""

from __future__ import annotations

from typing import TYPE_CHECKING, TextIO

from handler.code_handler import CodeHandler
from pages.codes import sweep_specs

if TYPE_CHECKING:
    from app import RunConfig


def show_gv_compare(config: "RunConfig", out: TextIO) -> int:
    codes = CodeHandler(config.q, config.c)
    table = codes.gv_compare(sweep_specs(config))
    table.to_csv(out, index=False, lineterminator="\n", float_format="%.6f")
    return 0

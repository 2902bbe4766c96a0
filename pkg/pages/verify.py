"""
✅ ``verify`` – the full invariant battery for one curve; exit 1 on any FAIL.
"""

from __future__ import annotations

from typing import TYPE_CHECKING, TextIO

from handler.verify_handler import BatterySizes, VerifyHandler

if TYPE_CHECKING:
    from app import RunConfig


def show_verify(config: "RunConfig", out: TextIO) -> int:
    sizes = BatterySizes.quick() if config.quick else BatterySizes()
    report = VerifyHandler(config.q, config.c, seed=config.seed, sizes=sizes).run_all()
    report.to_csv(out, index=False, lineterminator="\n")
    return 0 if (report["status"] == "PASS").all() else 1

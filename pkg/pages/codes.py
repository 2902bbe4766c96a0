"""
🧮 Code views – ``code``, ``dual`` and ``table``
"""

from __future__ import annotations

import logging
from typing import TYPE_CHECKING, TextIO

import numpy as np
import pandas as pd

from handler.code_handler import BudgetExceededError, CodeHandler, LinearCode
from handler.lattice_handler import DivisorSpec
from handler.linalg_handler import mul_transpose, write_matrix

if TYPE_CHECKING:
    from app import RunConfig

log = logging.getLogger(__name__)

TABLE_COLUMNS = [
    "v", "r", "s", "t", "degG", "k", "goppa_lb",
    "dual_v", "dual_r", "dual_s", "dual_t",
]


# ───────── helpers ─────────
def parse_sweep(text: str) -> range:
    """``vmin:vmax:step``, both ends inclusive."""
    parts = text.split(":")
    if len(parts) != 3:
        raise ValueError(f"--sweep expects vmin:vmax:step, got {text!r}")
    try:
        lo, hi, step = (int(p) for p in parts)
    except ValueError:
        raise ValueError(f"--sweep expects integers, got {text!r}") from None
    if step <= 0:
        raise ValueError(f"--sweep step must be positive, got {step}")
    if hi < lo:
        raise ValueError(f"--sweep range is empty: {lo} > {hi}")
    return range(lo, hi + 1, step)


def sweep_specs(config: "RunConfig") -> list[DivisorSpec]:
    base = config.spec
    return [DivisorSpec(v, base.r, base.s, base.t) for v in parse_sweep(config.sweep)]


def duality_holds(codes: CodeHandler, code: LinearCode) -> bool:
    dual = codes.build_code(code.dual_spec)
    orthogonal = not np.any(mul_transpose(code.gen, dual.gen).view(np.ndarray))
    return orthogonal and code.k + dual.k == code.n


# ───────── views ─────────
def show_code(config: "RunConfig", out: TextIO) -> int:
    codes = CodeHandler(config.q, config.c)
    code = codes.build_code(config.spec)
    out.write(code.summary_line() + "\n")

    if config.out:
        with open(config.out, "w", encoding="utf-8", newline="\n") as fh:
            write_matrix(code.gen, fh, codes.ctx)
        log.info("generator matrix written to %s", config.out)

    status = 0
    if config.check_dual:
        ok = duality_holds(codes, code)
        out.write(f"dual {code.dual_spec} {'PASS' if ok else 'FAIL'}\n")
        status = 0 if ok else 1

    if config.min_dist and code.k == 0:
        out.write("d=undefined\n")
    elif config.min_dist:
        try:
            d = codes.min_distance_bruteforce(code, budget=config.budget)
            out.write(f"d={d}\n")
        except BudgetExceededError as exc:
            log.warning("%s; reporting the Goppa bound only", exc)
            out.write(f"d>={code.goppa_lb}\n")
    return status


def show_dual(config: "RunConfig", out: TextIO) -> int:
    codes = CodeHandler(config.q, config.c)
    dual = codes.dual_spec(config.spec)
    out.write(f"{dual}\n")
    if not config.check:
        return 0
    ok = duality_holds(codes, codes.build_code(config.spec))
    out.write("PASS\n" if ok else "FAIL\n")
    return 0 if ok else 1


def show_table(config: "RunConfig", out: TextIO) -> int:
    codes = CodeHandler(config.q, config.c)
    cp = codes.cp
    rows = []
    for spec in sweep_specs(config):
        dual = codes.dual_spec(spec)
        rows.append([
            *spec.as_tuple(), spec.degree(cp), codes.dimension(spec), cp.n - spec.degree(cp),
            *dual.as_tuple(),
        ])
    pd.DataFrame(rows, columns=TABLE_COLUMNS).to_csv(out, index=False, lineterminator="\n")
    return 0

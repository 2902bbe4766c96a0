# handler/linalg_handler.py
"""
Dense exact linear algebra over F_(q^c).

Matrices are galois FieldArrays of a context's field class; every
operation checks that its operands share that class.  No tolerance
exists anywhere: elimination is exact.
"""

from __future__ import annotations

import logging
from typing import TextIO

import galois
import numpy as np

from field_manager import FieldCtx

log = logging.getLogger(__name__)

GFMatrix = galois.FieldArray


class MatrixShapeError(ValueError):
    """Operands disagree in shape or field."""


# ────────── helpers ──────────
def _check_same_field(a: GFMatrix, b: GFMatrix) -> None:
    if type(a) is not type(b):
        raise MatrixShapeError(f"field mismatch: {type(a).name} vs {type(b).name}")


def _check_cols(a: GFMatrix, b: GFMatrix) -> None:
    _check_same_field(a, b)
    if a.ndim != 2 or b.ndim != 2 or a.shape[1] != b.shape[1]:
        raise MatrixShapeError(f"column mismatch: {a.shape} vs {b.shape}")


def zeros(ctx: FieldCtx, rows: int, cols: int) -> GFMatrix:
    return ctx.GF.Zeros((rows, cols))


# ───────────────────────────────────────────────────────────────
# 1. Elimination
# ───────────────────────────────────────────────────────────────
def rref(mat: GFMatrix) -> GFMatrix:
    """Reduced row echelon form with the zero rows dropped."""
    if mat.shape[0] == 0:
        return mat.copy()
    reduced = mat.row_reduce()
    nonzero = np.any(reduced.view(np.ndarray) != 0, axis=1)
    return reduced[nonzero]


def rank(mat: GFMatrix) -> int:
    if mat.shape[0] == 0 or mat.shape[1] == 0:
        return 0
    return int(rref(mat).shape[0])


def stack(a: GFMatrix, b: GFMatrix) -> GFMatrix:
    _check_cols(a, b)
    return type(a)(np.vstack((a.view(np.ndarray), b.view(np.ndarray))))


def mul_transpose(a: GFMatrix, b: GFMatrix) -> GFMatrix:
    """a · bᵀ."""
    _check_cols(a, b)
    if a.shape[0] == 0 or b.shape[0] == 0:
        return type(a).Zeros((a.shape[0], b.shape[0]))
    return a @ b.T


def row_space_equal(a: GFMatrix, b: GFMatrix) -> bool:
    _check_cols(a, b)
    ra, rb = rank(a), rank(b)
    return ra == rb and rank(stack(a, b)) == ra


def null_space(mat: GFMatrix) -> GFMatrix:
    """Rows spanning {x : mat · x = 0}."""
    cols = mat.shape[1]
    GF = type(mat)
    if mat.shape[0] == 0 or rank(mat) == 0:
        return GF.Identity(cols)
    if rank(mat) == cols:
        return GF.Zeros((0, cols))
    return mat.null_space()


# ───────────────────────────────────────────────────────────────
# 2. Matrix file format:  "p e c rows cols"  then one row per line
# ───────────────────────────────────────────────────────────────
def write_matrix(mat: GFMatrix, fh: TextIO, ctx: FieldCtx) -> None:
    if type(mat) is not ctx.GF:
        raise MatrixShapeError("matrix does not belong to the given field")
    rows, cols = mat.shape
    fh.write(f"{ctx.p} {ctx.e} {ctx.c} {rows} {cols}\n")
    if rows:
        np.savetxt(fh, mat.view(np.ndarray), fmt="%d", delimiter=" ", newline="\n")


def read_matrix(fh: TextIO, ctx: FieldCtx) -> GFMatrix:
    header = fh.readline().split()
    if len(header) != 5:
        raise ValueError(f"bad matrix header: {' '.join(header)!r}")
    p, e, c, rows, cols = (int(x) for x in header)
    if (p, e, c) != (ctx.p, ctx.e, ctx.c):
        raise MatrixShapeError(f"matrix over GF({p}^{e * c}), expected GF({ctx.order})")
    if rows == 0:
        return ctx.GF.Zeros((0, cols))
    body = np.loadtxt(fh, dtype=np.int64, ndmin=2)
    if body.shape != (rows, cols):
        raise ValueError(f"matrix body is {body.shape}, header says {(rows, cols)}")
    return ctx.GF(body)

# handler/curve_handler.py
"""
CurveHandler
────────────
Generalized Hermitian curve  Tr_b(y^(q^a)/x) + Tr_a(y/x^(q^b)) = 1
over F_(q^c) with c = a + b, a = b + 1.

Holds the curve invariants (genus, length, divisor degrees, dual
shifts), enumerates the affine rational points in canonical order and
reports which special rational places exist.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from functools import lru_cache
from typing import NamedTuple

import numpy as np
import pandas as pd

from field_manager import FieldCtx, FieldManager, get_field, split_prime_power

log = logging.getLogger(__name__)


class CurveParameterError(ValueError):
    """(q, c) outside the supported family."""


class AffinePoint(NamedTuple):
    alpha: int
    beta: int


@dataclass(frozen=True)
class PlaceReport:
    P1_exists: bool
    gamma: int | None
    Q1_exists: bool
    V_rational_count: int


# ───────────────────────────────────────────────────────────────
# 1. Curve invariants
# ───────────────────────────────────────────────────────────────
@dataclass(frozen=True)
class CurveParams:
    ctx: FieldCtx
    q: int
    c: int
    a: int
    b: int
    g: int
    n: int
    qnum: tuple[int, ...]        # qnum[k] = N_k = (q^k - 1)/(q - 1), 0 <= k <= c
    degP: int
    degQ: int
    degV: int
    v0: int
    A: int
    B: int

    @property
    def p(self) -> int:
        return self.ctx.p

    @property
    def qc(self) -> int:
        return self.q ** self.c

    @property
    def units(self) -> int:
        """q^c - 1, the order of the multiplicative group."""
        return self.q ** self.c - 1

    @property
    def R(self) -> int:
        return self.n + 2 * self.g - 2

    @property
    def degP0(self) -> int:
        return self.degP - 1

    @property
    def gamma(self) -> int:
        return self.ctx.int_inverse_embedded(self.a)

    def N(self, k: int) -> int:
        return self.qnum[k]

    def summary(self) -> dict[str, int]:
        return {
            "a": self.a, "b": self.b, "g": self.g, "n": self.n,
            "v0": self.v0, "A": self.A, "B": self.B,
        }


def curve_new(q: int, c: int) -> CurveParams:
    p, e = split_prime_power(q)
    if c < 3 or c % 2 == 0:
        raise CurveParameterError(f"c must be odd and >= 3, got c={c}")
    a, b = (c + 1) // 2, (c - 1) // 2
    if a % p == 0:
        raise CurveParameterError(
            f"p={p} divides a={a}: the standing assumption p ∤ a fails "
            f"(the symmetric construction on Q_1 is not supported)"
        )

    ctx  = get_field(p, e, c)
    qc   = q ** c
    qnum = tuple((q ** k - 1) // (q - 1) for k in range(c + 1))

    g2 = (qc - 2) * (q ** (a - 1) + q ** (b - 1) - 2) + (qc - q)
    if g2 % 2:
        raise CurveParameterError(f"genus numerator {g2} is odd for q={q}, c={c}")

    cp = CurveParams(
        ctx=ctx,
        q=q,
        c=c,
        a=a,
        b=b,
        g=g2 // 2,
        n=q ** (c - 1) * (qc - 1),
        qnum=qnum,
        degP=q ** (a - 1),
        degQ=q ** (b - 1),
        degV=q - 1,
        v0=(qc - 1) * (q ** b + q ** (b - 1) - 1),
        A=q ** (c + a) + qc - q ** a - 2,
        B=(q ** (a - 1) - 1) * qnum[c] - 1,
    )
    if cp.n <= 2 * cp.g - 2:
        log.warning("n=%d <= 2g-2=%d for q=%d, c=%d", cp.n, 2 * cp.g - 2, q, c)
    log.info("curve q=%d c=%d: g=%d n=%d", q, c, cp.g, cp.n)
    return cp


@lru_cache(maxsize=16)
def get_curve(q: int, c: int) -> CurveParams:
    return curve_new(q, c)


@lru_cache(maxsize=16)
def _point_table(q: int, c: int) -> tuple[np.ndarray, np.ndarray]:
    """Canonical (alpha, beta) encodings of the affine rational points."""
    handler = CurveHandler(q, c)
    GF = handler.ctx.GF
    units = handler.ctx.units()
    one = GF(1)

    alphas, betas = [], []
    for alpha in units:                         # ascending encodings
        hits = handler._h(alpha, units) == one
        betas.append(units[hits].view(np.ndarray).astype(np.int64))
        alphas.append(np.full(betas[-1].shape, int(alpha), dtype=np.int64))

    alpha_enc = np.concatenate(alphas)
    beta_enc  = np.concatenate(betas)
    alpha_enc.flags.writeable = False
    beta_enc.flags.writeable = False
    return alpha_enc, beta_enc


# ───────────────────────────────────────────────────────────────
# 2. Handler
# ───────────────────────────────────────────────────────────────
class CurveHandler(FieldManager):
    """Curve-level queries on top of the cached field."""

    def __init__(self, q: int, c: int):
        super().__init__(q, c)
        self.cp = get_curve(q, c)

    # ────────── curve equation ──────────
    def _h(self, x, y):
        """Left-hand side of the curve equation, vectorized over y (and x)."""
        cp, ctx = self.cp, self.ctx
        left  = ctx.frobenius_q(y, cp.a) / x
        right = y / ctx.frobenius_q(x, cp.b)
        return ctx.tr_partial(left, cp.b) + ctx.tr_partial(right, cp.a)

    def curve_eq_holds(self, alpha: int, beta: int) -> bool:
        if alpha == 0 or beta == 0:
            raise ValueError("curve equation is evaluated at nonzero coordinates only")
        GF = self.ctx.GF
        return int(self._h(GF(alpha), GF(beta))) == 1

    # ────────── rational points ──────────
    def enumerate_points(self) -> list[AffinePoint]:
        alpha, beta = _point_table(self.q, self.c)
        return [AffinePoint(int(x), int(y)) for x, y in zip(alpha, beta)]

    def point_arrays(self):
        """(alpha, beta) as FieldArrays in canonical point order."""
        alpha, beta = _point_table(self.q, self.c)
        return self.ctx.array(alpha), self.ctx.array(beta)

    def points_frame(self) -> pd.DataFrame:
        alpha, beta = _point_table(self.q, self.c)
        return pd.DataFrame({"alpha": alpha, "beta": beta})

    def per_alpha_counts(self) -> pd.Series:
        """Number of beta per alpha; zero-filled for every unit alpha."""
        counts = self.points_frame().groupby("alpha").size()
        return counts.reindex(range(1, self.ctx.order), fill_value=0)

    # ────────── special places ──────────
    def v_mu_solutions(self) -> int:
        """#{mu in F*_(q^c) : mu^(q-1) = -1}."""
        units = self.ctx.units()
        minus_one = -self.ctx.GF(1)
        return int(np.count_nonzero((units ** (self.q - 1) == minus_one).view(np.ndarray)))

    def special_places(self) -> PlaceReport:
        cp, p = self.cp, self.p
        P1 = cp.a % p != 0
        return PlaceReport(
            P1_exists=P1,
            gamma=self.ctx.int_inverse_embedded(cp.a) if P1 else None,
            Q1_exists=cp.b % p != 0,
            V_rational_count=cp.q - 1 if p == 2 else 0,
        )

# handler/code_handler.py
"""
CodeHandler
───────────
Builds C_{v,r,s,t} = C_L(D, vP_1 + rP_0 + sQ + tV) on the curve:

* generator rows E_{i,j,k} = (α^i β^j u^k) over the points of D, one per
  Ω′ triple, for 0 <= deg G < n
* the null space of the dual generator for n <= deg G <= R
* explicit zero / full codes outside [0, R]

Also the dual parameters, the diagonal equivalence witness of the
reduction, exhaustive minimum distance at desk scale and the
Gilbert-Varshamov comparison table.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, NamedTuple

import galois
import numpy as np
import pandas as pd

from handler.curve_handler import AffinePoint, CurveParams
from handler.lattice_handler import DivisorSpec, LatticeHandler
from handler.linalg_handler import mul_transpose, null_space, rank, rref

log = logging.getLogger(__name__)

# ───────── constants ─────────
DEFAULT_BUDGET = 1 << 22          # codewords swept by min_distance_bruteforce
SWEEP_CHUNK    = 1 << 14          # messages per vectorized batch


class PointCorruptionError(ArithmeticError):
    """u (or a witness) vanished at a point of D."""


class BudgetExceededError(RuntimeError):
    """Exhaustive sweep would exceed the codeword budget."""


class MonomialTriple(NamedTuple):
    i: int
    j: int
    k: int


@dataclass(frozen=True)
class LinearCode:
    cp: CurveParams
    spec: DivisorSpec
    gen: galois.FieldArray         # k × n
    k: int
    goppa_lb: int
    dual_spec: DivisorSpec
    points: tuple[AffinePoint, ...] = field(default=(), repr=False, compare=False)
    degenerate: bool = False
    built_from: str = "omega"      # omega | dual-nullspace | zero | full

    @property
    def n(self) -> int:
        return self.cp.n

    @property
    def deg(self) -> int:
        return self.spec.degree(self.cp)

    @property
    def rate(self) -> float:
        return self.k / self.n

    def summary_line(self) -> str:
        return f"{self.n} {self.k} {self.goppa_lb} {self.deg}"


def dual_spec(cp: CurveParams, spec: DivisorSpec) -> DivisorSpec:
    """(−1−v, −1−r, A−s, B−t)."""
    return DivisorSpec(-1 - spec.v, -1 - spec.r, cp.A - spec.s, cp.B - spec.t)


# ───────────────────────────────────────────────────────────────
# 1. Gilbert-Varshamov
# ───────────────────────────────────────────────────────────────
def q_entropy(delta: float, l: int) -> float:
    """H_l(δ) = δ log_l(l−1) − δ log_l δ − (1−δ) log_l(1−δ), with 0·log 0 = 0."""
    if not 0.0 <= delta <= 1.0:
        raise ValueError(f"entropy argument {delta} outside [0, 1]")
    ln_l = np.log(l)
    h = delta * np.log(l - 1) / ln_l
    if 0.0 < delta:
        h -= delta * np.log(delta) / ln_l
    if delta < 1.0:
        h -= (1.0 - delta) * np.log1p(-delta) / ln_l
    return float(h)


def gv_rate(delta: float, l: int) -> float:
    """1 − H_l(δ); 1 at δ <= 0 and 0 from the entropy peak (l−1)/l on."""
    if delta <= 0.0:
        return 1.0
    if delta >= (l - 1) / l:
        return 0.0
    return 1.0 - q_entropy(delta, l)


def gv_in_domain(delta: float, l: int) -> bool:
    return 0.0 < delta < (l - 1) / l


# ───────────────────────────────────────────────────────────────
# 2. Handler
# ───────────────────────────────────────────────────────────────
class CodeHandler(LatticeHandler):
    """Evaluation codes on the points of D, in canonical point order."""

    # ────────── evaluation at D ──────────
    def eval_u(self, pt: AffinePoint) -> int:
        """u = a^(−1) − β^(q^a)/α − β^q/α^(q^a) at one point."""
        GF = self.ctx.GF
        value = self._u_of(GF(pt.alpha), GF(pt.beta))
        if value == 0:
            raise PointCorruptionError(f"u vanishes at {tuple(pt)}")
        return int(value)

    def _u_of(self, alpha, beta):
        cp, ctx = self.cp, self.ctx
        gamma = ctx.GF(cp.gamma)
        return (
            gamma
            - ctx.frobenius_q(beta, cp.a) / alpha
            - beta ** cp.q / ctx.frobenius_q(alpha, cp.a)
        )

    def _u_values(self):
        alpha, beta = self.point_arrays()
        u = self._u_of(alpha, beta)
        zero = np.flatnonzero(u.view(np.ndarray) == 0)
        if zero.size:
            i = int(zero[0])
            raise PointCorruptionError(
                f"u vanishes at point #{i} ({int(alpha[i])}, {int(beta[i])})"
            )
        return u

    @cached_property
    def _point_logs(self) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        alpha, beta = self.point_arrays()
        u = self._u_values()
        return (
            np.asarray(alpha.log(), dtype=np.int64),
            np.asarray(beta.log(), dtype=np.int64),
            np.asarray(u.log(), dtype=np.int64),
        )

    def _logs(self) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        """Discrete logs of α, β, u at the points of D."""
        return self._point_logs

    def _power_rows(self, exps: np.ndarray) -> galois.FieldArray:
        """g^exps for the primitive element g; exponents taken mod |F*|."""
        GF = self.ctx.GF
        exps = np.asarray(exps, dtype=np.int64) % (self.ctx.order - 1)
        base = GF.Ones(exps.shape) * GF.primitive_element
        return base ** exps

    def _rows_xyu(self, triples: np.ndarray) -> galois.FieldArray:
        la, lb, lu = self._logs()
        t = np.asarray(triples, dtype=np.int64).reshape(-1, 3)
        exps = np.outer(t[:, 0], la) + np.outer(t[:, 1], lb) + np.outer(t[:, 2], lu)
        return self._power_rows(exps)

    def eval_row(self, triple: MonomialTriple) -> galois.FieldArray:
        """x^i y^j u^k at every point of D."""
        return self._rows_xyu(np.array([triple]))[0]

    def eval_row_omega(self, triple: MonomialTriple) -> galois.FieldArray:
        """x^i z^j w^k at every point of D, z = y/x^(q^b), w = y^(q^a)/(xu)."""
        cp = self.cp
        la, lb, lu = self._logs()
        lz = lb - cp.q ** cp.b * la
        lw = cp.q ** cp.a * lb - la - lu
        return self._power_rows(triple.i * la + triple.j * lz + triple.k * lw)

    # ────────── generators ──────────
    def generator_from_omega(self, spec: DivisorSpec) -> galois.FieldArray:
        prime = self.omega_prime_transform(self.omega_enumerate(spec))
        if len(prime) == 0:
            return self.ctx.GF.Zeros((0, self.cp.n))
        return self._rows_xyu(prime.points)

    def build_code(self, spec: DivisorSpec) -> LinearCode:
        cp = self.cp
        deg = spec.degree(cp)
        common = dict(
            cp=cp, spec=spec, goppa_lb=cp.n - deg, dual_spec=dual_spec(cp, spec),
            points=tuple(self.enumerate_points()),
        )

        if deg < 0:
            log.info("deg G=%d < 0: zero code", deg)
            return LinearCode(gen=self.ctx.GF.Zeros((0, cp.n)), k=0,
                              degenerate=True, built_from="zero", **common)
        if deg > cp.R:
            log.info("deg G=%d > R=%d: full code", deg, cp.R)
            return LinearCode(gen=self.ctx.GF.Identity(cp.n), k=cp.n,
                              degenerate=True, built_from="full", **common)

        if deg < cp.n:
            gen, source = self.generator_from_omega(spec), "omega"
        else:
            gen, source = null_space(self.generator_from_omega(common["dual_spec"])), "dual-nullspace"
        k = rank(gen)
        log.info("C%s: [%d, %d] from %s", spec.as_tuple(), cp.n, k, source)
        return LinearCode(gen=gen, k=k, built_from=source, **common)

    def dimension(self, spec: DivisorSpec) -> int:
        """dim C_{v,r,s,t} from lattice counts, no matrix built."""
        cp = self.cp
        deg = spec.degree(cp)
        if deg < 0:
            return 0
        if deg > cp.R:
            return cp.n
        if deg < cp.n:
            return self.omega_count(spec)
        return cp.n - self.omega_count(dual_spec(cp, spec))

    def dual_spec(self, spec: DivisorSpec) -> DivisorSpec:
        return dual_spec(self.cp, spec)

    def is_self_orthogonal(self, code: LinearCode) -> bool:
        prod = mul_transpose(code.gen, code.gen)
        return not np.any(prod.view(np.ndarray))

    # ────────── equivalence ──────────
    def equivalence_witness(self, spec: DivisorSpec) -> galois.FieldArray:
        """
        Multiplier vector carrying G(spec) onto G(reduced spec).

        The reduced divisor is G + Div(f) with
        f = x^((q^c−1)λ−r) z^(q^aλ−σ) w^(−λ); the returned vector is f^(−1)
        evaluated at D.
        """
        cp = self.cp
        red = self.omega_reduce(spec)
        witness = self.eval_row_omega(MonomialTriple(
            spec.r - cp.units * red.lam,
            red.sigma - cp.q ** cp.a * red.lam,
            red.lam,
        ))
        if np.any(witness.view(np.ndarray) == 0):
            raise PointCorruptionError(f"equivalence witness vanishes for {spec.as_tuple()}")
        return witness

    # ────────── minimum distance ──────────
    def min_distance_bruteforce(self, code: LinearCode, budget: int = DEFAULT_BUDGET) -> int:
        """Exact minimum weight; messages swept up to scalar multiples."""
        if code.k == 0:
            raise ValueError("the zero code has no nonzero codeword")
        order = self.ctx.order
        if order ** code.k > budget:
            raise BudgetExceededError(
                f"{order}^{code.k} codewords exceed the budget {budget}"
            )

        G = rref(code.gen)
        GF = self.ctx.GF
        best = code.n
        for lead in range(G.shape[0]):
            head, tail = G[lead], G[lead + 1:]
            free = tail.shape[0]
            total = order ** free
            for start in range(0, total, SWEEP_CHUNK):
                idx = np.arange(start, min(start + SWEEP_CHUNK, total), dtype=np.int64)
                if free:
                    digits = (idx[:, None] // order ** np.arange(free, dtype=np.int64)) % order
                    words = GF(digits) @ tail + head
                else:
                    words = head[None, :]
                weight = int(np.count_nonzero(words.view(np.ndarray), axis=1).min())
                best = min(best, weight)
        log.debug("d(C%s) = %d", code.spec.as_tuple(), best)
        return best

    # ────────── GV comparison ──────────
    def gv_compare(self, specs: Iterable[DivisorSpec]) -> pd.DataFrame:
        cp, l = self.cp, self.ctx.order
        rows = []
        for spec in specs:
            deg = spec.degree(cp)
            k = self.dimension(spec)
            goppa_lb = cp.n - deg
            delta = goppa_lb / cp.n
            rate = k / cp.n
            in_domain = gv_in_domain(delta, l)
            gv = gv_rate(delta, l)
            rows.append({
                "degG": deg,
                "k": k,
                "goppa_lb": goppa_lb,
                "delta": delta,
                "rate": rate,
                "gv_rate": gv,
                "beats_gv": bool(in_domain and rate > gv),
            })
        df = pd.DataFrame(rows, columns=["degG", "k", "goppa_lb", "delta", "rate", "gv_rate", "beats_gv"])
        outside = sum(not gv_in_domain(d, l) for d in df["delta"])
        if outside:
            log.warning("%d row(s) with delta outside (0, %d/%d); gv_rate set by convention", outside, l - 1, l)
        return df

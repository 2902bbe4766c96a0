# handler/lattice_handler.py
"""
LatticeHandler
──────────────
Lattice point sets behind the Riemann-Roch bases of
L(vP_1 + rP_0 + sQ + tV):

  Ω   triples (i, j, k) for the monomials x^i z^j w^k
  Ω′  their image (i - q^b j - k, j + q^a k, -k) for x^i y^j u^k

plus the canonical (v, r, s, t) reduction, the closed-form counts and
the brute-force oracles (segments, Ψ_m, Φ_t, Pick's theorem) they are
checked against.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Iterable, Literal, Sequence

import numpy as np
import pandas as pd

from handler.curve_handler import CurveHandler, CurveParams

log = logging.getLogger(__name__)

Variant = Literal["Omega", "OmegaPrime"]


class ThresholdError(ValueError):
    """Closed-form count requested below the proven threshold v0."""


class EnumerationBoundError(RuntimeError):
    """A lattice point showed up beyond the enumeration bound."""


# ───────────────────────────────────────────────────────────────
# 1. Value types
# ───────────────────────────────────────────────────────────────
@dataclass(frozen=True)
class DivisorSpec:
    """G = v P_1 + r P_0 + s Q + t V."""

    v: int
    r: int
    s: int
    t: int

    def degree(self, cp: CurveParams) -> int:
        return self.v + cp.degP0 * self.r + cp.degQ * self.s + cp.degV * self.t

    def as_tuple(self) -> tuple[int, int, int, int]:
        return (self.v, self.r, self.s, self.t)

    def is_canonical(self, cp: CurveParams) -> bool:
        return self.r == 0 and 0 <= self.s < cp.units and 0 <= self.t < cp.N(cp.c)

    def __str__(self) -> str:
        return f"{self.v} {self.r} {self.s} {self.t}"


@dataclass(frozen=True)
class Reduction:
    spec_hat: DivisorSpec
    lam: int
    sigma: int
    t_prime: int


@dataclass(frozen=True)
class OmegaSet:
    variant: Variant
    spec: DivisorSpec
    points: np.ndarray            # shape (N, 3), int64, increasing i for Omega

    def __len__(self) -> int:
        return int(self.points.shape[0])

    def triples(self) -> list[tuple[int, int, int]]:
        return [tuple(int(x) for x in row) for row in self.points]

    def frame(self) -> pd.DataFrame:
        return pd.DataFrame(self.points, columns=["i", "j", "k"])


@dataclass(frozen=True)
class LatticePolygon:
    vertices: tuple[tuple[int, int], ...]


@dataclass(frozen=True)
class PickCount:
    area2: int
    boundary: int
    interior: int


def _triples(rows: Iterable[Sequence[int]]) -> np.ndarray:
    arr = np.asarray(list(rows), dtype=np.int64)
    return arr.reshape(-1, 3)


def _ceil_div(num, den: int):
    return -((-num) // den)


# ───────────────────────────────────────────────────────────────
# 2. Pick's theorem
# ───────────────────────────────────────────────────────────────
def pick_count(poly: LatticePolygon) -> PickCount:
    """Shoelace twice-area, gcd boundary count, interior from S = I + M/2 - 1."""
    pts = np.asarray(poly.vertices, dtype=np.int64)
    if pts.ndim != 2 or pts.shape[0] < 3:
        raise ValueError("degenerate polygon: fewer than three vertices")
    nxt = np.roll(pts, -1, axis=0)
    area2 = abs(int(np.sum(pts[:, 0] * nxt[:, 1] - nxt[:, 0] * pts[:, 1])))
    if area2 == 0:
        raise ValueError("degenerate polygon: zero area")
    d = np.abs(nxt - pts)
    boundary = int(np.sum(np.gcd(d[:, 0], d[:, 1])))
    return PickCount(area2=area2, boundary=boundary, interior=(area2 - boundary + 2) // 2)


def pick_bruteforce(poly: LatticePolygon) -> tuple[int, int]:
    """(boundary, interior) lattice point counts by scanning the bounding box."""
    pts = np.asarray(poly.vertices, dtype=np.int64)
    xs, ys = np.meshgrid(
        np.arange(pts[:, 0].min(), pts[:, 0].max() + 1),
        np.arange(pts[:, 1].min(), pts[:, 1].max() + 1),
        indexing="ij",
    )
    X, Y = xs.ravel(), ys.ravel()
    on_edge = np.zeros(X.shape, dtype=bool)
    inside  = np.zeros(X.shape, dtype=bool)

    for (x1, y1), (x2, y2) in zip(pts, np.roll(pts, -1, axis=0)):
        cross = (x2 - x1) * (Y - y1) - (y2 - y1) * (X - x1)
        within = (
            (min(x1, x2) <= X) & (X <= max(x1, x2))
            & (min(y1, y2) <= Y) & (Y <= max(y1, y2))
        )
        on_edge |= (cross == 0) & within

        # crossing number, exact: X < x1 + (x2-x1)(Y-y1)/(y2-y1)
        straddles = (y1 > Y) != (y2 > Y)
        lhs = (X - x1) * (y2 - y1)
        rhs = (x2 - x1) * (Y - y1)
        hit = (lhs < rhs) if y2 > y1 else (lhs > rhs)
        inside ^= straddles & hit

    return int(on_edge.sum()), int((inside & ~on_edge).sum())


def convex_lattice_polygon(points: Sequence[Sequence[int]]) -> LatticePolygon:
    """Strictly convex hull of lattice points (monotone chain)."""

    def cross(o, a, b):
        return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])

    pts = sorted({(int(x), int(y)) for x, y in points})
    if len(pts) < 3:
        return LatticePolygon(tuple(pts))

    lower: list[tuple[int, int]] = []
    for p in pts:
        while len(lower) >= 2 and cross(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    upper: list[tuple[int, int]] = []
    for p in reversed(pts):
        while len(upper) >= 2 and cross(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    return LatticePolygon(tuple(lower[:-1] + upper[:-1]))


def star_lattice_polygon(points: Sequence[Sequence[int]]) -> LatticePolygon | None:
    """
    Simple (usually non-convex) polygon: the points sorted by angle
    around their centroid, one point per ray.  None when the centroid
    would not see every edge, i.e. some angular gap is >= π.
    """
    pts = np.unique(np.asarray(points, dtype=np.int64).reshape(-1, 2), axis=0)
    if len(pts) < 3:
        return None
    # directions from the centroid scaled by len(pts) stay integral
    d = len(pts) * pts - pts.sum(axis=0)
    keep = np.any(d != 0, axis=1)
    pts, d = pts[keep], d[keep]
    g = np.gcd(d[:, 0], d[:, 1])[:, None]
    _, first = np.unique(d // g, axis=0, return_index=True)
    pts, d = pts[first], d[first]
    if len(pts) < 3:
        return None

    angle = np.arctan2(d[:, 1], d[:, 0])
    order = np.argsort(angle)
    gaps = np.diff(np.append(angle[order], angle[order][0] + 2 * np.pi))
    if gaps.max() >= np.pi:
        return None
    return LatticePolygon(tuple((int(x), int(y)) for x, y in pts[order]))


# ───────────────────────────────────────────────────────────────
# 3. Handler
# ───────────────────────────────────────────────────────────────
class LatticeHandler(CurveHandler):
    """Ω / Ω′ enumeration, reduction and counting lemmas for one curve."""

    # ────────── coefficients of the four inequalities ──────────
    @property
    def _coef(self) -> tuple[int, int, int]:
        cp = self.cp
        Nb, Nc = cp.N(cp.b), cp.N(cp.c)
        return cp.degP * Nb, cp.degQ * Nc, cp.degP0 * Nc

    def i_max(self, spec: DivisorSpec) -> int:
        """Upper bound on i for Ω (the V-inequality decays like -i/(q-1))."""
        cp = self.cp
        return (
            (cp.q - 1) * spec.t
            + cp.degQ * abs(spec.s)
            + cp.degP0 * (abs(spec.r) + cp.qc)
            + cp.qc
        )

    def _forced(self, spec: DivisorSpec, i: np.ndarray):
        """j, k forced by the P_0 and Q inequalities, and the V test."""
        cp = self.cp
        cA, cB, cC = self._coef
        j = _ceil_div(cp.q ** cp.a * i - spec.s, cp.units)
        k = _ceil_div(-i - spec.r, cp.units)
        ok = cA * i - cB * j - cC * k + spec.t >= 0
        return j, k, ok

    def in_omega(self, spec: DivisorSpec, pts: np.ndarray) -> np.ndarray:
        """Membership mask for the four defining inequalities of Ω."""
        cp = self.cp
        cA, cB, cC = self._coef
        i, j, k = pts[:, 0], pts[:, 1], pts[:, 2]
        P0 = i + cp.units * k
        Qv = -(cp.q ** cp.a) * i + cp.units * j
        return (
            (i >= -spec.v)
            & (P0 >= -spec.r) & (P0 < -spec.r + cp.units)
            & (Qv >= -spec.s) & (Qv < cp.units - spec.s)
            & (cA * i - cB * j - cC * k >= -spec.t)
        )

    def in_omega_prime(self, spec: DivisorSpec, pts: np.ndarray) -> np.ndarray:
        """Membership mask for the Ω′ inequalities."""
        cp = self.cp
        i, j, k = pts[:, 0], pts[:, 1], pts[:, 2]
        head = i + cp.q ** cp.b * j
        Qv = -(cp.q ** cp.a) * i - j
        Vv = cp.degP * cp.N(cp.b) * i - cp.degQ * cp.N(cp.a) * j - cp.N(cp.c) * k
        return (
            (head + cp.units * k >= -spec.v)
            & (head >= -spec.r) & (head < -spec.r + cp.units)
            & (Qv >= -spec.s) & (Qv < -spec.s + cp.units)
            & (Vv >= -spec.t)
        )

    # ────────── enumeration ──────────
    def omega_enumerate(self, spec: DivisorSpec) -> OmegaSet:
        top = self.i_max(spec)
        i = np.arange(-spec.v, top + 1, dtype=np.int64)
        j, k, ok = self._forced(spec, i)

        guard = np.arange(max(top + 1, -spec.v), top + self.cp.qc + 1, dtype=np.int64)
        if self._forced(spec, guard)[2].any():
            raise EnumerationBoundError(f"Ω{spec.as_tuple()} has points beyond i_max={top}")

        pts = np.column_stack((i[ok], j[ok], k[ok])).astype(np.int64).reshape(-1, 3)
        log.debug("Ω%s: %d points, i in [%d, %d]", spec.as_tuple(), len(pts), -spec.v, top)
        return OmegaSet("Omega", spec, pts)

    def omega_bruteforce(self, spec: DivisorSpec) -> OmegaSet:
        """Oracle: every i in range against a (j, k) box, no ceiling shortcuts."""
        cp = self.cp
        lo, hi = -spec.v, self.i_max(spec)
        if hi < lo:
            return OmegaSet("Omega", spec, _triples([]))
        q_a = cp.q ** cp.a
        js = np.arange(
            _ceil_div(q_a * lo - spec.s, cp.units) - 1,
            _ceil_div(q_a * hi - spec.s, cp.units) + 2,
        )
        ks = np.arange(
            _ceil_div(-hi - spec.r, cp.units) - 1,
            _ceil_div(-lo - spec.r, cp.units) + 2,
        )
        jj, kk = np.meshgrid(js, ks, indexing="ij")
        jj, kk = jj.ravel(), kk.ravel()

        found = []
        for i in range(lo, hi + 1):
            box = np.column_stack((np.full(jj.shape, i), jj, kk))
            found.append(box[self.in_omega(spec, box)])
        pts = np.concatenate(found).astype(np.int64) if found else _triples([])
        return OmegaSet("Omega", spec, pts.reshape(-1, 3))

    # ────────── Ω ↔ Ω′ ──────────
    def omega_prime_transform(self, os: OmegaSet) -> OmegaSet:
        if os.variant != "Omega":
            raise ValueError(f"expected an Omega set, got {os.variant}")
        cp = self.cp
        i, j, k = os.points[:, 0], os.points[:, 1], os.points[:, 2]
        pts = np.column_stack((i - cp.q ** cp.b * j - k, j + cp.q ** cp.a * k, -k))
        return OmegaSet("OmegaPrime", os.spec, pts.astype(np.int64).reshape(-1, 3))

    def omega_prime_inverse(self, os: OmegaSet) -> OmegaSet:
        if os.variant != "OmegaPrime":
            raise ValueError(f"expected an OmegaPrime set, got {os.variant}")
        cp = self.cp
        i, j, k = os.points[:, 0], os.points[:, 1], os.points[:, 2]
        pts = np.column_stack((i + cp.q ** cp.b * j + cp.units * k, j + cp.q ** cp.a * k, -k))
        return OmegaSet("Omega", os.spec, pts.astype(np.int64).reshape(-1, 3))

    # ────────── reduction and counting ──────────
    def omega_reduce(self, spec: DivisorSpec) -> Reduction:
        """Canonical representative v̂P_1 + ŝQ + t̂V of the divisor class."""
        cp = self.cp
        cA, cB, _ = self._coef
        sigma, s_hat = divmod(spec.s + cp.q ** cp.a * spec.r, cp.units)
        t_prime = spec.t - spec.r * cA + sigma * cB
        lam, t_hat = divmod(t_prime, cp.N(cp.c))
        v_hat = spec.v + cp.units * lam - spec.r
        return Reduction(DivisorSpec(v_hat, 0, s_hat, t_hat), lam, sigma, t_prime)

    def omega_count_formula(self, spec: DivisorSpec) -> int:
        red = self.omega_reduce(spec)
        if red.spec_hat.v < self.cp.v0:
            raise ThresholdError(
                f"reduced v={red.spec_hat.v} is below v0={self.cp.v0}; enumerate instead"
            )
        return 1 - self.cp.g + spec.degree(self.cp)

    def omega_count(self, spec: DivisorSpec) -> int:
        try:
            return self.omega_count_formula(spec)
        except ThresholdError:
            return len(self.omega_enumerate(spec))

    # ────────── lemma oracles ──────────
    def segment_counts(self, kind: str, alpha: int) -> int:
        if kind == "L1":
            return self.cp.q - 1 if alpha % self.cp.degQ == 0 else 0
        if kind in ("L2", "L3"):
            return 1
        raise ValueError(f"unknown segment kind {kind!r}")

    def segment_bruteforce(self, kind: str, alpha: int) -> int:
        cp = self.cp
        cA, cB, _ = self._coef
        if kind == "L1":
            i = np.arange(cp.units)
            return int(np.count_nonzero((cA * i + alpha) % cB == 0))
        if kind == "L2":
            i = np.arange(cp.units)
            rhs = cp.q ** cp.a * i - cp.units * cp.q - alpha
            return int(np.count_nonzero(rhs % cp.units == 0))
        if kind == "L3":
            m = np.arange(cp.degQ)
            return int(np.count_nonzero((alpha + cp.N(cp.c) * m) % cp.degQ == 0))
        raise ValueError(f"unknown segment kind {kind!r}")

    def _check_psi_args(self, m: int, s: int, t: int) -> None:
        if not 0 <= m < self.cp.degQ:
            raise ValueError(f"m={m} outside [0, {self.cp.degQ})")
        if s < 0 or t < 0:
            raise ValueError(f"Ψ_m needs s, t >= 0, got s={s}, t={t}")

    def psi_count(self, m: int, s: int, t: int) -> int:
        self._check_psi_args(m, s, t)
        cp = self.cp
        return (
            (cp.qc + 1) * cp.q // 2
            + ((t + cp.N(cp.c) * m) // cp.degQ) * (cp.q - 1)
            + s
        )

    def psi_bruteforce(self, m: int, s: int, t: int) -> int:
        self._check_psi_args(m, s, t)
        cp = self.cp
        cA, cB, _ = self._coef
        i, j = np.meshgrid(
            np.arange(cp.units),
            np.arange(-s - cp.q - 1, cp.q ** (cp.b + 1) + t + 3),
            indexing="ij",
        )
        keep = (
            (cA * i - cB * j + cp.N(cp.c) * m >= -t)
            & (-(cp.q ** cp.a) * i + cp.units * j >= -s - cp.units * cp.q)
        )
        return int(np.count_nonzero(keep))

    def psi_total(self, s: int, t: int) -> int:
        """Closed form of the sum of #Ψ_m over 0 <= m < q^(b-1)."""
        cp = self.cp
        head = cp.q ** (cp.c + cp.b - 1) + cp.q ** (cp.c + cp.b) - cp.qc + cp.q
        return head // 2 + cp.degQ * s + (cp.q - 1) * t

    def phi_sum(self, t: int) -> int:
        """Σ_m ⌊(t + N_c m)/q^(b-1)⌋ over 0 <= m < q^(b-1)."""
        cp = self.cp
        m = np.arange(cp.degQ, dtype=np.int64)
        return int(np.sum((t + cp.N(cp.c) * m) // cp.degQ))

    def phi_count(self, t: int) -> int:
        """#Φ_t by scanning l for every m."""
        cp = self.cp
        total = 0
        for m in range(cp.degQ):
            top = t + cp.N(cp.c) * m
            l = np.arange(1, top // cp.degQ + 2)
            total += int(np.count_nonzero(cp.degQ * l <= top))
        return total

    def phi_closed_form(self, t: int) -> int:
        cp = self.cp
        return (cp.N(cp.c) - 1) * (cp.degQ - 1) // 2 + t

    def psi_triangle(self) -> LatticePolygon:
        """Triangle OAB whose lattice points make up Ψ^(0) plus the vertex B."""
        cp = self.cp
        return LatticePolygon(((0, 0), (0, -cp.q), (cp.units, cp.q ** (cp.b + 1) - cp.q)))

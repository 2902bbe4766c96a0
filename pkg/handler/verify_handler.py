# handler/verify_handler.py
"""
VerifyHandler
─────────────
The invariant battery behind ``verify``: every closed form is compared
with an independent enumeration, every code identity with an explicit
matrix computation.  Each section reports (checks, failures); a section
that raises is reported as failed with the exception logged.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Callable

import numpy as np
import pandas as pd

from handler.code_handler import (
    BudgetExceededError,
    CodeHandler,
    MonomialTriple,
    gv_in_domain,
)
from handler.lattice_handler import (
    DivisorSpec,
    LatticePolygon,
    convex_lattice_polygon,
    pick_bruteforce,
    pick_count,
    star_lattice_polygon,
)
from handler.linalg_handler import mul_transpose, rank, row_space_equal

log = logging.getLogger(__name__)

# ───────── constants ─────────
FLAGSHIP = ((2, 5), DivisorSpec(324, 0, 0, 0))
FLAGSHIP_GAP = 0.03
EXHAUSTIVE_FIELD = 1 << 10


@dataclass(frozen=True)
class BatterySizes:
    oracle_specs: int = 100
    counting_specs: int = 200
    reduction_specs: int = 200
    psi_max: int = 40
    segment_alpha: int = 200
    pick_polygons: int = 100
    dimension_low: int = 50
    dimension_high: int = 20
    duality_pairs: int = 50
    basis_specs: int = 20
    equivalence_specs: int = 50
    min_distance_budget: int = 600_000
    min_distance_samples: int = 10
    min_distance_exhaustive: bool = True

    @classmethod
    def quick(cls) -> "BatterySizes":
        return cls(
            oracle_specs=10, counting_specs=10, reduction_specs=10, psi_max=4,
            segment_alpha=20, pick_polygons=10, dimension_low=3, dimension_high=2,
            duality_pairs=3, basis_specs=2, equivalence_specs=3,
            min_distance_budget=1_000, min_distance_samples=1,
            min_distance_exhaustive=False,
        )


class VerifyHandler(CodeHandler):
    """Randomized but seeded acceptance battery for one curve."""

    def __init__(self, q: int, c: int, seed: int = 0, sizes: BatterySizes | None = None):
        super().__init__(q, c)
        self.seed  = seed
        self.sizes = sizes or BatterySizes()
        self.rng   = np.random.default_rng(seed)

    # ────────── spec samplers ──────────
    def _random_spec(self, bound: int) -> DivisorSpec:
        v, r, s, t = (int(x) for x in self.rng.integers(-bound, bound + 1, size=4))
        return DivisorSpec(v, r, s, t)

    def _spec_with_degree(self, deg: int, r: int, s: int, t: int) -> DivisorSpec:
        cp = self.cp
        v = deg - cp.degP0 * r - cp.degQ * s - cp.degV * t
        return DivisorSpec(v, r, s, t)

    def _random_spec_in(self, lo: int, hi: int, *, r_bound: int = 3) -> DivisorSpec:
        """Spec with degree drawn from [lo, hi]."""
        cp = self.cp
        r = int(self.rng.integers(-r_bound, r_bound + 1))
        s = int(self.rng.integers(-cp.units, 2 * cp.units))
        t = int(self.rng.integers(-cp.N(cp.c), 2 * cp.N(cp.c)))
        deg = int(self.rng.integers(lo, hi + 1))
        return self._spec_with_degree(deg, r, s, t)

    # ────────── sections ──────────
    def check_field(self) -> tuple[int, int]:
        ctx = self.ctx
        elems = ctx.elements() if ctx.order <= EXHAUSTIVE_FIELD else ctx.elements()[:EXHAUSTIVE_FIELD]
        units = elems[elems != 0]
        checks = failures = 0

        def expect(ok) -> None:
            nonlocal checks, failures
            checks += 1
            failures += int(not bool(ok))

        x, y = elems[:, None], elems[None, :]
        expect(np.array_equal(x * y, y * x))
        expect(np.array_equal(x * (y + y), x * y + x * y))
        expect(np.all(units * np.reciprocal(units) == 1))
        expect(np.all(units ** (ctx.order - 1) == 1))
        expect(np.array_equal(ctx.frobenius_q(elems, ctx.c), elems))
        tr = ctx.tr_partial(elems, ctx.c)
        expect(np.array_equal(ctx.frobenius_q(tr, 1), tr))
        expect(len(ctx.subfield_q()) == ctx.q)
        return checks, failures

    def check_curve(self) -> tuple[int, int]:
        cp = self.cp
        alpha, beta = self.point_arrays()
        counts = self.per_alpha_counts()
        results = [
            len(alpha) == cp.n,
            bool((counts == cp.q ** (cp.c - 1)).all()),
            bool(np.all(self._h(alpha, beta) == 1)),
            self.special_places().V_rational_count == self.v_mu_solutions(),
            bool(np.all(self._u_values() != 0)),
        ]
        return len(results), results.count(False)

    def check_lattice_enumeration(self) -> tuple[int, int]:
        checks = failures = 0
        for _ in range(self.sizes.oracle_specs):
            spec = self._random_spec(12)
            fast = self.omega_enumerate(spec)
            slow = self.omega_bruteforce(spec)
            prime = self.omega_prime_transform(fast)
            ok = (
                np.array_equal(fast.points, slow.points)
                and len(np.unique(fast.points[:, 0])) == len(fast)
                and bool(self.in_omega_prime(spec, prime.points).all())
                and np.array_equal(self.omega_prime_inverse(prime).points, fast.points)
            )
            checks += 1
            if not ok:
                failures += 1
                log.error("Ω oracle mismatch for %s", spec.as_tuple())
        return checks, failures

    def check_counting_theorem(self) -> tuple[int, int]:
        cp = self.cp
        checks = failures = 0
        for _ in range(self.sizes.counting_specs):
            r = int(self.rng.integers(-4, 5))
            s = int(self.rng.integers(-cp.units, 2 * cp.units))
            t = int(self.rng.integers(-cp.N(cp.c), 2 * cp.N(cp.c)))
            base = self.omega_reduce(DivisorSpec(0, r, s, t)).spec_hat.v
            v = cp.v0 - base + int(self.rng.integers(0, 2 * cp.units))
            spec = DivisorSpec(v, r, s, t)
            checks += 1
            if len(self.omega_enumerate(spec)) != self.omega_count_formula(spec):
                failures += 1
                log.error("counting theorem fails for %s", spec.as_tuple())
        return checks, failures

    def check_reduction(self) -> tuple[int, int]:
        cp = self.cp
        checks = failures = 0
        for _ in range(self.sizes.reduction_specs):
            spec = self._random_spec(40)
            red = self.omega_reduce(spec)
            hat = red.spec_hat
            ok = (
                hat.is_canonical(cp)
                and hat.degree(cp) == spec.degree(cp)
                and len(self.omega_enumerate(spec)) == len(self.omega_enumerate(hat))
            )
            checks += 1
            if not ok:
                failures += 1
                log.error("reduction mismatch for %s -> %s", spec.as_tuple(), hat.as_tuple())
        return checks, failures

    def check_lemma_oracles(self) -> tuple[int, int]:
        cp, sz = self.cp, self.sizes
        results: list[bool] = []
        for m in range(cp.degQ):
            for s in range(sz.psi_max + 1):
                for t in range(sz.psi_max + 1):
                    results.append(self.psi_count(m, s, t) == self.psi_bruteforce(m, s, t))
        for s in range(0, sz.psi_max + 1, 8):
            for t in range(0, sz.psi_max + 1, 8):
                total = sum(self.psi_count(m, s, t) for m in range(cp.degQ))
                results.append(total == self.psi_total(s, t))
        for kind in ("L1", "L2", "L3"):
            for alpha in range(-sz.segment_alpha, sz.segment_alpha + 1):
                results.append(self.segment_counts(kind, alpha) == self.segment_bruteforce(kind, alpha))
        for t in range(cp.N(cp.c)):
            closed = self.phi_closed_form(t)
            results.append(self.phi_sum(t) == closed == self.phi_count(t))
        return len(results), results.count(False)

    def check_pick(self) -> tuple[int, int]:
        results: list[bool] = []
        polys = [self.psi_triangle(), LatticePolygon(((0, 0), (4, 0), (4, 1), (1, 1), (1, 3), (0, 3)))]
        while len(polys) < self.sizes.pick_polygons + 2:
            pts = self.rng.integers(-12, 13, size=(int(self.rng.integers(3, 12)), 2))
            if len(polys) % 2:
                poly = convex_lattice_polygon(pts)
            else:
                poly = star_lattice_polygon(pts)
            if poly is not None and len(poly.vertices) >= 3:
                polys.append(poly)
        for poly in polys:
            pc = pick_count(poly)
            boundary, interior = pick_bruteforce(poly)
            results.append(pc.boundary == boundary and pc.interior == interior)
        tri = pick_count(self.psi_triangle())
        results.append(tri.area2 == self.q * self.cp.units and tri.boundary == 2 * self.q)
        return len(results), results.count(False)

    def check_dimension(self) -> tuple[int, int]:
        cp, sz = self.cp, self.sizes
        results: list[bool] = []
        for _ in range(sz.dimension_low):
            spec = self._random_spec_in(0, cp.n - 1)
            code = self.build_code(spec)
            results.append(code.k == len(self.omega_enumerate(spec)) == self.dimension(spec))
        for _ in range(sz.dimension_high):
            spec = self._random_spec_in(cp.n, cp.R)
            code = self.build_code(spec)
            dual_count = len(self.omega_enumerate(self.dual_spec(spec)))
            results.append(code.k == cp.n - dual_count == self.dimension(spec))
        v = int(self.rng.integers(0, cp.v0))
        ks = [self.dimension(DivisorSpec(v + dv, 0, 0, 0)) for dv in range(0, 3 * cp.units, 7)]
        results.append(all(a <= b for a, b in zip(ks, ks[1:])))
        return len(results), results.count(False)

    def check_duality(self) -> tuple[int, int]:
        cp = self.cp
        results: list[bool] = []
        for _ in range(self.sizes.duality_pairs):
            spec = self._random_spec_in(0, cp.R)
            dual = self.dual_spec(spec)
            G, H = self.build_code(spec), self.build_code(dual)
            prod = mul_transpose(G.gen, H.gen)
            results.append(
                not np.any(prod.view(np.ndarray))
                and rank(G.gen) + rank(H.gen) == cp.n
                and self.dual_spec(dual) == spec
            )
        return len(results), results.count(False)

    def check_basis_change(self) -> tuple[int, int]:
        results: list[bool] = []
        for _ in range(self.sizes.basis_specs):
            spec = self._random_spec_in(0, self.cp.n - 1)
            omega = self.omega_enumerate(spec)
            gen = self.generator_from_omega(spec)
            for row, (i, j, k) in zip(gen, omega.triples()):
                results.append(np.array_equal(row, self.eval_row_omega(MonomialTriple(i, j, k))))
        return len(results), results.count(False)

    def check_equivalence(self) -> tuple[int, int]:
        cp = self.cp
        results: list[bool] = []
        while len(results) < self.sizes.equivalence_specs:
            spec = self._random_spec_in(0, cp.n - 1)
            if spec.is_canonical(cp):
                continue
            hat = self.omega_reduce(spec).spec_hat
            witness = self.equivalence_witness(spec)
            G = self.generator_from_omega(spec)
            results.append(row_space_equal(G * witness, self.generator_from_omega(hat)))
        return len(results), results.count(False)

    def _max_sweep_dimension(self) -> int:
        k, order = 0, self.ctx.order
        while order ** (k + 1) <= self.sizes.min_distance_budget:
            k += 1
        return k

    def _canonical_ladder(self, s: int, t: int, max_k: int) -> list[DivisorSpec]:
        """Every v of the class (0, s, t) with 0 <= deg G < n and 1 <= k <= max_k."""
        cp = self.cp
        specs = []
        spec = DivisorSpec(-cp.degQ * s - cp.degV * t, 0, s, t)      # deg G = 0
        while spec.degree(cp) < cp.n:
            k = self.dimension(spec)
            if k > max_k:
                break
            if k >= 1:
                specs.append(spec)
            spec = DivisorSpec(spec.v + 1, 0, s, t)
        return specs

    def _min_distance_specs(self) -> list[DivisorSpec]:
        """
        Canonical codes small enough for an exhaustive sweep.

        Any spec reduces to a canonical one with the same degree and a
        diagonally equivalent code, so the exhaustive mode walks every
        class 0 <= s < q^c-1, 0 <= t < N_c; otherwise (0, 0) plus a
        seeded sample of classes.
        """
        cp = self.cp
        max_k = self._max_sweep_dimension()
        if self.sizes.min_distance_exhaustive:
            classes = [(s, t) for s in range(cp.units) for t in range(cp.N(cp.c))]
        else:
            classes = [(0, 0)] + [
                (int(self.rng.integers(0, cp.units)), int(self.rng.integers(0, cp.N(cp.c))))
                for _ in range(self.sizes.min_distance_samples)
            ]
        specs: list[DivisorSpec] = []
        for s, t in classes:
            specs.extend(self._canonical_ladder(s, t, max_k))
        log.info("min-distance: %d canonical specs with k <= %d", len(specs), max_k)
        return specs

    def check_min_distance(self) -> tuple[int, int]:
        results: list[bool] = []
        for spec in self._min_distance_specs():
            code = self.build_code(spec)
            if code.k == 0:
                continue
            try:
                d = self.min_distance_bruteforce(code, budget=self.sizes.min_distance_budget)
            except BudgetExceededError as exc:
                log.warning("%s", exc)
                continue
            ok = code.goppa_lb <= d <= code.n
            if spec == DivisorSpec(0, 0, 0, 0):
                ok = ok and d == code.n
            results.append(ok)
        return len(results), results.count(False)

    def check_gv(self) -> tuple[int, int]:
        cp, l = self.cp, self.ctx.order
        specs = [DivisorSpec(v, 0, 0, 0) for v in range(0, cp.R + 2, max(1, cp.R // 50))]
        table = self.gv_compare(specs)
        results = [
            bool(table["gv_rate"].between(0, 1).all()),
            not any(row.beats_gv and not gv_in_domain(row.delta, l) for row in table.itertuples()),
        ]
        if (self.q, self.c) == FLAGSHIP[0]:
            row = self.gv_compare([FLAGSHIP[1]]).iloc[0]
            results.append(bool(row["beats_gv"]) and row["rate"] - row["gv_rate"] > FLAGSHIP_GAP)
        return len(results), results.count(False)

    # ────────── driver ──────────
    def sections(self) -> list[tuple[str, Callable[[], tuple[int, int]]]]:
        return [
            ("field", self.check_field),
            ("curve", self.check_curve),
            ("lattice-enumeration", self.check_lattice_enumeration),
            ("counting-theorem", self.check_counting_theorem),
            ("reduction", self.check_reduction),
            ("lemma-oracles", self.check_lemma_oracles),
            ("pick", self.check_pick),
            ("dimension", self.check_dimension),
            ("duality", self.check_duality),
            ("basis-change", self.check_basis_change),
            ("equivalence", self.check_equivalence),
            ("min-distance", self.check_min_distance),
            ("gv", self.check_gv),
        ]

    def run_all(self) -> pd.DataFrame:
        rows = []
        for name, check in self.sections():
            try:
                checks, failures = check()
            except Exception:
                log.exception("section %s raised", name)
                checks, failures = 1, 1
            status = "PASS" if failures == 0 else "FAIL"
            log.info("%s: %d checks, %d failures", name, checks, failures)
            rows.append({"section": name, "checks": checks, "failures": failures, "status": status})
        return pd.DataFrame(rows, columns=["section", "checks", "failures", "status"])

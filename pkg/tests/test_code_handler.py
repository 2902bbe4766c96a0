import unittest

import numpy as np

from handler.code_handler import (
    BudgetExceededError,
    CodeHandler,
    MonomialTriple,
    PointCorruptionError,
    dual_spec,
    gv_rate,
    q_entropy,
)
from handler.curve_handler import AffinePoint, get_curve
from handler.lattice_handler import DivisorSpec
from handler.linalg_handler import mul_transpose, rank, row_space_equal


def is_zero(mat) -> bool:
    return not np.any(mat.view(np.ndarray))


class TestEvaluation(unittest.TestCase):

    @classmethod
    def setUpClass(cls):
        cls.gf27 = CodeHandler(3, 3)
        cls.gf32 = CodeHandler(2, 5)

    def test_u_never_vanishes_on_d(self):
        for handler in (self.gf27, self.gf32):
            u = handler._u_values()
            self.assertEqual(len(u), handler.cp.n)
            self.assertTrue(np.all(u.view(np.ndarray) != 0))
            pt = handler.enumerate_points()[0]
            self.assertEqual(handler.eval_u(pt), int(u[0]))

    def test_u_zero_off_curve(self):
        # gamma = 2 and 2 - 1 - 1 = 0 in GF(27)
        with self.assertRaises(PointCorruptionError):
            self.gf27.eval_u(AffinePoint(1, 1))

    def test_simple_rows(self):
        alpha, _ = self.gf27.point_arrays()
        ones = self.gf27.eval_row(MonomialTriple(0, 0, 0))
        self.assertTrue(np.all(ones == 1))
        self.assertTrue(np.array_equal(self.gf27.eval_row(MonomialTriple(1, 0, 0)), alpha))

    def test_negative_exponents_invert(self):
        for i, j, k in ((2, -3, 1), (-5, 4, -1), (7, 0, 2)):
            row = self.gf32.eval_row(MonomialTriple(i, j, k))
            inv = self.gf32.eval_row(MonomialTriple(-i, -j, -k))
            self.assertTrue(np.all(row * inv == 1))

    def test_basis_change_identity(self):
        spec = DivisorSpec(60, 1, -4, 9)
        omega = self.gf27.omega_enumerate(spec)
        gen = self.gf27.generator_from_omega(spec)
        self.assertEqual(gen.shape, (len(omega), self.gf27.cp.n))
        for row, (i, j, k) in zip(gen, omega.triples()):
            self.assertTrue(np.array_equal(row, self.gf27.eval_row_omega(MonomialTriple(i, j, k))))


class TestBuildCode(unittest.TestCase):

    @classmethod
    def setUpClass(cls):
        cls.gf27 = CodeHandler(3, 3)

    def test_flagship_gf32(self):
        code = CodeHandler(2, 5).build_code(DivisorSpec(324, 0, 0, 0))
        self.assertEqual((code.n, code.k, code.goppa_lb), (496, 250, 172))
        self.assertEqual(code.summary_line(), "496 250 172 324")
        self.assertEqual(code.built_from, "omega")

    def test_constant_code(self):
        code = self.gf27.build_code(DivisorSpec(0, 0, 0, 0))
        self.assertEqual((code.n, code.k, code.goppa_lb), (234, 1, 234))
        self.assertTrue(np.all(code.gen == 1))

    def test_points_carried_in_order(self):
        code = self.gf27.build_code(DivisorSpec(10, 0, 3, 1))
        self.assertEqual(len(code.points), code.n)
        self.assertEqual(list(code.points), self.gf27.enumerate_points())
        self.assertEqual(self.gf27.build_code(DivisorSpec(-5, 0, 0, 0)).points, code.points)

    def test_dimension_low_branch(self):
        spec = DivisorSpec(100, 0, 0, 0)
        code = self.gf27.build_code(spec)
        self.assertEqual(code.k, 64)
        self.assertEqual(rank(code.gen), 64)
        self.assertEqual(self.gf27.dimension(spec), 64)

    def test_dimension_high_branch(self):
        cp = self.gf27.cp
        for v in (234, 250, 280, 306):
            spec = DivisorSpec(v, 0, 0, 0)
            code = self.gf27.build_code(spec)
            self.assertEqual(code.built_from, "dual-nullspace")
            dual_count = len(self.gf27.omega_enumerate(self.gf27.dual_spec(spec)))
            self.assertEqual(code.k, cp.n - dual_count)
            self.assertEqual(code.k, self.gf27.dimension(spec))

    def test_degenerate_codes(self):
        zero = self.gf27.build_code(DivisorSpec(-1, 0, 0, 0))
        self.assertTrue(zero.degenerate)
        self.assertEqual((zero.k, zero.gen.shape), (0, (0, 234)))
        full = self.gf27.build_code(DivisorSpec(307, 0, 0, 0))
        self.assertTrue(full.degenerate)
        self.assertEqual(full.k, 234)
        self.assertEqual(self.gf27.dimension(DivisorSpec(400, 0, 0, 0)), 234)

    def test_dimension_monotone_in_v(self):
        ks = [self.gf27.dimension(DivisorSpec(v, 1, 3, -2)) for v in range(-10, 320, 9)]
        self.assertEqual(ks, sorted(ks))


class TestDuality(unittest.TestCase):

    @classmethod
    def setUpClass(cls):
        cls.gf27 = CodeHandler(3, 3)

    def test_dual_parameters(self):
        self.assertEqual(dual_spec(get_curve(2, 5), DivisorSpec(1, 2, 3, 4)), DivisorSpec(-2, -3, 275, 88))
        self.assertEqual(self.gf27.dual_spec(DivisorSpec(0, 0, 0, 0)), DivisorSpec(-1, -1, 259, 25))
        spec = DivisorSpec(17, -3, 40, 2)
        self.assertEqual(self.gf27.dual_spec(self.gf27.dual_spec(spec)), spec)

    def test_duality_window(self):
        spec = DivisorSpec(100, 0, 0, 0)
        dual = self.gf27.dual_spec(spec)
        self.assertEqual(dual, DivisorSpec(-101, -1, 259, 25))
        self.assertEqual(dual.degree(self.gf27.cp), 206)
        G, H = self.gf27.build_code(spec), self.gf27.build_code(dual)
        self.assertTrue(is_zero(mul_transpose(G.gen, H.gen)))
        self.assertEqual((G.k, H.k), (64, 170))

    def test_random_pairs(self):
        cp = self.gf27.cp
        rng = np.random.default_rng(9)
        for _ in range(6):
            r, s, t = (int(x) for x in rng.integers(-5, 30, size=3))
            deg = int(rng.integers(0, cp.R + 1))
            spec = DivisorSpec(deg - cp.degP0 * r - cp.degQ * s - cp.degV * t, r, s, t)
            G, H = self.gf27.build_code(spec), self.gf27.build_code(self.gf27.dual_spec(spec))
            self.assertTrue(is_zero(mul_transpose(G.gen, H.gen)), spec)
            self.assertEqual(G.k + H.k, cp.n, spec)

    def test_self_orthogonality(self):
        self.assertTrue(self.gf27.is_self_orthogonal(self.gf27.build_code(DivisorSpec(0, 0, 0, 0))))
        self.assertFalse(self.gf27.is_self_orthogonal(self.gf27.build_code(DivisorSpec(400, 0, 0, 0))))


class TestEquivalence(unittest.TestCase):

    @classmethod
    def setUpClass(cls):
        cls.gf27 = CodeHandler(3, 3)

    def test_canonical_witness_is_ones(self):
        witness = self.gf27.equivalence_witness(DivisorSpec(40, 0, 5, 3))
        self.assertTrue(np.all(witness == 1))

    def test_worked_example(self):
        spec = DivisorSpec(10, 1, 30, 5)
        hat = self.gf27.omega_reduce(spec).spec_hat
        witness = self.gf27.equivalence_witness(spec)
        self.assertTrue(np.all(witness.view(np.ndarray) != 0))
        G = self.gf27.generator_from_omega(spec)
        self.assertTrue(row_space_equal(G * witness, self.gf27.generator_from_omega(hat)))

    def test_random_non_canonical(self):
        rng = np.random.default_rng(21)
        for _ in range(5):
            spec = DivisorSpec(int(rng.integers(20, 120)), int(rng.integers(-3, 4)),
                               int(rng.integers(-30, 60)), int(rng.integers(-15, 40)))
            hat = self.gf27.omega_reduce(spec).spec_hat
            G = self.gf27.generator_from_omega(spec)
            scaled = G * self.gf27.equivalence_witness(spec)
            self.assertTrue(row_space_equal(scaled, self.gf27.generator_from_omega(hat)), spec)


class TestMinimumDistance(unittest.TestCase):

    @classmethod
    def setUpClass(cls):
        cls.gf27 = CodeHandler(3, 3)

    def test_constant_code_is_tight(self):
        code = self.gf27.build_code(DivisorSpec(0, 0, 0, 0))
        self.assertEqual(self.gf27.min_distance_bruteforce(code), 234)

    def test_two_dimensional_code(self):
        v = 0
        while self.gf27.dimension(DivisorSpec(v, 0, 0, 0)) < 2:
            v += 1
        code = self.gf27.build_code(DivisorSpec(v, 0, 0, 0))
        self.assertEqual(code.k, 2)
        d = self.gf27.min_distance_bruteforce(code)
        self.assertGreaterEqual(d, code.goppa_lb)
        self.assertLessEqual(d, code.n)

    def test_budget(self):
        code = self.gf27.build_code(DivisorSpec(100, 0, 0, 0))
        with self.assertRaises(BudgetExceededError):
            self.gf27.min_distance_bruteforce(code)


class TestGilbertVarshamov(unittest.TestCase):

    def test_entropy_endpoints(self):
        self.assertEqual(q_entropy(0.0, 32), 0.0)
        self.assertEqual(gv_rate(0.0, 32), 1.0)
        self.assertAlmostEqual(q_entropy(31 / 32, 32), 1.0)
        self.assertEqual(gv_rate(0.99, 32), 0.0)
        with self.assertRaises(ValueError):
            q_entropy(1.5, 32)

    def test_flagship_oversteps_gv(self):
        row = CodeHandler(2, 5).gv_compare([DivisorSpec(324, 0, 0, 0)]).iloc[0]
        self.assertEqual((row["degG"], row["k"], row["goppa_lb"]), (324, 250, 172))
        self.assertAlmostEqual(row["rate"], 250 / 496)
        self.assertAlmostEqual(row["gv_rate"], 0.4702, places=3)
        self.assertTrue(row["beats_gv"])
        self.assertGreater(row["rate"] - row["gv_rate"], 0.03)

    def test_repetition_row_out_of_domain(self):
        table = CodeHandler(3, 3).gv_compare([DivisorSpec(0, 0, 0, 0), DivisorSpec(-5, 0, 0, 0)])
        self.assertEqual(list(table.columns),
                         ["degG", "k", "goppa_lb", "delta", "rate", "gv_rate", "beats_gv"])
        self.assertEqual(table["delta"].iloc[0], 1.0)
        self.assertFalse(table["beats_gv"].any())


if __name__ == "__main__":
    unittest.main()

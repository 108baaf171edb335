import random
import unittest

from gmpy2 import mpq

from part0_arith import CycNum, I, I_SQRT2, ONE, SQRT2
from part2_qseries import PrecisionError, QSeries, ScaleMismatchError
from part3_eta import EtaQuotient, expand
from part5_hecke import (
    HeckeContext,
    HeckeError,
    eigenform_search,
    exact_eigenvalues,
    hecke_matrix,
    hecke_tp,
    is_eigenform,
    kernel,
    required_precision,
    solve_in_span,
    sturm_bound,
)
from part8_catalog import build_form, load_entry

CTX_576 = HeckeContext(576, -24)
CTX_1152 = HeckeContext(1152, -8)
CTX_9216 = HeckeContext(9216, -4)

F1152 = {
    "f1": EtaQuotient(1152, {8: -2, 16: 1, 24: 7, 48: -3, 72: -2, 144: 1}),
    "f2": EtaQuotient(1152, {8: 1, 16: -2, 24: -3, 48: 7, 72: 1, 144: -2}),
}
F9216 = {
    "f1": EtaQuotient(9216, {24: -1, 48: 1, 96: 2, 192: 1, 384: -1}),
    "f2": EtaQuotient(9216, {24: -1, 48: 3, 96: -2, 192: 3, 384: -1}),
}


def q_series(eq: EtaQuotient, prec: int) -> QSeries:
    """eq as a q-series with coefficients below q^prec."""
    return expand(eq, 24 * (prec - 1) + 1).reinterpret(1)


class TestBasics(unittest.TestCase):
    def test_sturm_bound(self):
        self.assertEqual(sturm_bound(576, 1), 96)
        self.assertEqual(sturm_bound(1152, 1), 192)
        self.assertEqual(sturm_bound(1, 12), 1)
        self.assertEqual(sturm_bound(23040, 1), 4608)
        with self.assertRaises(ValueError):
            sturm_bound(0, 1)

    def test_required_precision(self):
        self.assertEqual(required_precision([5, 7, 13], 96), 13 * 96 + 1)

    def test_context_parity(self):
        with self.assertRaises(ValueError):
            HeckeContext(24, 5)
        self.assertEqual(CTX_576.chi(5), 1)
        self.assertEqual(CTX_576.chi(7), 1)
        self.assertEqual(CTX_576.chi(13), -1)

    def test_zero(self):
        self.assertEqual(hecke_tp(QSeries.zero(100), 5, CTX_576), QSeries.zero(20))

    def test_errors(self):
        with self.assertRaises(PrecisionError):
            hecke_tp(QSeries([0]), 5, CTX_576)
        with self.assertRaises(HeckeError) as ctx:
            hecke_tp(QSeries([0, 1, 0]), 2, CTX_576)
        self.assertEqual(ctx.exception.prime, 2)
        with self.assertRaises(ValueError):
            hecke_tp(QSeries([0, 1, 0]), 25, CTX_576)
        with self.assertRaises(ScaleMismatchError):
            hecke_tp(QSeries([0, 1, 0], 24), 5, CTX_576)

    def test_formula(self):
        # b(n) = a(5n) + chi(5) a(n/5)
        f = QSeries(list(range(51)))
        g = hecke_tp(f, 5, CTX_576)
        self.assertEqual(g.prec, 11)
        self.assertEqual(g.coefficient(1), 5)
        self.assertEqual(g.coefficient(5), 25 + 1)
        self.assertEqual(g.coefficient(10), 50 + 2)
        g13 = hecke_tp(QSeries(list(range(170))), 13, CTX_576)
        self.assertEqual(g13.coefficient(13), 169 - 1)


class TestIdentities(unittest.TestCase):
    def test_1152_t17(self):
        f1 = q_series(F1152["f1"], 17 * 59 + 1)
        f2 = q_series(F1152["f2"], 60)
        image = hecke_tp(f1, 17, CTX_1152)
        self.assertEqual(image.prec, 60)
        self.assertEqual(image, f2.scalar_mul(4))

    def test_9216_t5(self):
        f1 = q_series(F9216["f1"], 5 * 99 + 1)
        f2 = q_series(F9216["f2"], 100)
        self.assertEqual(hecke_tp(f1, 5, CTX_9216), f2.scalar_mul(2))

    def test_commutativity(self):
        rng = random.Random(17)
        ctx = HeckeContext(1, -4)
        primes = (2, 3, 5, 7)
        units = (ONE, I, SQRT2, I_SQRT2, CycNum(mpq(1, 2)))
        for _ in range(1000):
            f = QSeries([rng.choice(units) * rng.randint(-2, 2) for _ in range(60)])
            p, l = rng.choice(primes), rng.choice(primes)
            left = hecke_tp(hecke_tp(f, p, ctx), l, ctx)
            right = hecke_tp(hecke_tp(f, l, ctx), p, ctx)
            self.assertEqual(left.prec, 59 // (p * l) + 1)
            self.assertEqual(left, right)


class TestEigenforms(unittest.TestCase):
    @classmethod
    def setUpClass(cls):
        cls.f576 = build_form(load_entry("F576"), 13 * 40 + 1)

    def test_f576_is_eigenform(self):
        res = is_eigenform(self.f576, [5, 7, 11, 13], CTX_576)
        self.assertTrue(res.ok, res.failure)
        self.assertEqual(sorted(res.eigenvalues), [5, 7, 11, 13])
        allowed = {CycNum(v) for v in (2, -2, 1, -1, 0)} | {I_SQRT2, -I_SQRT2}
        for p, ap in res.eigenvalues.items():
            self.assertEqual(ap, self.f576.coefficient(p))
            self.assertIn(ap, allowed)
        self.assertEqual(res.checked[13], 41)

    def test_corrupted_form_fails(self):
        bad = self.f576.with_coefficient(7, self.f576.coefficient(7) + 1)
        res = is_eigenform(bad, [5, 7], CTX_576, upto=40)
        self.assertFalse(res.ok)
        self.assertEqual(res.failure[0], 5)

    def test_precision_and_normalisation(self):
        with self.assertRaises(PrecisionError):
            is_eigenform(self.f576.truncate(10), [13], CTX_576, upto=5)
        with self.assertRaises(ValueError):
            is_eigenform(self.f576.scalar_mul(2), [5], CTX_576)
        with self.assertRaises(HeckeError):
            is_eigenform(self.f576, [3], CTX_576)

    def test_1152_matrix_and_search(self):
        f1 = q_series(F1152["f1"], 17 * 30 + 1)
        f2 = q_series(F1152["f2"], 17 * 30 + 1)
        m = hecke_matrix([f1, f2], 17, CTX_1152)
        self.assertEqual([m[0][0], m[1][0]], [CycNum(0), CycNum(4)])

        form = build_form(load_entry("F1152"), 40)
        found = eigenform_search([f1, f2], [17], CTX_1152)
        target = (CycNum(mpq(1, 3)), CycNum(mpq(2, 3)))
        match = [c for c in found if c.coefficients == target]
        self.assertEqual(len(match), 1)
        self.assertEqual(match[0].eigenvalues[17], form.coefficient(17))

    def test_dependent_basis(self):
        f1 = q_series(F1152["f1"], 17 * 10 + 1)
        with self.assertRaises(HeckeError) as ctx:
            hecke_matrix([f1, f1], 17, CTX_1152)
        self.assertEqual(ctx.exception.reason, "basis dependent")

    def test_short_basis(self):
        f1 = q_series(F1152["f1"], 17)
        with self.assertRaises(PrecisionError):
            hecke_matrix([f1], 17, CTX_1152)


class TestLinearAlgebra(unittest.TestCase):
    def test_kernel(self):
        ker = kernel([[ONE, ONE], [CycNum(2), CycNum(2)]])
        self.assertEqual(ker, [[CycNum(-1), ONE]])
        self.assertEqual(kernel([[ONE, CycNum(0)], [CycNum(0), ONE]]), [])

    def test_solve_in_span(self):
        cols = [[ONE, CycNum(0), CycNum(0)], [CycNum(0), ONE, CycNum(0)]]
        self.assertEqual(solve_in_span(cols, [CycNum(3), I, CycNum(0)]), [CycNum(3), I])
        with self.assertRaises(HeckeError):
            solve_in_span(cols, [CycNum(0), CycNum(0), ONE])

    def test_exact_eigenvalues(self):
        z = CycNum(0)
        self.assertCountEqual(exact_eigenvalues([[z, ONE], [CycNum(-2), z]]), [I_SQRT2, -I_SQRT2])
        self.assertCountEqual(exact_eigenvalues([[z, ONE], [ONE, z]]), [ONE, -ONE])
        self.assertEqual(exact_eigenvalues([[CycNum(5)]]), [CycNum(5)])
        with self.assertRaises(HeckeError):
            exact_eigenvalues([[z, ONE], [CycNum(3), z]])


if __name__ == "__main__":
    unittest.main()

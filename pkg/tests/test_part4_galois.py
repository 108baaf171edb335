import pickle
import random
import unittest

from sympy import jacobi_symbol, primerange

from part0_arith import CycNum
from part4_galois import (
    RAMIFIED,
    IntPoly,
    SplitType,
    frobenius_census,
    frobenius_order,
    kronecker,
    split_type,
    splitting_count,
)


F576_POLYS = (IntPoly((6, 0, 1)), IntPoly((-2, 3, 0, 1)), IntPoly((-6, 0, 88, 0, 42, 0, 12, 0, 1)))
X2_PLUS_1 = IntPoly((1, 0, 1))


class TestKronecker(unittest.TestCase):
    def test_examples(self):
        self.assertEqual(kronecker(-4, 3), -1)
        self.assertEqual(kronecker(-4, 5), 1)
        self.assertEqual(kronecker(-8, 3), 1)
        self.assertEqual(kronecker(-8, 5), -1)
        self.assertEqual(kronecker(-24, 5), 1)
        self.assertEqual(kronecker(-15, 2), 1)
        self.assertEqual(kronecker(5, 2), -1)
        self.assertEqual(kronecker(-4, 2), 0)
        self.assertEqual(kronecker(-3, 3), 0)
        self.assertEqual(kronecker(5, -1), 1)
        self.assertEqual(kronecker(-3, -1), -1)
        self.assertEqual(kronecker(1, 0), 1)
        self.assertEqual(kronecker(2, 0), 0)

    def test_returns_plain_int(self):
        for d, n in ((-24, 67), (-24, 5), (-8, 3), (-4, 9), (5, 2), (-3, 3)):
            self.assertIs(type(kronecker(d, n)), int, (d, n))
        self.assertEqual(CycNum(2) * kronecker(-24, 67), CycNum(-2))

    def test_agrees_with_jacobi(self):
        for n in range(3, 200, 2):
            for d in range(-40, 40):
                self.assertEqual(kronecker(d, n), jacobi_symbol(d % n, n))

    def test_multiplicative(self):
        rng = random.Random(4)
        for _ in range(1000):
            d = rng.choice((-24, -15, -8, -4, -3, 5, 8, 12, rng.randint(-500, 500)))
            m, n = rng.randint(1, 400), rng.randint(1, 400)
            self.assertEqual(kronecker(d, m * n), kronecker(d, m) * kronecker(d, n))
            e = rng.randint(-500, 500)
            self.assertEqual(kronecker(d * e, n), kronecker(d, n) * kronecker(e, n))


class TestPolynomials(unittest.TestCase):
    def test_parse(self):
        self.assertEqual(IntPoly.parse("x^2 + 1"), X2_PLUS_1)
        self.assertEqual(IntPoly.parse("[6, 0, 1]"), IntPoly((6, 0, 1)))
        self.assertEqual(IntPoly.parse("2x^3 - x").coeffs, (0, -1, 0, 2))
        self.assertEqual(IntPoly.parse([1, 2, 0]).degree, 1)
        with self.assertRaises(ValueError):
            IntPoly.parse("x/2")
        with self.assertRaises(ValueError):
            IntPoly((0, 0))

    def test_text(self):
        self.assertEqual(str(X2_PLUS_1), "x^2 + 1")
        self.assertEqual(X2_PLUS_1.to_json(), [1, 0, 1])
        self.assertEqual(X2_PLUS_1.discriminant(), -4)
        self.assertEqual(F576_POLYS[0].discriminant(), -24)
        self.assertEqual(F576_POLYS[1].discriminant(), -216)


class TestSplitting(unittest.TestCase):
    def test_x2_plus_1(self):
        self.assertEqual(split_type(X2_PLUS_1, 5), SplitType((1, 1)))
        self.assertEqual(split_type(X2_PLUS_1, 3), SplitType((2,)))
        self.assertIs(split_type(X2_PLUS_1, 2), RAMIFIED)
        self.assertEqual(frobenius_order([X2_PLUS_1], 13), 1)
        self.assertEqual(frobenius_order([X2_PLUS_1], 7), 2)

    def test_errors(self):
        with self.assertRaises(ValueError):
            split_type(X2_PLUS_1, 9)
        with self.assertRaises(ValueError):
            split_type(IntPoly((1, 0, 2)), 2)
        with self.assertRaises(ValueError):
            frobenius_order([], 5)

    def test_split_type_text(self):
        st = SplitType((1, 2, 3))
        self.assertEqual(str(st), "1+2+3")
        self.assertEqual(st.order, 6)
        self.assertEqual(str(RAMIFIED), "RAMIFIED")
        self.assertIs(pickle.loads(pickle.dumps(RAMIFIED)), RAMIFIED)

    def test_degrees_sum(self):
        for h in F576_POLYS:
            for p in primerange(5, 500):
                st = split_type(h, p)
                if st is not RAMIFIED:
                    self.assertEqual(sum(st.degrees), h.degree)

    def test_ramified_iff_discriminant(self):
        for h in F576_POLYS:
            disc = h.discriminant()
            for p in primerange(2, 200):
                self.assertEqual(split_type(h, p) is RAMIFIED, disc % p == 0, (str(h), p))

    def test_census_matches_order(self):
        primes = list(primerange(2, 600))
        census = frobenius_census(F576_POLYS, primes)
        self.assertEqual(sorted(census), primes)
        for p, row in census.items():
            self.assertEqual(row.f_p, frobenius_order(F576_POLYS, p))
            self.assertEqual(row.ramified, row.f_p is RAMIFIED)
            if not row.ramified:
                self.assertEqual(48 % row.f_p, 0)
        self.assertTrue(census[2].ramified)
        self.assertTrue(census[3].ramified)

    def test_splitting_count(self):
        self.assertEqual(splitting_count(48, 1), 48)
        self.assertEqual(splitting_count(96, 12), 8)
        for n in (8, 24, 48, 96, 120):
            self.assertEqual(splitting_count(n, n), 1)
        with self.assertRaises(ValueError):
            splitting_count(48, 5)
        with self.assertRaises(ValueError):
            splitting_count(48, 0)


if __name__ == "__main__":
    unittest.main()

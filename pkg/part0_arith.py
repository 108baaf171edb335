#!/usr/bin/env python3
# part0_arith.py — exact rationals and the cyclotomic field Q(zeta8)

import cmath
import math
from typing import Iterable, List, Sequence, Tuple, Union

import mpmath
from gmpy2 import mpq, mpz

Rat = type(mpq(0))
Scalar = Union[int, "Rat"]

_ZETA = cmath.exp(1j * math.pi / 4)
_ZETA_POWERS = (1 + 0j, _ZETA, 1j, _ZETA ** 3)
_Q0 = mpq(0)
_SCALARS = (int, Rat, type(mpz(0)))


def rat(value) -> "Rat":
    """Coerce int, mpz, mpq, Fraction or a 'num/den' string to a reduced mpq."""
    if isinstance(value, Rat):
        return value
    if isinstance(value, str):
        text = value.strip()
        if "/" in text:
            num, den = text.split("/", 1)
            return mpq(mpz(num.strip()), mpz(den.strip()))
        return mpq(mpz(text))
    if isinstance(value, float):
        raise TypeError("floats are not exact; pass an int, a fraction or a 'num/den' string")
    return mpq(value)


def rat_str(x: "Rat") -> str:
    return f"{x.numerator}/{x.denominator}"


class CycNum:
    """Element c0 + c1*z + c2*z^2 + c3*z^3 of Q(z), z = exp(i*pi/4), z^4 = -1.

    Immutable. i = z^2, sqrt2 = z - z^3, i*sqrt2 = z + z^3.
    """

    __slots__ = ("c",)

    def __init__(self, c0: Scalar = 0, c1: Scalar = 0, c2: Scalar = 0, c3: Scalar = 0):
        self.c: Tuple = (rat(c0), rat(c1), rat(c2), rat(c3))

    @classmethod
    def _raw(cls, c: Tuple) -> "CycNum":
        obj = object.__new__(cls)
        obj.c = c
        return obj

    # ---------------- constructors ----------------
    @classmethod
    def coerce(cls, value) -> "CycNum":
        if isinstance(value, CycNum):
            return value
        return cls._raw((rat(value), _Q0, _Q0, _Q0))

    @classmethod
    def from_parts(cls, a: Scalar = 0, b: Scalar = 0, c: Scalar = 0, d: Scalar = 0) -> "CycNum":
        """a + b*sqrt2 + c*i + d*i*sqrt2."""
        a, b, c, d = rat(a), rat(b), rat(c), rat(d)
        return cls._raw((a, b + d, c, d - b))

    @classmethod
    def from_complex(cls, z: complex, max_den: int = 48, tol: float = 1e-7) -> "CycNum":
        """Recognise a floating value as an element of Q(z) with small denominators.

        Real and imaginary parts are each matched to a + b*sqrt2 by PSLQ.
        """
        re_a, re_b = _recognise_real(z.real, max_den, tol)
        im_a, im_b = _recognise_real(z.imag, max_den, tol)
        value = cls.from_parts(re_a, re_b, im_a, im_b)
        if abs(value.to_complex() - z) > tol * max(1.0, abs(z)):
            raise ValueError(f"{z!r} is not recognisable in Q(zeta8) with denominators <= {max_den}")
        return value

    # ---------------- basic protocol ----------------
    def __repr__(self) -> str:
        return f"CycNum({', '.join(rat_str(x) for x in self.c)})"

    def __str__(self) -> str:
        if self.is_rational():
            return str(self.c[0])
        return "(" + ", ".join(str(x) for x in self.c) + ")"

    def __hash__(self) -> int:
        if self.is_rational():
            return hash(self.c[0])
        return hash(self.c)

    def __eq__(self, other) -> bool:
        if isinstance(other, CycNum):
            return self.c == other.c
        if isinstance(other, _SCALARS):
            return self.c[0] == other and not (self.c[1] or self.c[2] or self.c[3])
        return NotImplemented

    def __ne__(self, other) -> bool:
        result = self.__eq__(other)
        return result if result is NotImplemented else not result

    def __bool__(self) -> bool:
        c0, c1, c2, c3 = self.c
        return bool(c0 or c1 or c2 or c3)

    def is_rational(self) -> bool:
        return not (self.c[1] or self.c[2] or self.c[3])

    # ---------------- field operations ----------------
    def __neg__(self) -> "CycNum":
        c0, c1, c2, c3 = self.c
        return CycNum._raw((-c0, -c1, -c2, -c3))

    def __add__(self, other) -> "CycNum":
        if isinstance(other, CycNum):
            a0, a1, a2, a3 = self.c
            b0, b1, b2, b3 = other.c
            return CycNum._raw((a0 + b0, a1 + b1, a2 + b2, a3 + b3))
        if isinstance(other, _SCALARS):
            c0, c1, c2, c3 = self.c
            return CycNum._raw((c0 + other, c1, c2, c3))
        return NotImplemented

    __radd__ = __add__

    def __sub__(self, other) -> "CycNum":
        if isinstance(other, CycNum):
            a0, a1, a2, a3 = self.c
            b0, b1, b2, b3 = other.c
            return CycNum._raw((a0 - b0, a1 - b1, a2 - b2, a3 - b3))
        if isinstance(other, _SCALARS):
            c0, c1, c2, c3 = self.c
            return CycNum._raw((c0 - other, c1, c2, c3))
        return NotImplemented

    def __rsub__(self, other) -> "CycNum":
        return (-self).__add__(other)

    def __mul__(self, other) -> "CycNum":
        if isinstance(other, CycNum):
            a0, a1, a2, a3 = self.c
            b0, b1, b2, b3 = other.c
            if not (b1 or b2 or b3):
                return CycNum._raw((a0 * b0, a1 * b0, a2 * b0, a3 * b0))
            if not (a1 or a2 or a3):
                return CycNum._raw((a0 * b0, a0 * b1, a0 * b2, a0 * b3))
            return CycNum._raw((
                a0 * b0 - a1 * b3 - a2 * b2 - a3 * b1,
                a0 * b1 + a1 * b0 - a2 * b3 - a3 * b2,
                a0 * b2 + a1 * b1 + a2 * b0 - a3 * b3,
                a0 * b3 + a1 * b2 + a2 * b1 + a3 * b0,
            ))
        if isinstance(other, _SCALARS):
            c0, c1, c2, c3 = self.c
            return CycNum._raw((c0 * other, c1 * other, c2 * other, c3 * other))
        return NotImplemented

    __rmul__ = __mul__

    def conjugate(self, k: int) -> "CycNum":
        """Galois automorphism z -> z^k for odd k."""
        if k % 2 == 0:
            raise ValueError("k must be odd")
        out = [_Q0, _Q0, _Q0, _Q0]
        for j, x in enumerate(self.c):
            if not x:
                continue
            e = (j * k) % 8
            if e < 4:
                out[e] += x
            else:
                out[e - 4] -= x
        return CycNum._raw(tuple(out))

    def norm(self) -> "Rat":
        """Field norm to Q: product of the four conjugates."""
        prod = self * self.conjugate(3) * self.conjugate(5) * self.conjugate(7)
        return prod.c[0]

    def inverse(self) -> "CycNum":
        if not self:
            raise ZeroDivisionError("division by zero in Q(zeta8)")
        if self.is_rational():
            return CycNum._raw((1 / self.c[0], _Q0, _Q0, _Q0))
        others = self.conjugate(3) * self.conjugate(5) * self.conjugate(7)
        n = (self * others).c[0]
        return others * (1 / n)

    def __truediv__(self, other) -> "CycNum":
        if isinstance(other, _SCALARS):
            if not other:
                raise ZeroDivisionError("division by zero in Q(zeta8)")
            return self * (1 / mpq(other))
        if isinstance(other, CycNum):
            return self * other.inverse()
        return NotImplemented

    def __rtruediv__(self, other) -> "CycNum":
        return CycNum.coerce(other) * self.inverse()

    def __pow__(self, n: int) -> "CycNum":
        if n < 0:
            return self.inverse() ** (-n)
        result, base = ONE, self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    # ---------------- conversions ----------------
    def to_complex(self) -> complex:
        return sum(float(x) * w for x, w in zip(self.c, _ZETA_POWERS))

    def parts(self) -> Tuple:
        """(a, b, c, d) with self = a + b*sqrt2 + c*i + d*i*sqrt2."""
        c0, c1, c2, c3 = self.c
        return (c0, (c1 - c3) / 2, c2, (c1 + c3) / 2)

    def to_json(self) -> List[str]:
        return [rat_str(x) for x in self.c]

    @classmethod
    def from_json(cls, data: Sequence) -> "CycNum":
        if len(data) != 4:
            raise ValueError(f"expected 4 coordinates, got {len(data)}")
        return cls._raw(tuple(rat(x) for x in data))

    def pretty(self) -> str:
        a, b, c, d = self.parts()
        terms = []
        for coeff, unit in ((a, ""), (b, "√2"), (c, "i"), (d, "i√2")):
            if not coeff:
                continue
            if unit and abs(coeff) == 1:
                mag = unit
            else:
                mag = f"{abs(coeff)}{unit}"
            terms.append(("-" if coeff < 0 else "+", mag))
        if not terms:
            return "0"
        head_sign, head = terms[0]
        out = ("-" if head_sign == "-" else "") + head
        for sign, mag in terms[1:]:
            out += f" {sign} {mag}"
        return out


def parse_cycnum(value) -> CycNum:
    """Accepts a 4-element list, the '(c0, c1, c2, c3)' text form, or a bare rational."""
    if isinstance(value, CycNum):
        return value
    if isinstance(value, (list, tuple)):
        return CycNum.from_json(value)
    if isinstance(value, _SCALARS):
        return CycNum.coerce(value)
    text = str(value).strip()
    if text.startswith("(") and text.endswith(")"):
        return CycNum.from_json([t for t in text[1:-1].split(",")])
    return CycNum.coerce(rat(text))


def _recognise_real(x: float, max_den: int, tol: float) -> Tuple:
    if abs(x) < tol:
        return _Q0, _Q0
    rel = mpmath.pslq([mpmath.mpf(x), mpmath.mpf(1), mpmath.sqrt(2)],
                      tol=mpmath.mpf(tol) / 100, maxcoeff=10 ** 4, maxsteps=10 ** 4)
    if rel is None or rel[0] == 0:
        raise ValueError(f"no relation found for {x!r}")
    n0, n1, n2 = rel
    a, b = mpq(-n1, n0), mpq(-n2, n0)
    if a.denominator > max_den or b.denominator > max_den:
        raise ValueError(f"{x!r} needs denominators above {max_den}")
    return a, b


def lcm_all(values: Iterable[int]) -> int:
    out = 1
    for v in values:
        out = math.lcm(out, v)
    return out


ZERO = CycNum()
ONE = CycNum(1)
ZETA = CycNum(0, 1)
I = CycNum(0, 0, 1)
SQRT2 = CycNum(0, 1, 0, -1)
I_SQRT2 = CycNum(0, 1, 0, 1)

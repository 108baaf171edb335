#!/usr/bin/env python3
# part4_galois.py — Kronecker symbol, defining polynomials mod p, Frobenius residue degrees

import json
import math
from dataclasses import dataclass
from typing import Dict, Iterable, List, Sequence, Tuple, Union

import sympy
from sympy import Poly, isprime, jacobi_symbol, symbols
from sympy.polys.domains import ZZ
from sympy.parsing.sympy_parser import (
    convert_xor,
    implicit_multiplication_application,
    parse_expr,
    standard_transformations,
)
from sympy.polys.galoistools import (
    gf_ddf_zassenhaus,
    gf_diff,
    gf_from_int_poly,
    gf_gcd,
    gf_monic,
)

from part1_bootstrap import log, parallel_map

_X = symbols("x")


def kronecker(d: int, n: int) -> int:
    """Kronecker symbol (d/n)."""
    if n == 0:
        return 1 if abs(d) == 1 else 0
    result = 1
    if n < 0:
        n = -n
        if d < 0:
            result = -result
    v = (n & -n).bit_length() - 1
    if v:
        if d % 2 == 0:
            return 0
        n >>= v
        if v % 2 and d % 8 in (3, 5):
            result = -result
    if n == 1:
        return result
    # newer sympy returns One/NegativeOne here
    return result * int(jacobi_symbol(d % n, n))


@dataclass(frozen=True)
class IntPoly:
    coeffs: Tuple[int, ...]   # low to high

    def __post_init__(self):
        c = tuple(int(x) for x in self.coeffs)
        while c and c[-1] == 0:
            c = c[:-1]
        if not c:
            raise ValueError("the zero polynomial has no splitting type")
        object.__setattr__(self, "coeffs", c)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def leading(self) -> int:
        return self.coeffs[-1]

    def high_to_low(self) -> List[int]:
        return list(reversed(self.coeffs))

    def discriminant(self) -> int:
        return int(sympy.discriminant(Poly(self.high_to_low(), _X)))

    @classmethod
    def parse(cls, text: Union[str, Sequence[int]]) -> "IntPoly":
        """'x^8 + 12x^6 - 6', '[c0, c1, ...]' (low to high) or a coefficient list."""
        if not isinstance(text, str):
            return cls(tuple(text))
        raw = text.strip()
        if raw.startswith("["):
            return cls(tuple(json.loads(raw)))
        expr = parse_expr(raw, local_dict={"x": _X},
                          transformations=standard_transformations + (convert_xor, implicit_multiplication_application))
        poly = Poly(expr, _X)
        if not all(c.is_integer for c in poly.all_coeffs()):
            raise ValueError(f"{text!r} does not have integer coefficients")
        return cls(tuple(int(c) for c in reversed(poly.all_coeffs())))

    def __str__(self) -> str:
        return str(Poly(self.high_to_low(), _X).as_expr()).replace("**", "^")

    def to_json(self) -> List[int]:
        return list(self.coeffs)


@dataclass(frozen=True)
class SplitType:
    degrees: Tuple[int, ...]

    def __str__(self) -> str:
        return "+".join(str(d) for d in self.degrees)

    @property
    def order(self) -> int:
        return math.lcm(*self.degrees)


class _Ramified:
    __slots__ = ()

    def __repr__(self) -> str:
        return "RAMIFIED"

    __str__ = __repr__

    def __reduce__(self):
        return "RAMIFIED"


RAMIFIED = _Ramified()


def split_type(h: IntPoly, p: int) -> Union[SplitType, _Ramified]:
    """Degrees of the irreducible factors of h mod p, or RAMIFIED if h mod p is not squarefree."""
    if not isprime(p):
        raise ValueError(f"{p} is not prime")
    if h.leading % p == 0:
        raise ValueError(f"{p} divides the leading coefficient of {h}")
    f = gf_from_int_poly(h.high_to_low(), p)
    if gf_gcd(f, gf_diff(f, p, ZZ), p, ZZ) != [ZZ.one]:
        return RAMIFIED
    f = gf_monic(f, p, ZZ)[1]
    degrees: List[int] = []
    for factor, d in gf_ddf_zassenhaus(f, p, ZZ):
        degrees.extend([d] * ((len(factor) - 1) // d))
    return SplitType(tuple(sorted(degrees)))


def frobenius_order(polys: Sequence[IntPoly], p: int) -> Union[int, _Ramified]:
    """Residue degree of p in the compositum of the splitting fields."""
    if not polys:
        raise ValueError("need at least one polynomial")
    f = 1
    for h in polys:
        st = split_type(h, p)
        if st is RAMIFIED:
            return RAMIFIED
        f = math.lcm(f, st.order)
    return f


def splitting_count(group_order: int, f_p: int) -> int:
    if f_p < 1 or group_order % f_p:
        raise ValueError(f"residue degree {f_p} does not divide group order {group_order}")
    return group_order // f_p


@dataclass(frozen=True)
class FrobeniusRow:
    p: int
    f_p: Union[int, _Ramified]
    split_types: Tuple[Union[SplitType, _Ramified], ...]

    @property
    def ramified(self) -> bool:
        return self.f_p is RAMIFIED


def _frobenius_row(args: Tuple[Tuple[IntPoly, ...], int]) -> FrobeniusRow:
    polys, p = args
    types = tuple(split_type(h, p) for h in polys)
    if any(t is RAMIFIED for t in types):
        return FrobeniusRow(p, RAMIFIED, types)
    return FrobeniusRow(p, math.lcm(*(t.order for t in types)), types)


def frobenius_census(polys: Sequence[IntPoly], primes: Iterable[int], threads: int = 1) -> Dict[int, FrobeniusRow]:
    polys = tuple(polys)
    if not polys:
        raise ValueError("need at least one polynomial")
    primes = list(primes)
    rows = parallel_map(_frobenius_row, [(polys, p) for p in primes], threads)
    log(f"frobenius census: {len(primes)} primes, {sum(r.ramified for r in rows)} ramified, threads={threads}")
    return {r.p: r for r in rows}

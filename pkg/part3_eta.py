#!/usr/bin/env python3
# part3_eta.py — Dedekind eta expansions, eta quotients, Ono criterion, characters, cusp orders

import math
from dataclasses import dataclass, field
from functools import lru_cache
from operator import add, sub
from typing import Dict, List, Mapping, Optional, Tuple

from gmpy2 import mpq
from sympy import divisors, factorint

from part0_arith import CycNum, ZERO, lcm_all
from part2_qseries import QSeries


# ---------------- Euler's pentagonal series ----------------
@lru_cache(maxsize=32)
def pentagonal_terms(limit: int) -> Tuple[Tuple[int, int], ...]:
    """(exponent, sign) of prod(1 - x^n) up to x^limit, by the pentagonal number theorem."""
    terms = [(0, 1)]
    k = 1
    while True:
        sign = -1 if k % 2 else 1
        g1 = k * (3 * k - 1) // 2
        g2 = k * (3 * k + 1) // 2
        if g1 > limit:
            break
        terms.append((g1, sign))
        if g2 <= limit:
            terms.append((g2, sign))
        k += 1
    return tuple(terms)


def naive_euler_product(n: int) -> List[int]:
    """prod_{j>=1} (1 - x^j) mod x^n by repeated multiplication; test oracle."""
    out = [0] * n
    if n:
        out[0] = 1
    for j in range(1, n):
        for i in range(n - 1, j - 1, -1):
            out[i] -= out[i - j]
    return out


def _mul_euler(src: List[int], m: int) -> List[int]:
    """src * prod(1 - x^(m*j)), truncated to len(src)."""
    n = len(src)
    res = [0] * n
    for e, s in pentagonal_terms((n - 1) // m):
        shift = e * m
        op = add if s > 0 else sub
        res[shift:] = list(map(op, res[shift:], src[: n - shift]))
    return res


def _div_euler(src: List[int], m: int) -> List[int]:
    """src / prod(1 - x^(m*j)), truncated to len(src)."""
    n = len(src)
    terms = [(e * m, s) for e, s in pentagonal_terms((n - 1) // m) if e]
    out = list(src)
    for i in range(n):
        acc = out[i]
        for shift, s in terms:
            if shift > i:
                break
            if s > 0:
                acc -= out[i - shift]
            else:
                acc += out[i - shift]
        out[i] = acc
    return out


@lru_cache(maxsize=64)
def _euler_quotient(exponents: Tuple[Tuple[int, int], ...], n: int) -> Tuple[int, ...]:
    """prod_m prod_j (1 - x^(m*j))^(a_m) mod x^n as integers."""
    series = [0] * n
    series[0] = 1
    for m, a in exponents:
        for _ in range(a):
            series = _mul_euler(series, m)
    for m, a in exponents:
        for _ in range(-a):
            series = _div_euler(series, m)
    return tuple(series)


# ---------------- eta quotients ----------------
@dataclass(frozen=True)
class EtaQuotient:
    level: int
    exponents: Mapping[int, int] = field(default_factory=dict)

    def __post_init__(self):
        if self.level < 1:
            raise ValueError("level must be positive")
        clean = {}
        for m, a in dict(self.exponents).items():
            m, a = int(m), int(a)
            if m < 1 or self.level % m:
                raise ValueError(f"eta({m}z) does not divide level {self.level}")
            if a:
                clean[m] = a
        object.__setattr__(self, "exponents", dict(sorted(clean.items())))

    def __hash__(self) -> int:
        return hash((self.level, tuple(self.exponents.items())))

    @property
    def weight2(self) -> int:
        """Twice the weight."""
        return sum(self.exponents.values())

    @property
    def weight(self) -> int:
        if self.weight2 % 2:
            raise ValueError(f"half-integral weight {self.weight2}/2")
        return self.weight2 // 2

    @property
    def order24(self) -> int:
        """24 times the order at infinity: sum m*a_m."""
        return sum(m * a for m, a in self.exponents.items())

    def rescaled(self, d: int) -> "EtaQuotient":
        """f(z) -> f(dz)."""
        return EtaQuotient(self.level * d, {m * d: a for m, a in self.exponents.items()})

    def at_level(self, level: int) -> "EtaQuotient":
        if level % self.level:
            raise ValueError(f"{level} is not a multiple of {self.level}")
        return EtaQuotient(level, self.exponents)

    def to_json(self) -> Dict:
        return {"level": self.level, "exponents": {str(m): a for m, a in self.exponents.items()}}

    @classmethod
    def from_json(cls, data: Mapping) -> "EtaQuotient":
        return cls(int(data["level"]), {int(m): int(a) for m, a in data["exponents"].items()})

    def __str__(self) -> str:
        parts = []
        for m, a in self.exponents.items():
            parts.append(f"eta({m}z)" + (f"^{a}" if a != 1 else ""))
        return " ".join(parts) or "1"


@dataclass(frozen=True)
class EtaTerms:
    """Integer expansion on the progression u^(offset + step*j), u = q^(1/24)."""
    offset: int
    step: int
    coeffs: Tuple[int, ...]

    def items(self):
        for j, c in enumerate(self.coeffs):
            if c:
                yield self.offset + self.step * j, c


def expand_terms(eq: EtaQuotient, prec: int) -> EtaTerms:
    """Sparse exact expansion of eq covering u-exponents < prec."""
    offset = eq.order24
    if offset < 0:
        raise ValueError(f"{eq} has negative order {offset}/24 at infinity")
    if not eq.exponents:
        return EtaTerms(0, 24, (1,) if prec > 0 else ())
    g = math.gcd(*eq.exponents.keys())
    step = 24 * g
    n = max(0, -(-(prec - offset) // step))
    if n == 0:
        return EtaTerms(offset, step, ())
    reduced = tuple((m // g, a) for m, a in eq.exponents.items())
    return EtaTerms(offset, step, _euler_quotient(reduced, n))


def eta_expansion(prec: int) -> QSeries:
    """q^(1/24) * prod(1 - q^n) as a scale-24 series."""
    if prec < 1:
        raise ValueError("prec must be at least 1")
    return expand(EtaQuotient(1, {1: 1}), prec)


def expand(eq: EtaQuotient, prec: int) -> QSeries:
    terms = expand_terms(eq, prec)
    data = [ZERO] * prec
    for e, c in terms.items():
        if e < prec:
            data[e] = CycNum.coerce(c)
    return QSeries(data, 24, prec)


# ---------------- Ono's criterion ----------------
@dataclass(frozen=True)
class OnoResult:
    level: int
    weight: int
    cond_a: bool
    cond_b: bool
    sum_a: int
    sum_b: int

    @property
    def ok(self) -> bool:
        return self.cond_a and self.cond_b


def ono_check(eq: EtaQuotient, level: Optional[int] = None) -> OnoResult:
    n = level or eq.level
    if n % eq.level:
        raise ValueError(f"{n} is not a multiple of {eq.level}")
    k = eq.weight
    sum_a = eq.order24
    sum_b = sum((n // m) * a for m, a in eq.exponents.items())
    return OnoResult(n, k, sum_a % 24 == 0, sum_b % 24 == 0, sum_a, sum_b)


def ono_level(eq: EtaQuotient, base: Optional[int] = None) -> Optional[int]:
    """Least multiple of base (default eq.level) where both conditions hold."""
    base = base or eq.level
    if base % eq.level:
        raise ValueError(f"{base} is not a multiple of {eq.level}")
    if eq.order24 % 24:
        return None
    s = sum((base // m) * a for m, a in eq.exponents.items())
    return base * (24 // math.gcd(s, 24))


# ---------------- character ----------------
def fundamental_discriminant(d: int) -> int:
    """Discriminant of Q(sqrt d); 1 when d is a square."""
    if d == 0:
        raise ValueError("0 has no quadratic field")
    core = -1 if d < 0 else 1
    for p, e in factorint(abs(d)).items():
        if e % 2:
            core *= p
    if core == 1:
        return 1
    return core if core % 4 == 1 else 4 * core


def character_discriminant(eq: EtaQuotient) -> int:
    """D with chi(d) = (D/d), from (-1)^k * prod m^(a_m)."""
    k = eq.weight
    parity: Dict[int, int] = {}
    for m, a in eq.exponents.items():
        for p, e in factorint(m).items():
            parity[p] = parity.get(p, 0) + e * a
    core = -1 if k % 2 else 1
    for p, e in parity.items():
        if e % 2:
            core *= p
    return fundamental_discriminant(core)


# ---------------- cusps ----------------
def cusp_orders(eq: EtaQuotient, level: Optional[int] = None) -> List[Tuple[int, "mpq"]]:
    n = level or eq.level
    out = []
    for d in divisors(n):
        total = sum(mpq(math.gcd(d, m) ** 2 * a, m) for m, a in eq.exponents.items())
        out.append((int(d), mpq(n, 24) * total / (math.gcd(d, n // d) * d)))
    return out


def is_holomorphic(eq: EtaQuotient) -> bool:
    return all(order >= 0 for _, order in cusp_orders(eq))


def quotient_level(exponents: Mapping[int, int]) -> int:
    return lcm_all(int(m) for m in exponents)

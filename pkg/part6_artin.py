#!/usr/bin/env python3
# part6_artin.py — Artin local factors, Euler products, comparison with q-expansions

import math
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

from sympy import primerange

from part0_arith import CycNum, ONE, ZERO
from part2_qseries import PrecisionError, QSeries


class ArtinError(ValueError):
    pass


@dataclass(frozen=True)
class LocalFactor:
    """(1 - trace*X + det*X^2)^(-1) at X = p^(-s)."""
    p: int
    trace: CycNum
    det: CycNum


def prime_power_coeffs(lf: LocalFactor, rmax: int) -> List[CycNum]:
    if rmax < 0:
        raise ValueError("rmax must be >= 0")
    out = [ONE]
    if rmax >= 1:
        out.append(lf.trace)
    for r in range(1, rmax):
        nxt = lf.trace * out[r]
        if lf.det:
            nxt = nxt - lf.det * out[r - 1]
        out.append(nxt)
    return out


def _smallest_prime_factors(n: int) -> List[int]:
    spf = list(range(n + 1))
    for i in range(2, math.isqrt(n) + 1):
        if spf[i] == i:
            for j in range(i * i, n + 1, i):
                if spf[j] == j:
                    spf[j] = i
    return spf


def dirichlet_from_euler(factors: Mapping[int, LocalFactor], nmax: int) -> List[CycNum]:
    """Coefficients a(1), ..., a(nmax) of prod_p L_p; a(n) sits at index n - 1."""
    if nmax < 1:
        raise ValueError("nmax must be >= 1")
    powers: Dict[int, List[CycNum]] = {}
    for p in primerange(2, nmax + 1):
        if p not in factors:
            raise ArtinError(f"no local factor supplied for p={p}")
        rmax = int(math.log(nmax, p)) + 1
        powers[p] = prime_power_coeffs(factors[p], rmax)
    spf = _smallest_prime_factors(nmax)
    out = [ZERO, ONE] + [ZERO] * (nmax - 1)   # out[n] = a(n) while assembling
    for n in range(2, nmax + 1):
        p = spf[n]
        m, v = n, 0
        while m % p == 0:
            m //= p
            v += 1
        out[n] = powers[p][v] * out[m] if m > 1 else powers[p][v]
    return out[1:]


@dataclass
class CompareReport:
    upto: int
    mismatches: List[int] = field(default_factory=list)
    coprime_to: int = 1

    @property
    def ok(self) -> bool:
        return not self.mismatches

    @property
    def independent_mismatches(self) -> List[int]:
        """Mismatches at indices prime to the level: the genuinely predicted coefficients."""
        return [n for n in self.mismatches if math.gcd(n, self.coprime_to) == 1]

    @property
    def dependent_mismatches(self) -> List[int]:
        return [n for n in self.mismatches if math.gcd(n, self.coprime_to) != 1]


def compare(series: QSeries, dirichlet: Sequence[CycNum], upto: int, coprime_to: int = 1) -> CompareReport:
    if series.scale != 1:
        raise ValueError("comparison needs a scale-1 series")
    if series.prec <= upto:
        raise PrecisionError(f"series precision {series.prec} does not reach n={upto}",
                             required=upto + 1, available=series.prec)
    if len(dirichlet) < upto:
        raise PrecisionError(f"Dirichlet coefficients stop at n={len(dirichlet)}",
                             required=upto, available=len(dirichlet))
    report = CompareReport(upto=upto, coprime_to=coprime_to)
    for n in range(1, upto + 1):
        if series.coeffs[n] != dirichlet[n - 1]:
            report.mismatches.append(n)
    return report


# ---------------- Frobenius conjugacy data ----------------
def element_order(trace: CycNum, det: CycNum, bound: int = 120) -> Optional[int]:
    """Order of a finite-order 2x2 matrix with this trace and determinant, or None.

    Works with x^n modulo the minimal polynomial: x - trace/2 when the
    eigenvalues coincide, x^2 - trace*x + det otherwise.
    """
    if not det:
        return None
    if trace * trace == det * 4:
        lam = trace / 2
        power = lam
        for n in range(1, bound + 1):
            if power == 1:
                return n
            power = power * lam
        return None
    alpha, beta = ONE, ZERO   # x^1 = alpha*x + beta
    for n in range(1, bound + 1):
        if not alpha and beta == 1:
            return n
        alpha, beta = alpha * trace + beta, -(alpha * det)
    return None


def admissible_dets(a_p: CycNum, f_p: int) -> Tuple[int, ...]:
    """Determinants in {1, -1} for which a class with trace a_p has element order exactly f_p."""
    out = []
    for d in (1, -1):
        order = element_order(a_p, CycNum.coerce(d))
        if order == f_p:
            out.append(d)
    return tuple(out)


@dataclass(frozen=True)
class TraceResolution:
    trace: CycNum
    candidates: Tuple[CycNum, ...]
    predicted: bool       # True when the Frobenius data alone fixes the trace


def resolve_trace(rows: Iterable[Tuple[CycNum, int]], f_p: int, chi_p: int,
                  computed: Optional[CycNum] = None) -> TraceResolution:
    """Trace of Frob_p from the (a_p, f_p) table, using computed a_p only to break ties.

    A row is a candidate when its residue degree is f_p and a class with
    that trace and determinant chi(p) has order f_p.
    """
    candidates = []
    for a_p, row_f in rows:
        if row_f == f_p and chi_p in admissible_dets(a_p, f_p) and a_p not in candidates:
            candidates.append(a_p)
    candidates = tuple(candidates)
    if len(candidates) == 1:
        return TraceResolution(candidates[0], candidates, True)
    if computed is None:
        raise ArtinError(f"{len(candidates)} traces fit f_p={f_p}, chi(p)={chi_p}; need the computed a_p")
    return TraceResolution(computed, candidates, False)

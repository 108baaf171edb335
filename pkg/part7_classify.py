#!/usr/bin/env python3
# part7_classify.py — projective image from the statistics of c = a_p^2 / chi(p)

from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Union

from gmpy2 import mpq
from sympy import primerange

from part0_arith import CycNum
from part1_bootstrap import DIHEDRAL_THRESHOLD, MATCH_TOLERANCE
from part2_qseries import PrecisionError, QSeries
from part4_galois import kronecker


class ProjectiveImage(str, Enum):
    DIHEDRAL = "DIHEDRAL"
    A4 = "A4"
    S4 = "S4"
    A5 = "A5"
    INCONCLUSIVE = "INCONCLUSIVE"


# Element-order censuses of the exotic projective images. The printed S4 row
# lists 1/25 for order 1; the census forces 1/24.
REFERENCE_ROWS: Dict[ProjectiveImage, Dict[int, "mpq"]] = {
    ProjectiveImage.A4: {1: mpq(1, 12), 2: mpq(1, 4), 3: mpq(2, 3)},
    ProjectiveImage.S4: {1: mpq(1, 24), 2: mpq(3, 8), 3: mpq(1, 3), 4: mpq(1, 4)},
    ProjectiveImage.A5: {1: mpq(1, 60), 2: mpq(1, 4), 3: mpq(1, 3), 5: mpq(2, 5)},
}

_C_TO_ORDER = {CycNum(4): 1, CycNum(0): 2, CycNum(1): 3, CycNum(2): 4}
# (3 +- sqrt5)/2, the order-5 values, lie outside Q(zeta8): A5 orders only
# reach classify_orders as shares passed in directly

MIN_SAMPLE = 100

Coefficients = Union[QSeries, Sequence[CycNum]]


@dataclass
class CDistribution:
    proportions: Dict[CycNum, "mpq"]
    sample_size: int

    def __post_init__(self):
        if self.sample_size <= 0:
            raise ValueError("empty sample")


@dataclass
class Classification:
    verdict: ProjectiveImage
    distance: Optional[float]
    c_zero: "mpq"
    orders: Dict[Optional[int], "mpq"] = field(default_factory=dict)
    notes: List[str] = field(default_factory=list)


def c_value(a_p: CycNum, chi_p: int) -> CycNum:
    if chi_p not in (1, -1):
        raise ValueError(f"chi(p) must be +-1, got {chi_p}")
    sq = a_p * a_p
    return sq if chi_p == 1 else -sq


def _coefficient(coeffs: Coefficients, p: int) -> CycNum:
    if isinstance(coeffs, QSeries):
        return coeffs.coefficient(p)
    if p >= len(coeffs):
        raise PrecisionError(f"no coefficient at p={p}", required=p + 1, available=len(coeffs))
    return coeffs[p]


def sampled_primes(pmax: int, exclude: Iterable[int] = ()) -> List[int]:
    skip = set(exclude)
    return [p for p in primerange(2, pmax + 1) if p not in skip]


def _proportions(values: Iterable) -> Dict:
    counts: Dict = {}
    total = 0
    for v in values:
        counts[v] = counts.get(v, 0) + 1
        total += 1
    if not total:
        raise ValueError("no primes sampled")
    return {k: mpq(c, total) for k, c in counts.items()}, total


def empirical_c(coeffs: Coefficients, disc: int, pmax: int, exclude: Iterable[int] = ()) -> CDistribution:
    primes = sampled_primes(pmax, exclude)
    values = (c_value(_coefficient(coeffs, p), kronecker(disc, p)) for p in primes)
    props, total = _proportions(values)
    return CDistribution(props, total)


def trace_distribution(coeffs: Coefficients, pmax: int, exclude: Iterable[int] = ()) -> CDistribution:
    """Share of sampled primes with each value of a_p."""
    props, total = _proportions(_coefficient(coeffs, p) for p in sampled_primes(pmax, exclude))
    return CDistribution(props, total)


def estimate_group_order(coeffs: Coefficients, pmax: int, exclude: Iterable[int] = ()) -> Optional[float]:
    """1 / density of a_p = 2: primes splitting completely have density 1/|G|."""
    dist = trace_distribution(coeffs, pmax, exclude)
    share = dist.proportions.get(CycNum(2))
    return float(1 / share) if share else None


def projective_order(c: CycNum) -> Optional[int]:
    return _C_TO_ORDER.get(c)


def order_distribution(dist: CDistribution) -> Dict[Optional[int], "mpq"]:
    out: Dict[Optional[int], "mpq"] = {}
    for c, share in dist.proportions.items():
        k = projective_order(c)
        out[k] = out.get(k, mpq(0)) + share
    return out


def total_variation(a: Mapping, b: Mapping) -> float:
    keys = set(a) | set(b)
    return float(sum(abs(a.get(k, 0) - b.get(k, 0)) for k in keys) / 2)


def classify_orders(orders: Mapping[Optional[int], "mpq"], sample_size: int,
                    c_zero: Optional["mpq"] = None) -> Classification:
    if sample_size < MIN_SAMPLE:
        raise ValueError(f"sample of {sample_size} primes is below {MIN_SAMPLE}")
    zero_share = c_zero if c_zero is not None else orders.get(2, mpq(0))
    notes = ["order-1 share of S4 taken as 1/24"]
    if zero_share >= DIHEDRAL_THRESHOLD:
        return Classification(ProjectiveImage.DIHEDRAL, None, zero_share, dict(orders), notes)
    best, best_d = ProjectiveImage.INCONCLUSIVE, None
    for image, row in REFERENCE_ROWS.items():
        d = total_variation(orders, row)
        if best_d is None or d < best_d:
            best, best_d = image, d
    if best_d > MATCH_TOLERANCE:
        best = ProjectiveImage.INCONCLUSIVE
    return Classification(best, best_d, zero_share, dict(orders), notes)


def classify(dist: CDistribution) -> Classification:
    orders = order_distribution(dist)
    return classify_orders(orders, dist.sample_size, dist.proportions.get(CycNum(0), mpq(0)))

#!/usr/bin/env python3
# part5_hecke.py — Hecke operators, Sturm bound, eigenform checks and eigenform search

from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

import numpy as np
from sympy import isprime, primefactors

from part0_arith import CycNum, ZERO, ONE
from part1_bootstrap import log
from part2_qseries import PrecisionError, QSeries, ScaleMismatchError, linear_combination
from part4_galois import kronecker

Vector = List[CycNum]
Matrix = List[List[CycNum]]


class HeckeError(ValueError):
    def __init__(self, reason: str, prime: Optional[int] = None, index: Optional[int] = None):
        where = []
        if prime is not None:
            where.append(f"p={prime}")
        if index is not None:
            where.append(f"n={index}")
        super().__init__(reason + (f" ({', '.join(where)})" if where else ""))
        self.reason = reason
        self.prime = prime
        self.index = index


@dataclass(frozen=True)
class HeckeContext:
    level: int
    disc: int
    weight: int = 1

    def __post_init__(self):
        if self.level < 1 or self.weight < 1:
            raise ValueError("level and weight must be positive")
        if kronecker(self.disc, -1) != (-1) ** self.weight:
            raise ValueError(f"character ({self.disc}/.) has the wrong parity for weight {self.weight}")

    def chi(self, n: int) -> int:
        return kronecker(self.disc, n)


def sturm_bound(level: int, weight: int) -> int:
    if level < 1 or weight < 1:
        raise ValueError("level and weight must be positive")
    index = level
    for p in primefactors(level):
        index = index // p * (p + 1)
    return weight * index // 12


def required_precision(primes: Iterable[int], upto: int) -> int:
    """Input precision needed to compare T_p f with a_p f on coefficients 0..upto."""
    return max(primes) * upto + 1


def _check_prime(p: int, ctx: HeckeContext) -> None:
    if not isprime(p):
        raise ValueError(f"{p} is not prime")
    if ctx.level % p == 0:
        raise HeckeError("p divides level", prime=p)


def hecke_tp(f: QSeries, p: int, ctx: HeckeContext) -> QSeries:
    """b(n) = a(pn) + chi(p) p^(k-1) a(n/p)."""
    if f.scale != 1:
        raise ScaleMismatchError(f"T_p acts on q-series at scale 1, got scale {f.scale}")
    _check_prime(p, ctx)
    if f.prec < 2:
        raise PrecisionError("T_p needs at least two coefficients", required=2, available=f.prec)
    a = f.coeffs
    out_prec = (f.prec - 1) // p + 1
    out = a[: p * (out_prec - 1) + 1: p]
    factor = ctx.chi(p) * p ** (ctx.weight - 1)
    if factor:
        for n in range(0, out_prec, p):
            c = a[n // p]
            if c:
                out[n] = out[n] + c * factor
    return QSeries._wrap(out, 1)


@dataclass
class EigenCheck:
    ok: bool
    eigenvalues: Dict[int, CycNum] = field(default_factory=dict)
    failure: Optional[Tuple[int, int]] = None
    checked: Dict[int, int] = field(default_factory=dict)


def is_eigenform(f: QSeries, primes: Sequence[int], ctx: HeckeContext,
                 upto: Optional[int] = None) -> EigenCheck:
    """Check T_p f = a_p f for each p on coefficients 0..upto (default: all available)."""
    primes = sorted(primes)
    if not primes:
        raise ValueError("no primes to check")
    for p in primes:
        _check_prime(p, ctx)
    need = required_precision(primes, upto if upto is not None else 1)
    if f.prec < need:
        raise PrecisionError(f"eigenform check needs precision {need}, have {f.prec}",
                             required=need, available=f.prec)
    if f.coefficient(1) != 1:
        raise ValueError("series is not normalized: a(1) != 1")
    result = EigenCheck(True)
    for p in primes:
        ap = f.coeffs[p]
        img = hecke_tp(f, p, ctx)
        limit = img.prec if upto is None else upto + 1
        for n in range(limit):
            a = f.coeffs[n]
            expect = ap * a if (a and ap) else ZERO
            if img.coeffs[n] != expect:
                log(f"eigenform check failed at p={p} n={n}")
                result.ok = False
                result.failure = (p, n)
                return result
        result.eigenvalues[p] = ap
        result.checked[p] = limit
    return result


# ---------------- exact linear algebra over Q(zeta8) ----------------
def rref(matrix: Matrix) -> Tuple[Matrix, List[int]]:
    rows = [list(r) for r in matrix]
    if not rows:
        return rows, []
    ncols = len(rows[0])
    pivots: List[int] = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(rows)) if rows[i][c]), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = rows[r][c].inverse()
        rows[r] = [x * inv if x else ZERO for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c]:
                factor = rows[i][c]
                rows[i] = [x - factor * y if y else x for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return rows, pivots


def kernel(matrix: Matrix) -> List[Vector]:
    """Basis of {v : matrix v = 0}."""
    if not matrix:
        return []
    ncols = len(matrix[0])
    reduced, pivots = rref(matrix)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fcol in free:
        v = [ZERO] * ncols
        v[fcol] = ONE
        for row_idx, pcol in enumerate(pivots):
            entry = reduced[row_idx][fcol]
            if entry:
                v[pcol] = -entry
        basis.append(v)
    return basis


def solve_in_span(columns: Sequence[Vector], target: Vector) -> Vector:
    """Coordinates x with sum_j x_j columns[j] = target; HeckeError if target is outside the span."""
    d = len(columns)
    n = len(target)
    aug = [[columns[j][i] for j in range(d)] + [target[i]] for i in range(n)]
    reduced, pivots = rref(aug)
    if d in pivots:
        raise HeckeError("span not Hecke-stable")
    x = [ZERO] * d
    for row_idx, pcol in enumerate(pivots):
        x[pcol] = reduced[row_idx][d]
    return x


def mat_vec(m: Matrix, v: Vector) -> Vector:
    out = []
    for row in m:
        acc = ZERO
        for a, b in zip(row, v):
            if a and b:
                acc = acc + a * b
        out.append(acc)
    return out


def restrict(m: Matrix, subspace: Sequence[Vector]) -> Matrix:
    """Matrix R of m on an invariant subspace: m W = W R."""
    images = [mat_vec(m, w) for w in subspace]
    cols = [solve_in_span(subspace, img) for img in images]
    d = len(subspace)
    return [[cols[j][i] for j in range(d)] for i in range(d)]


def exact_eigenvalues(m: Matrix) -> List[CycNum]:
    """Eigenvalues of m, located numerically, recognised in Q(zeta8), confirmed exactly."""
    d = len(m)
    if d == 1:
        return [m[0][0]]
    approx = np.linalg.eigvals(np.array([[x.to_complex() for x in row] for row in m], dtype=complex))
    found: List[CycNum] = []
    for z in approx:
        try:
            lam = CycNum.from_complex(complex(z))
        except ValueError:
            raise HeckeError(f"eigenvalue outside Q(zeta8): {complex(z):.6g}")
        if lam not in found:
            found.append(lam)
    for lam in found:
        shifted = [[x - lam if i == j else x for j, x in enumerate(row)] for i, row in enumerate(m)]
        if not kernel(shifted):
            raise HeckeError(f"eigenvalue outside Q(zeta8): {lam.pretty()} is not exact")
    return sorted(found, key=lambda x: x.c)


# ---------------- Hecke matrices and eigenform search ----------------
def hecke_matrix(basis: Sequence[QSeries], p: int, ctx: HeckeContext) -> Matrix:
    """M with T_p basis_j = sum_i M[i][j] basis_i, verified on every available coefficient."""
    r = len(basis)
    if r == 0:
        raise ValueError("empty basis")
    images = [hecke_tp(b, p, ctx) for b in basis]
    rows = min(img.prec for img in images)
    if rows < r + 1:
        need = p * r + 1
        raise PrecisionError(f"Hecke matrix for p={p} needs basis precision {need}",
                             required=need, available=min(b.prec for b in basis))
    echelon: List[Tuple[int, Vector]] = []
    chosen: List[int] = []
    for n in range(rows):
        vec = [b.coeffs[n] for b in basis]
        for piv, row in echelon:
            if vec[piv]:
                factor = vec[piv]
                vec = [x - factor * y if y else x for x, y in zip(vec, row)]
        lead = next((i for i, x in enumerate(vec) if x), None)
        if lead is None:
            continue
        inv = vec[lead].inverse()
        vec = [x * inv if x else ZERO for x in vec]
        echelon = [(piv, [x - row[lead] * y if y else x for x, y in zip(row, vec)] if row[lead] else row)
                   for piv, row in echelon]
        echelon.append((lead, vec))
        chosen.append(n)
        if len(chosen) == r:
            break
    if len(chosen) < r:
        raise HeckeError("basis dependent", prime=p)

    square = [[b.coeffs[n] for b in basis] for n in chosen]
    columns = []
    for img in images:
        x = solve_in_span([[row[j] for row in square] for j in range(r)], [img.coeffs[n] for n in chosen])
        for n in range(rows):
            acc = ZERO
            for xi, b in zip(x, basis):
                c = b.coeffs[n]
                if xi and c:
                    acc = acc + xi * c
            if acc != img.coeffs[n]:
                raise HeckeError("span not Hecke-stable", prime=p, index=n)
        columns.append(x)
    log(f"hecke matrix p={p} size={r} verified on {rows} coefficients")
    return [[columns[j][i] for j in range(r)] for i in range(r)]


@dataclass
class EigenformCandidate:
    coefficients: Optional[Tuple[CycNum, ...]]
    eigenvalues: Dict[int, CycNum]
    subspace: Tuple[Tuple[CycNum, ...], ...]

    @property
    def resolved(self) -> bool:
        return self.coefficients is not None


def _combine(vectors: Sequence[Vector], weights: Vector) -> Vector:
    out = [ZERO] * len(vectors[0])
    for w, v in zip(weights, vectors):
        if w:
            out = [a + w * b if b else a for a, b in zip(out, v)]
    return out


def eigenform_search(basis: Sequence[QSeries], primes: Sequence[int], ctx: HeckeContext) -> List[EigenformCandidate]:
    """Simultaneous eigenvectors of the T_p on span(basis), normalized to a(1) = 1."""
    primes = list(primes)
    if not primes:
        raise ValueError("no primes supplied")
    r = len(basis)
    mats = {p: hecke_matrix(basis, p, ctx) for p in primes}
    identity = [[ONE if i == j else ZERO for i in range(r)] for j in range(r)]
    spaces: List[Tuple[List[Vector], Dict[int, CycNum]]] = [(identity, {})]
    for p in primes:
        refined = []
        for space, eig in spaces:
            local = restrict(mats[p], space)
            for lam in exact_eigenvalues(local):
                shifted = [[x - lam if i == j else x for j, x in enumerate(row)] for i, row in enumerate(local)]
                vectors = [_combine(space, k) for k in kernel(shifted)]
                refined.append((vectors, {**eig, p: lam}))
        spaces = refined
        log(f"eigenform search p={p}: dimensions {[len(s) for s, _ in spaces]}")

    out = []
    for space, eig in spaces:
        if len(space) != 1:
            out.append(EigenformCandidate(None, eig, tuple(tuple(v) for v in space)))
            continue
        vec = space[0]
        lead = ZERO
        for c, b in zip(vec, basis):
            if c and b.coefficient(1):
                lead = lead + c * b.coefficient(1)
        if not lead:
            out.append(EigenformCandidate(None, eig, (tuple(vec),)))
            continue
        inv = lead.inverse()
        coeffs = tuple(c * inv for c in vec)
        check = is_eigenform(linear_combination(basis, coeffs), primes, ctx)
        if not check.ok:
            raise HeckeError("eigenvector fails the exact eigenform check", *check.failure)
        out.append(EigenformCandidate(coeffs, eig, (coeffs,)))
    return out

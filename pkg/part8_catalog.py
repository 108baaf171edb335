#!/usr/bin/env python3
# part8_catalog.py — the newform catalog and its end-to-end verification pipeline

import json
import math
import os
import time
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Callable, Dict, List, Mapping, Optional, Sequence, Tuple, Union

from gmpy2 import mpq
from sympy import primerange

from part0_arith import CycNum, ZERO, parse_cycnum
from part1_bootstrap import (
    CATALOG_DIR,
    CENSUS_PMAX,
    DENSITY_TOLERANCE,
    EIGEN_PRIME_BOUND,
    IDENTITY_DEPTH,
    log,
)
from part2_qseries import PrecisionError, QSeries, linear_combination
from part3_eta import (
    EtaQuotient,
    character_discriminant,
    expand,
    expand_terms,
    fundamental_discriminant,
    is_holomorphic,
    ono_check,
    ono_level,
)
from part4_galois import RAMIFIED, IntPoly, frobenius_census, frobenius_order, splitting_count
from part5_hecke import HeckeContext, hecke_tp, is_eigenform, required_precision, sturm_bound
from part6_artin import LocalFactor, admissible_dets, compare, dirichlet_from_euler, element_order, resolve_trace
from part7_classify import (
    MIN_SAMPLE,
    ProjectiveImage,
    classify,
    empirical_c,
    estimate_group_order,
    trace_distribution,
)


class CatalogError(ValueError):
    pass


# ---------------- data model ----------------
@dataclass(frozen=True)
class Constituent:
    label: str
    quotient: EtaQuotient
    coeff: CycNum


@dataclass(frozen=True)
class CorrespondenceRow:
    a_p: CycNum
    f_p: int
    size: int
    splits: int


@dataclass(frozen=True)
class ClassRow:
    label: str
    size: int
    trace: CycNum
    det: Optional[int] = None


@dataclass(frozen=True)
class HeckeIdentity:
    """T_p(src) = scalar * dst."""
    p: int
    src: str
    scalar: CycNum
    dst: str


@dataclass(frozen=True)
class NewformEntry:
    name: str
    level: int
    disc: int
    rescale: int
    constituents: Tuple[Constituent, ...]
    defining_polys: Tuple[IntPoly, ...]
    group_order: int
    correspondence: Tuple[CorrespondenceRow, ...]
    expected_image: ProjectiveImage
    hecke_identities: Tuple[HeckeIdentity, ...] = ()
    classes: Tuple[ClassRow, ...] = ()
    notes: Tuple[str, ...] = ()

    @property
    def character(self) -> int:
        """Fundamental discriminant of the nebentypus."""
        return fundamental_discriminant(self.disc)

    @property
    def context(self) -> HeckeContext:
        return HeckeContext(self.level, self.character, 1)

    @property
    def sturm(self) -> int:
        return sturm_bound(self.level, 1)

    def constituent(self, label: str) -> Constituent:
        for c in self.constituents:
            if c.label == label:
                return c
        raise CatalogError(f"{self.name} has no constituent {label!r}")

    @property
    def rows_derived(self) -> bool:
        return not self.correspondence

    def correspondence_rows(self) -> Tuple[CorrespondenceRow, ...]:
        """The catalogued (a_p, f_p) rows, or rows derived from the class table.

        A derived row pairs each class trace with the order of an element
        having that trace and the class determinant. When a class carries
        no determinant, the unique one in {1, -1} giving a finite order is used.
        """
        if self.correspondence:
            return self.correspondence
        rows = []
        for c in self.classes:
            dets = (c.det,) if c.det is not None else (1, -1)
            orders = {d: element_order(c.trace, CycNum.coerce(d)) for d in dets}
            orders = {d: o for d, o in orders.items() if o is not None}
            if len(orders) != 1:
                raise CatalogError(f"{self.name}: class {c.label} does not fix an element order "
                                   f"(trace {c.trace.pretty()}, det {c.det})")
            (f_p,) = orders.values()
            if self.group_order % f_p:
                raise CatalogError(f"{self.name}: class {c.label} has order {f_p}, "
                                   f"which does not divide {self.group_order}")
            rows.append(CorrespondenceRow(c.trace, f_p, c.size, self.group_order // f_p))
        return tuple(rows)

    def merged_rows(self) -> Dict[Tuple[CycNum, int], int]:
        """(a_p, f_p) -> summed class size."""
        out: Dict[Tuple[CycNum, int], int] = {}
        for row in self.correspondence_rows():
            key = (row.a_p, row.f_p)
            out[key] = out.get(key, 0) + row.size
        return out

    def level_primes(self) -> List[int]:
        return [p for p in primerange(2, self.level + 1) if self.level % p == 0]


def entry_from_json(data: Mapping[str, Any]) -> NewformEntry:
    try:
        constituents = tuple(
            Constituent(c["label"], EtaQuotient.from_json(c["quotient"]), parse_cycnum(c["coeff"]))
            for c in data["constituents"]
        )
        return NewformEntry(
            name=data["name"],
            level=int(data["level"]),
            disc=int(data["disc"]),
            rescale=int(data.get("rescale", 1)),
            constituents=constituents,
            defining_polys=tuple(IntPoly(tuple(p)) for p in data["defining_polys"]),
            group_order=int(data["group_order"]),
            correspondence=tuple(
                CorrespondenceRow(parse_cycnum(r["a_p"]), int(r["f_p"]), int(r["size"]), int(r["splits"]))
                for r in data.get("correspondence", [])
            ),
            expected_image=ProjectiveImage(data["expected_image"]),
            hecke_identities=tuple(
                HeckeIdentity(int(h["p"]), h["src"], parse_cycnum(h["scalar"]), h["dst"])
                for h in data.get("hecke_identities", [])
            ),
            classes=tuple(
                ClassRow(c["label"], int(c["size"]), parse_cycnum(c["trace"]),
                         None if c.get("det") is None else int(c["det"]))
                for c in data.get("classes", [])
            ),
            notes=tuple(data.get("notes", [])),
        )
    except (KeyError, TypeError, ValueError) as e:
        raise CatalogError(f"malformed catalog entry {data.get('name', '?')}: {e}") from e


def _class_to_json(c: ClassRow) -> Dict[str, Any]:
    out: Dict[str, Any] = {"label": c.label, "size": c.size, "trace": c.trace.to_json()}
    if c.det is not None:
        out["det"] = c.det
    return out


def entry_to_json(entry: NewformEntry) -> Dict[str, Any]:
    return {
        "name": entry.name,
        "level": entry.level,
        "disc": entry.disc,
        "rescale": entry.rescale,
        "constituents": [
            {"label": c.label, "quotient": c.quotient.to_json(), "coeff": c.coeff.to_json()}
            for c in entry.constituents
        ],
        "defining_polys": [p.to_json() for p in entry.defining_polys],
        "group_order": entry.group_order,
        "correspondence": [
            {"a_p": r.a_p.to_json(), "f_p": r.f_p, "size": r.size, "splits": r.splits}
            for r in entry.correspondence
        ],
        "classes": [_class_to_json(c) for c in entry.classes],
        "expected_image": entry.expected_image.value,
        "hecke_identities": [
            {"p": h.p, "src": h.src, "scalar": h.scalar.to_json(), "dst": h.dst} for h in entry.hecke_identities
        ],
        "notes": list(entry.notes),
    }


def catalog_names(directory: str = CATALOG_DIR) -> List[str]:
    try:
        files = [f[:-5] for f in os.listdir(directory) if f.endswith(".json")]
    except FileNotFoundError:
        raise CatalogError(f"catalog directory {directory} does not exist")
    return sorted(files, key=lambda n: (len(n), n))


def load_entry(name: str, directory: str = CATALOG_DIR) -> NewformEntry:
    path = os.path.join(directory, f"{name}.json")
    if not os.path.isfile(path):
        raise CatalogError(f"unknown form {name!r}; known: {', '.join(catalog_names(directory))}")
    with open(path, "r", encoding="utf-8") as f:
        try:
            data = json.load(f)
        except json.JSONDecodeError as e:
            raise CatalogError(f"{path}: {e}") from e
    entry = entry_from_json(data)
    log(f"loaded catalog entry {entry.name} from {path}")
    return entry


def load_catalog(directory: str = CATALOG_DIR) -> List[NewformEntry]:
    return sorted((load_entry(n, directory) for n in catalog_names(directory)), key=lambda e: e.level)


def find_quotient(name: str, directory: str = CATALOG_DIR) -> Tuple[NewformEntry, Constituent]:
    """'f1_1152' -> (F1152, its constituent f1)."""
    label, _, level = name.rpartition("_")
    if not label or not level.isdigit():
        raise CatalogError(f"quotient names look like f1_1152, got {name!r}")
    entry = load_entry(f"F{level}", directory)
    return entry, entry.constituent(label)


# ---------------- q-expansions ----------------
def _q_terms(quotient: EtaQuotient, rescale: int, prec: int) -> Tuple[int, int, Tuple[int, ...]]:
    """Integer q-expansion of quotient(rescale*z) below q^prec as (offset, step, coeffs)."""
    u_prec = -(-prec * 24 // rescale)
    terms = expand_terms(quotient, u_prec)
    if (terms.offset * rescale) % 24 or (terms.step * rescale) % 24:
        raise CatalogError(f"{quotient} rescaled by {rescale} is not a series in integral powers of q")
    offset = terms.offset * rescale // 24
    step = terms.step * rescale // 24
    count = max(0, -(-(prec - offset) // step))
    return offset, step, terms.coeffs[:count]


def constituent_series(entry: NewformEntry, constituent: Constituent, prec: int) -> QSeries:
    offset, step, coeffs = _q_terms(constituent.quotient, entry.rescale, prec)
    data = [ZERO] * prec
    for j, v in enumerate(coeffs):
        if v:
            data[offset + step * j] = CycNum.coerce(v)
    return QSeries(data, 1, prec)


def build_form(entry: NewformEntry, prec: int) -> QSeries:
    """sum c_i * quotient_i(rescale*z) as a q-series with a(1) = 1."""
    if prec < 2:
        raise ValueError("prec must be at least 2")
    data = [ZERO] * prec
    for c in entry.constituents:
        offset, step, coeffs = _q_terms(c.quotient, entry.rescale, prec)
        for j, v in enumerate(coeffs):
            if v:
                n = offset + step * j
                data[n] = data[n] + c.coeff * v
    form = QSeries(data, 1, prec)
    if form.coeffs[1] != 1:
        raise CatalogError(f"{entry.name}: combination has a(1) = {form.coeffs[1].pretty()}, expected 1")
    return form


def build_form_reference(entry: NewformEntry, prec: int) -> QSeries:
    """Same as build_form, through the generic series operations (slow; used as an oracle)."""
    u_prec = -(-prec * 24 // entry.rescale)
    parts = [expand(c.quotient, u_prec).rescale(entry.rescale).reinterpret(1).truncate(prec)
             for c in entry.constituents]
    return linear_combination(parts, [c.coeff for c in entry.constituents])


_FORM_CACHE: Dict[NewformEntry, QSeries] = {}


def form_series(entry: NewformEntry, prec: int) -> QSeries:
    cached = _FORM_CACHE.get(entry)
    if cached is None or cached.prec < prec:
        start = time.time()
        cached = build_form(entry, prec)
        _FORM_CACHE[entry] = cached
        log(f"built {entry.name} to precision {prec} in {time.time() - start:.1f}s")
    return cached if cached.prec == prec else cached.truncate(prec)


# ---------------- verification ----------------
class Status(str, Enum):
    PASS = "PASS"
    FAIL = "FAIL"
    SKIPPED = "SKIPPED"


@dataclass
class CheckResult:
    name: str
    status: Status
    details: Dict[str, Any] = field(default_factory=dict)

    def to_json(self) -> Dict[str, Any]:
        return {"name": self.name, "status": self.status.value, "details": self.details}


@dataclass
class VerificationReport:
    form: str
    level: int
    pmax: int
    sturm_bound: int
    checked_upto: int = 0
    mismatches: List[int] = field(default_factory=list)
    ramified_primes: List[int] = field(default_factory=list)
    index_divisors: List[int] = field(default_factory=list)
    checks: List[CheckResult] = field(default_factory=list)
    notes: List[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.status is not Status.FAIL for c in self.checks)

    @property
    def status(self) -> Status:
        return Status.PASS if self.passed else Status.FAIL

    def check(self, name: str) -> CheckResult:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def to_json(self) -> Dict[str, Any]:
        return {
            "form": self.form,
            "level": self.level,
            "pmax": self.pmax,
            "sturm_bound": self.sturm_bound,
            "checked_upto": self.checked_upto,
            "mismatches": self.mismatches,
            "ramified_primes": self.ramified_primes,
            "index_divisors": self.index_divisors,
            "status": self.status.value,
            "checks": [c.to_json() for c in self.checks],
            "notes": self.notes,
        }


def _share(x) -> str:
    return f"{float(x):.4f}"


def check_data(entry: NewformEntry) -> CheckResult:
    """Pure data invariants of the entry."""
    problems = []
    try:
        rows = entry.correspondence_rows()
    except CatalogError as e:
        rows = ()
        problems.append(str(e))
    if rows:
        total = sum(r.size for r in rows)
        if total != entry.group_order:
            problems.append(f"correspondence sizes sum to {total}, group order is {entry.group_order}")
        for r in rows:
            if r.splits * r.f_p != entry.group_order:
                problems.append(f"row ({r.a_p.pretty()}, {r.f_p}): splits*f_p = {r.splits * r.f_p}")
            if not admissible_dets(r.a_p, r.f_p):
                problems.append(f"row ({r.a_p.pretty()}, {r.f_p}): no finite-order class has this trace and order")
    if entry.classes:
        total = sum(c.size for c in entry.classes)
        if total != entry.group_order:
            problems.append(f"class sizes sum to {total}, group order is {entry.group_order}")
    labels = {c.label for c in entry.constituents}
    for h in entry.hecke_identities:
        if h.src not in labels or h.dst not in labels:
            problems.append(f"identity T_{h.p} {h.src} -> {h.dst} names an unknown constituent")
    return CheckResult("catalog data", Status.FAIL if problems else Status.PASS, {"problems": problems})


def check_ono(entry: NewformEntry) -> CheckResult:
    rows = []
    ok = True
    for c in entry.constituents:
        q = c.quotient.rescaled(entry.rescale)
        base = math.lcm(entry.level, q.level)
        res = ono_check(q, base)
        level = ono_level(q, base)
        disc = character_discriminant(q)
        holo = is_holomorphic(q)
        good = res.weight == 1 and res.cond_a and level is not None and disc == entry.character and holo
        ok = ok and good
        rows.append({
            "label": c.label,
            "weight": res.weight,
            "sum_m_a": res.sum_a,
            "cond_b_at_level": res.cond_b,
            "ono_level": level,
            "discriminant": disc,
            "holomorphic": holo,
        })
    return CheckResult("ono/character", Status.PASS if ok else Status.FAIL,
                       {"character": entry.character, "stated": entry.disc, "constituents": rows})


def check_identities(entry: NewformEntry, depth: int = IDENTITY_DEPTH) -> CheckResult:
    if not entry.hecke_identities:
        return CheckResult("hecke identities", Status.SKIPPED, {"reason": "no identities catalogued"})
    ctx = entry.context
    rows = []
    ok = True
    for h in entry.hecke_identities:
        src = constituent_series(entry, entry.constituent(h.src), h.p * (depth - 1) + 1)
        dst = constituent_series(entry, entry.constituent(h.dst), depth)
        image = hecke_tp(src, h.p, ctx)
        expected = dst.scalar_mul(h.scalar)
        bad = next((n for n in range(depth) if image.coeffs[n] != expected.coeffs[n]), None)
        ok = ok and bad is None
        rows.append({"p": h.p, "src": h.src, "dst": h.dst, "scalar": h.scalar.pretty(),
                     "depth": depth, "first_mismatch": bad})
    return CheckResult("hecke identities", Status.PASS if ok else Status.FAIL, {"identities": rows})


def eigen_primes(entry: NewformEntry, bound: int = EIGEN_PRIME_BOUND) -> List[int]:
    return [p for p in primerange(2, bound + 1) if entry.level % p]


def check_eigenform(entry: NewformEntry, form: QSeries, primes: Sequence[int]) -> CheckResult:
    res = is_eigenform(form, primes, entry.context, upto=entry.sturm)
    details: Dict[str, Any] = {
        "upto": entry.sturm,
        "eigenvalues": {str(p): v.pretty() for p, v in res.eigenvalues.items()},
    }
    if not res.ok:
        details["failure"] = {"p": res.failure[0], "n": res.failure[1]}
    return CheckResult("eigenform", Status.PASS if res.ok else Status.FAIL, details)


def local_factors(entry: NewformEntry, form: QSeries, nmax: int) -> Tuple[Dict[int, LocalFactor], Dict[str, Any]]:
    """Local factors at p <= nmax.

    p | N: trace read off the form, det 0. Other p have det chi(p); the trace
    is predicted from f_p, except at primes dividing a polynomial discriminant
    (index divisors), where f_p is not visible mod p and the form's a_p is used.
    """
    ctx = entry.context
    rows = list(entry.merged_rows())
    factors: Dict[int, LocalFactor] = {}
    ramified, index_divisors, ambiguous, unmatched = [], [], [], []
    for p in primerange(2, nmax + 1):
        computed = form.coefficient(p)
        if entry.level % p == 0:
            ramified.append(p)
            factors[p] = LocalFactor(p, computed, ZERO)
            continue
        chi_p = ctx.chi(p)
        f_p = frobenius_order(entry.defining_polys, p)
        if f_p is RAMIFIED:
            index_divisors.append(p)
            factors[p] = LocalFactor(p, computed, CycNum.coerce(chi_p))
            continue
        res = resolve_trace(rows, f_p, chi_p, computed)
        if not res.candidates:
            unmatched.append(p)
        elif not res.predicted:
            ambiguous.append(p)
        factors[p] = LocalFactor(p, res.trace, CycNum.coerce(chi_p))
    return factors, {"ramified": ramified, "index_divisors": index_divisors,
                     "ambiguous": ambiguous, "unmatched": unmatched}


def check_euler(entry: NewformEntry, form: QSeries, report: VerificationReport,
                upto: Optional[int] = None) -> CheckResult:
    """Euler product of the Artin local factors against the form, up to the Sturm bound by default."""
    if not entry.merged_rows():
        return CheckResult("euler comparison", Status.SKIPPED, {"reason": "no Frobenius rows catalogued"})
    bound = upto or entry.sturm
    factors, info = local_factors(entry, form, bound)
    dirichlet = dirichlet_from_euler(factors, bound)
    cmp = compare(form, dirichlet, bound, coprime_to=entry.level)
    report.checked_upto = bound
    report.mismatches = list(cmp.mismatches)
    ok = cmp.ok and not info["unmatched"]
    details = {
        "upto": bound,
        "independent_mismatches": cmp.independent_mismatches,
        "dependent_mismatches": cmp.dependent_mismatches,
        "ramified_fallback": info["ramified"],
        "index_divisors": info["index_divisors"],
        "ambiguous_traces": info["ambiguous"],
        "unmatched_primes": info["unmatched"],
    }
    return CheckResult("euler comparison", Status.PASS if ok else Status.FAIL, details)


@dataclass
class Census:
    total: int = 0
    counts: Dict[Tuple[CycNum, int], int] = field(default_factory=dict)
    violations: List[Tuple[int, CycNum, int]] = field(default_factory=list)
    ramified: List[int] = field(default_factory=list)
    index_divisors: List[int] = field(default_factory=list)


def frobenius_pairs(entry: NewformEntry, form: QSeries, pmax: int, threads: int = 1) -> Census:
    """(a_p, f_p) for unramified p <= pmax, checked against the merged correspondence rows."""
    primes = [p for p in primerange(2, pmax + 1) if entry.level % p]
    rows = frobenius_census(entry.defining_polys, primes, threads)
    merged = entry.merged_rows()
    census = Census(ramified=[p for p in primerange(2, pmax + 1) if entry.level % p == 0])
    for p in primes:
        f_p = rows[p].f_p
        if f_p is RAMIFIED:
            census.index_divisors.append(p)
            continue
        key = (form.coefficient(p), f_p)
        census.total += 1
        census.counts[key] = census.counts.get(key, 0) + 1
        if key not in merged:
            census.violations.append((p, key[0], f_p))
    log(f"{entry.name}: census of {census.total} primes, {len(census.violations)} violations")
    return census


def check_census(entry: NewformEntry, census: Census) -> CheckResult:
    details = {
        "primes": census.total,
        "violations": [{"p": p, "a_p": a.pretty(), "f_p": f} for p, a, f in census.violations[:20]],
        "violation_count": len(census.violations),
        "index_divisors": census.index_divisors,
        "observed": sorted(f"{a.pretty()} @ f_p={f}" for a, f in census.counts),
    }
    return CheckResult("frobenius census", Status.FAIL if census.violations else Status.PASS, details)


def check_densities(entry: NewformEntry, census: Census, tolerance: float = DENSITY_TOLERANCE) -> CheckResult:
    rows = []
    ok = census.total > 0
    for (a_p, f_p), size in entry.merged_rows().items():
        observed = mpq(census.counts.get((a_p, f_p), 0), max(census.total, 1))
        expected = mpq(size, entry.group_order)
        good = abs(float(observed - expected)) <= tolerance
        ok = ok and good
        rows.append({"a_p": a_p.pretty(), "f_p": f_p, "observed": _share(observed),
                     "expected": _share(expected), "ok": good})
    return CheckResult("chebotarev densities", Status.PASS if ok else Status.FAIL,
                       {"tolerance": tolerance, "rows": rows})


def check_traces(entry: NewformEntry, form: QSeries, pmax: int, tolerance: float = DENSITY_TOLERANCE) -> CheckResult:
    if not entry.classes:
        return CheckResult("trace census", Status.SKIPPED, {"reason": "no class table catalogued"})
    exclude = entry.level_primes()
    dist = trace_distribution(form, pmax, exclude)
    expected: Dict[CycNum, mpq] = {}
    for c in entry.classes:
        expected[c.trace] = expected.get(c.trace, mpq(0)) + mpq(c.size, entry.group_order)
    rows = []
    ok = True
    for value in sorted(set(expected) | set(dist.proportions), key=lambda x: x.c):
        obs = dist.proportions.get(value, mpq(0))
        exp = expected.get(value, mpq(0))
        good = value in expected and abs(float(obs - exp)) <= tolerance
        ok = ok and good
        rows.append({"a_p": value.pretty(), "observed": _share(obs), "expected": _share(exp), "ok": good})
    estimate = estimate_group_order(form, pmax, exclude)
    return CheckResult("trace census", Status.PASS if ok else Status.FAIL, {
        "primes": dist.sample_size,
        "rows": rows,
        "group_order": entry.group_order,
        "estimated_group_order": None if estimate is None else round(estimate, 1),
    })


def check_classification(entry: NewformEntry, form: QSeries, pmax: int) -> CheckResult:
    dist = empirical_c(form, entry.character, pmax, entry.level_primes())
    if dist.sample_size < MIN_SAMPLE:
        return CheckResult("classification", Status.SKIPPED,
                           {"reason": f"{dist.sample_size} primes sampled, need {MIN_SAMPLE}"})
    verdict = classify(dist)
    ok = verdict.verdict is entry.expected_image
    return CheckResult("classification", Status.PASS if ok else Status.FAIL, {
        "verdict": verdict.verdict.value,
        "expected": entry.expected_image.value,
        "distance": None if verdict.distance is None else round(verdict.distance, 4),
        "c_zero_share": _share(verdict.c_zero),
        "primes": dist.sample_size,
    })


def required_form_precision(entry: NewformEntry, pmax: int, eigen_bound: int = EIGEN_PRIME_BOUND) -> int:
    return max(required_precision(eigen_primes(entry, eigen_bound), entry.sturm), pmax + 1, entry.sturm + 1)


def verify_entry(entry: NewformEntry, pmax: int = CENSUS_PMAX, *, form: Optional[QSeries] = None,
                 threads: int = 1, eigen_bound: int = EIGEN_PRIME_BOUND, identity_depth: int = IDENTITY_DEPTH,
                 tolerance: float = DENSITY_TOLERANCE,
                 on_step: Optional[Callable[[str], None]] = None) -> VerificationReport:
    bound = entry.sturm
    if pmax < bound:
        raise ValueError(f"pmax {pmax} is below the Sturm bound {bound} of {entry.name}")
    need = required_form_precision(entry, pmax, eigen_bound)
    if form is not None and form.prec < need:
        raise PrecisionError(f"{entry.name}: verification needs precision {need}, form has {form.prec}",
                             required=need, available=form.prec)

    report = VerificationReport(entry.name, entry.level, pmax, bound, notes=list(entry.notes))
    step = on_step or (lambda name: None)

    def run(name: str, fn: Callable[[], CheckResult]) -> CheckResult:
        step(name)
        start = time.time()
        result = fn()
        report.checks.append(result)
        log(f"{entry.name}: {name} {result.status.value} in {time.time() - start:.1f}s")
        return result

    run("catalog data", lambda: check_data(entry))
    run("ono/character", lambda: check_ono(entry))
    run("hecke identities", lambda: check_identities(entry, identity_depth))
    step("building form")
    if form is None:
        form = form_series(entry, need)
    run("eigenform", lambda: check_eigenform(entry, form, eigen_primes(entry, eigen_bound)))
    run("euler comparison", lambda: check_euler(entry, form, report))
    step("frobenius census")
    census = frobenius_pairs(entry, form, pmax, threads)
    report.ramified_primes = census.ramified
    report.index_divisors = census.index_divisors
    run("frobenius census", lambda: check_census(entry, census))
    run("chebotarev densities", lambda: check_densities(entry, census, tolerance))
    run("trace census", lambda: check_traces(entry, form, pmax, tolerance))
    run("classification", lambda: check_classification(entry, form, pmax))
    log(f"{entry.name}: verification {report.status.value}")
    return report


# ---------------- splitting tables ----------------
@dataclass(frozen=True)
class SplitRow:
    p: int
    a_p: CycNum
    f_p: int
    splits: int
    index_divisor: bool = False   # f_p taken from the Frobenius trace, not from factoring mod p


def _split_row(entry: NewformEntry, p: int, a_p: CycNum, f_p,
               merged: Mapping[Tuple[CycNum, int], int]) -> SplitRow:
    index_divisor = f_p is RAMIFIED
    if index_divisor:
        f_p = element_order(a_p, CycNum.coerce(entry.context.chi(p)))
        if f_p is None:
            raise CatalogError(f"{entry.name}: a_p = {a_p.pretty()} at p={p} is not the trace of a finite-order class")
    if (a_p, f_p) not in merged:
        raise CatalogError(f"{entry.name}: (a_p, f_p) = ({a_p.pretty()}, {f_p}) at p={p} is not in the table")
    return SplitRow(p, a_p, f_p, splitting_count(entry.group_order, f_p), index_divisor)


def splitting_table(entry: NewformEntry, p: int, form: Optional[QSeries] = None):
    """(a_p, f_p, number of primes above p) for p not dividing the level, or RAMIFIED."""
    if entry.level % p == 0:
        return RAMIFIED
    if form is None or form.prec <= p:
        form = form_series(entry, p + 1)
    f_p = frobenius_order(entry.defining_polys, p)
    return _split_row(entry, p, form.coefficient(p), f_p, entry.merged_rows())


def splitting_rows(entry: NewformEntry, pmax: int, threads: int = 1) -> List[Union[SplitRow, Tuple[int, Any]]]:
    """splitting_table for every prime <= pmax; ramified primes appear as (p, RAMIFIED)."""
    form = form_series(entry, pmax + 1)
    primes = list(primerange(2, pmax + 1))
    census = frobenius_census(entry.defining_polys, [p for p in primes if entry.level % p], threads)
    merged = entry.merged_rows()
    out: List[Union[SplitRow, Tuple[int, Any]]] = []
    for p in primes:
        if entry.level % p == 0:
            out.append((p, RAMIFIED))
        else:
            out.append(_split_row(entry, p, form.coefficient(p), census[p].f_p, merged))
    return out

#!/usr/bin/env python3
# part2_qseries.py — truncated power series in u = q^(1/scale) over Q(zeta8)

import math
from typing import Iterable, List, Optional, Sequence, Tuple

from part0_arith import CycNum, ZERO, ONE, parse_cycnum


class PrecisionError(ValueError):
    """Raised when a coefficient beyond the known precision is needed."""

    def __init__(self, message: str, required: Optional[int] = None, available: Optional[int] = None):
        super().__init__(message)
        self.required = required
        self.available = available


class ScaleMismatchError(ValueError):
    pass


def _coerce_list(coeffs: Iterable) -> List[CycNum]:
    out = []
    for c in coeffs:
        if isinstance(c, CycNum):
            out.append(c if c else ZERO)
        else:
            out.append(CycNum.coerce(c) if c else ZERO)
    return out


class QSeries:
    """sum_{n < prec} coeffs[n] * u^n with u = q^(1/scale).

    Values are immutable; every operation returns a new series whose prec is
    the largest one the inputs justify.
    """

    __slots__ = ("scale", "prec", "coeffs")

    def __init__(self, coeffs: Sequence, scale: int = 1, prec: Optional[int] = None):
        if scale < 1:
            raise ValueError("scale must be a positive integer")
        data = _coerce_list(coeffs)
        if prec is None:
            prec = len(data)
        if prec < 1:
            raise ValueError("prec must be at least 1")
        if len(data) < prec:
            data.extend([ZERO] * (prec - len(data)))
        elif len(data) > prec:
            del data[prec:]
        self.scale = scale
        self.prec = prec
        self.coeffs = data

    # ---------------- constructors ----------------
    @classmethod
    def zero(cls, prec: int, scale: int = 1) -> "QSeries":
        return cls([], scale, prec)

    @classmethod
    def one(cls, prec: int, scale: int = 1) -> "QSeries":
        return cls([ONE], scale, prec)

    @classmethod
    def from_terms(cls, terms: Iterable[Tuple[int, object]], prec: int, scale: int = 1) -> "QSeries":
        """Build from (exponent, value) pairs; exponents >= prec are dropped."""
        data = [ZERO] * prec
        for n, v in terms:
            if 0 <= n < prec and v:
                data[n] = data[n] + (v if isinstance(v, CycNum) else CycNum.coerce(v))
        return cls._wrap(data, scale)

    @classmethod
    def _wrap(cls, data: List[CycNum], scale: int) -> "QSeries":
        obj = object.__new__(cls)
        obj.scale = scale
        obj.prec = len(data)
        obj.coeffs = data
        return obj

    # ---------------- access ----------------
    def coefficient(self, n: int) -> CycNum:
        if n < 0 or n >= self.prec:
            raise PrecisionError(f"coefficient u^{n} is beyond precision {self.prec}",
                                 required=n + 1, available=self.prec)
        return self.coeffs[n]

    __getitem__ = coefficient

    def __len__(self) -> int:
        return self.prec

    def valuation(self) -> Optional[int]:
        for n, c in enumerate(self.coeffs):
            if c:
                return n
        return None

    def nonzero_terms(self) -> List[Tuple[int, CycNum]]:
        return [(n, c) for n, c in enumerate(self.coeffs) if c]

    def truncate(self, prec: int) -> "QSeries":
        if prec > self.prec:
            raise PrecisionError(f"cannot extend precision {self.prec} to {prec}",
                                 required=prec, available=self.prec)
        return QSeries._wrap(self.coeffs[:prec], self.scale)

    def with_coefficient(self, n: int, value) -> "QSeries":
        self.coefficient(n)
        data = list(self.coeffs)
        data[n] = parse_cycnum(value) if not isinstance(value, CycNum) else value
        return QSeries._wrap(data, self.scale)

    def __eq__(self, other) -> bool:
        if not isinstance(other, QSeries):
            return NotImplemented
        return self.scale == other.scale and self.prec == other.prec and self.coeffs == other.coeffs

    def __repr__(self) -> str:
        head = ", ".join(f"{n}: {c.pretty()}" for n, c in self.nonzero_terms()[:6])
        return f"QSeries(scale={self.scale}, prec={self.prec}, {{{head}}})"

    # ---------------- ring operations ----------------
    def _check_scale(self, other: "QSeries") -> None:
        if self.scale != other.scale:
            raise ScaleMismatchError(f"scale {self.scale} vs {other.scale}")

    def __add__(self, other: "QSeries") -> "QSeries":
        if not isinstance(other, QSeries):
            return NotImplemented
        self._check_scale(other)
        p = min(self.prec, other.prec)
        a, b = self.coeffs, other.coeffs
        return QSeries._wrap([a[n] + b[n] if b[n] else a[n] for n in range(p)], self.scale)

    def __neg__(self) -> "QSeries":
        return QSeries._wrap([-c if c else ZERO for c in self.coeffs], self.scale)

    def __sub__(self, other: "QSeries") -> "QSeries":
        if not isinstance(other, QSeries):
            return NotImplemented
        return self + (-other)

    def scalar_mul(self, c) -> "QSeries":
        c = c if isinstance(c, CycNum) else CycNum.coerce(c)
        if not c:
            return QSeries.zero(self.prec, self.scale)
        return QSeries._wrap([c * x if x else ZERO for x in self.coeffs], self.scale)

    def __rmul__(self, c) -> "QSeries":
        return self.scalar_mul(c)

    def __mul__(self, other) -> "QSeries":
        if not isinstance(other, QSeries):
            return self.scalar_mul(other)
        self._check_scale(other)
        p = min(self.prec, other.prec)
        out = [ZERO] * p
        b_terms = [(j, c) for j, c in enumerate(other.coeffs[:p]) if c]
        for i, a in enumerate(self.coeffs[:p]):
            if not a:
                continue
            for j, b in b_terms:
                k = i + j
                if k >= p:
                    break
                out[k] = out[k] + a * b
        return QSeries._wrap(out, self.scale)

    def invert(self) -> "QSeries":
        a = self.coeffs
        if not a[0]:
            raise ZeroDivisionError("series with zero constant term has no inverse")
        inv0 = a[0].inverse()
        a_terms = [(k, c) for k, c in enumerate(a) if c and k > 0]
        out = [inv0]
        for n in range(1, self.prec):
            acc = ZERO
            for k, c in a_terms:
                if k > n:
                    break
                b = out[n - k]
                if b:
                    acc = acc + c * b
            out.append(-(acc * inv0) if acc else ZERO)
        return QSeries._wrap(out, self.scale)

    # ---------------- grid changes ----------------
    def rescale(self, d: int) -> "QSeries":
        """Substitute z -> d*z: u^n becomes u^(n*d) on the same q-grid.

        The result lives on the coarsest grid that holds it: scale s/g with
        g = gcd(d, s), exponent n*d/g.
        """
        if d < 1:
            raise ValueError("rescale factor must be a positive integer")
        g = math.gcd(d, self.scale)
        step = d // g
        new_prec = step * (self.prec - 1) + 1
        data = [ZERO] * new_prec
        for n, c in enumerate(self.coeffs):
            if c:
                data[n * step] = c
        return QSeries._wrap(data, self.scale // g)

    def reinterpret(self, scale: int) -> "QSeries":
        """Move to a coarser grid; every nonzero exponent must land on it."""
        if self.scale % scale:
            raise ScaleMismatchError(f"scale {scale} does not divide {self.scale}")
        ratio = self.scale // scale
        if ratio == 1:
            return self
        for n, c in enumerate(self.coeffs):
            if c and n % ratio:
                raise ScaleMismatchError(f"u^{n} has no place on the scale-{scale} grid")
        return QSeries._wrap(self.coeffs[::ratio][: (self.prec - 1) // ratio + 1], scale)

    # ---------------- text format ----------------
    def dump(self) -> str:
        lines = [f"scale={self.scale} prec={self.prec}"]
        lines.extend(f"{n}: {c}" for n, c in self.nonzero_terms())
        return "\n".join(lines) + "\n"

    @classmethod
    def from_dump(cls, text: str) -> "QSeries":
        rows = [ln.strip() for ln in text.splitlines() if ln.strip() and not ln.lstrip().startswith("#")]
        if not rows:
            raise ValueError("empty series dump")
        header = dict(part.split("=", 1) for part in rows[0].split())
        try:
            scale, prec = int(header["scale"]), int(header["prec"])
        except (KeyError, ValueError):
            raise ValueError(f"bad series header: {rows[0]!r}")
        terms = []
        for ln in rows[1:]:
            n, value = ln.split(":", 1)
            terms.append((int(n), parse_cycnum(value)))
        return cls.from_terms(terms, prec, scale)


def linear_combination(series: Sequence[QSeries], coeffs: Sequence) -> QSeries:
    """sum c_i f_i at the smallest input precision."""
    if not series or len(series) != len(coeffs):
        raise ValueError("need one coefficient per series")
    scale = series[0].scale
    prec = min(f.prec for f in series)
    out = QSeries.zero(prec, scale)
    for c, f in zip(coeffs, series):
        if f.scale != scale:
            raise ScaleMismatchError(f"scale {scale} vs {f.scale}")
        out = out + f.scalar_mul(c)
    return out

"""Exact arithmetic in cyclotomic fields Q(zeta_n), with certified embeddings.

Field elements are kept on the power basis 1, zeta, ..., zeta^(phi(n)-1)
modulo the n-th cyclotomic polynomial, with Fraction coefficients, so all
ring and field operations are exact.  Numerical embeddings into C carry an
explicit error radius.  For n in {3, 4, 6} the ring of integers Z[zeta_n]
is a discrete lattice in C, and the distance from a complex number to that
lattice can be bounded from both sides; this is the geometric test the
volume verdicts rest on.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Sequence, Union

Rat = Union[int, Fraction]

EPS = 2.220446049250313e-16
# |computed root - exact root| for cos/sin of an exactly representable angle
_ROOT_ERR = 4.0 * EPS

_LATTICE_FIELDS = (3, 4, 6)


def euler_phi(n: int) -> int:
    if n < 1:
        raise ValueError(f"euler_phi needs n >= 1, got {n}")
    result = n
    m = n
    p = 2
    while p * p <= m:
        if m % p == 0:
            while m % p == 0:
                m //= p
            result -= result // p
        p += 1
    if m > 1:
        result -= result // m
    return result


def _poly_divmod_int(num: list[int], den: list[int]) -> tuple[list[int], list[int]]:
    """Exact division of integer polynomials (ascending coefficients)."""
    num = list(num)
    quot = [0] * (len(num) - len(den) + 1)
    for shift in range(len(num) - len(den), -1, -1):
        c = num[shift + len(den) - 1]
        if c % den[-1] != 0:
            raise ArithmeticError("non-exact integer polynomial division")
        q = c // den[-1]
        quot[shift] = q
        if q:
            for k, d in enumerate(den):
                num[shift + k] -= q * d
    while len(num) > 1 and num[-1] == 0:
        num.pop()
    return quot, num


@lru_cache(maxsize=None)
def cyclotomic_polynomial(n: int) -> tuple[int, ...]:
    """Coefficients of the n-th cyclotomic polynomial, ascending degree."""
    if n < 1:
        raise ValueError(f"cyclotomic polynomial needs n >= 1, got {n}")
    if n == 1:
        return (-1, 1)
    poly = [-1] + [0] * (n - 1) + [1]  # x^n - 1
    for d in range(1, n):
        if n % d == 0:
            poly, rem = _poly_divmod_int(poly, list(cyclotomic_polynomial(d)))
            if rem != [0]:
                raise AssertionError("cyclotomic division left a remainder")
    return tuple(poly)


@lru_cache(maxsize=None)
def _power_table(n: int) -> tuple[tuple[Fraction, ...], ...]:
    """zeta_n^k on the power basis, for k = 0 .. max(n-1, 2*phi(n)-2)."""
    phi = euler_phi(n)
    mod = cyclotomic_polynomial(n)
    top = [-Fraction(c) for c in mod[:-1]]  # x^phi = top(x), Phi is monic
    table: list[tuple[Fraction, ...]] = []
    for k in range(max(n, 2 * phi - 1)):
        if k < phi:
            row = [Fraction(0)] * phi
            row[k] = Fraction(1)
        else:
            prev = table[k - 1]
            row = [Fraction(0)] * phi
            for idx in range(phi - 1):
                row[idx + 1] += prev[idx]
            lead = prev[phi - 1]
            if lead:
                for idx in range(phi):
                    row[idx] += lead * top[idx]
        table.append(tuple(row))
    return tuple(table)


@lru_cache(maxsize=None)
def _root_table(n: int) -> tuple[complex, ...]:
    phi = euler_phi(n)
    return tuple(
        complex(math.cos(2.0 * math.pi * k / n), math.sin(2.0 * math.pi * k / n))
        for k in range(phi)
    )


def _poly_xgcd(a: list[Fraction], b: list[Fraction]) -> tuple[list[Fraction], list[Fraction]]:
    """Return (g, s) with s*a = g mod b and g a constant gcd (a invertible mod b)."""

    def trim(p: list[Fraction]) -> list[Fraction]:
        while len(p) > 1 and p[-1] == 0:
            p.pop()
        return p

    def divmod_frac(num: list[Fraction], den: list[Fraction]):
        num = list(num)
        quot = [Fraction(0)] * max(len(num) - len(den) + 1, 1)
        for shift in range(len(num) - len(den), -1, -1):
            q = num[shift + len(den) - 1] / den[-1]
            quot[shift] = q
            if q:
                for k, d in enumerate(den):
                    num[shift + k] -= q * d
        return trim(quot), trim(num)

    r0, r1 = trim(list(a)), trim(list(b))
    s0, s1 = [Fraction(1)], [Fraction(0)]
    while r1 != [Fraction(0)]:
        q, r = divmod_frac(r0, r1)
        r0, r1 = r1, r
        # s_next = s0 - q*s1
        prod = [Fraction(0)] * (len(q) + len(s1) - 1)
        for i, qi in enumerate(q):
            if qi:
                for j, sj in enumerate(s1):
                    prod[i + j] += qi * sj
        width = max(len(s0), len(prod))
        s_next = [
            (s0[i] if i < len(s0) else Fraction(0)) - (prod[i] if i < len(prod) else Fraction(0))
            for i in range(width)
        ]
        s0, s1 = s1, trim(s_next)
    return r0, s0


class CycNum:
    """An element of Q(zeta_n) on the power basis."""

    __slots__ = ("n", "coeffs")

    def __init__(self, n: int, coeffs: Sequence[Rat]):
        if n < 3:
            raise ValueError(f"cyclotomic field index must be >= 3, got {n}")
        phi = euler_phi(n)
        if len(coeffs) != phi:
            raise ValueError(f"expected {phi} coefficients for Q(zeta_{n}), got {len(coeffs)}")
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "coeffs", tuple(Fraction(c) for c in coeffs))

    def __setattr__(self, name, value):
        raise AttributeError("CycNum is immutable")

    # -- constructors -------------------------------------------------

    @classmethod
    def zero(cls, n: int) -> "CycNum":
        return cls(n, [0] * euler_phi(n))

    @classmethod
    def one(cls, n: int) -> "CycNum":
        return cls.from_rational(n, 1)

    @classmethod
    def from_rational(cls, n: int, value: Rat) -> "CycNum":
        coeffs = [Fraction(0)] * euler_phi(n)
        coeffs[0] = Fraction(value)
        return cls(n, coeffs)

    # -- ring structure -----------------------------------------------

    def _check(self, other: "CycNum") -> None:
        if self.n != other.n:
            raise ValueError(f"mixed cyclotomic fields: Q(zeta_{self.n}) vs Q(zeta_{other.n})")

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        self._check(other)
        return CycNum(self.n, [a + b for a, b in zip(self.coeffs, other.coeffs)])

    __radd__ = __add__

    def __neg__(self):
        return CycNum(self.n, [-a for a in self.coeffs])

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        self._check(other)
        return CycNum(self.n, [a - b for a, b in zip(self.coeffs, other.coeffs)])

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            q = Fraction(other)
            return CycNum(self.n, [a * q for a in self.coeffs])
        if not isinstance(other, CycNum):
            return NotImplemented
        self._check(other)
        phi = len(self.coeffs)
        conv = [Fraction(0)] * (2 * phi - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    if b:
                        conv[i + j] += a * b
        table = _power_table(self.n)
        out = [Fraction(0)] * phi
        for k, c in enumerate(conv):
            if c:
                row = table[k]
                for idx in range(phi):
                    out[idx] += c * row[idx]
        return CycNum(self.n, out)

    __rmul__ = __mul__

    def inverse(self) -> "CycNum":
        if not self:
            raise ZeroDivisionError("inverse of zero in a cyclotomic field")
        mod = [Fraction(c) for c in cyclotomic_polynomial(self.n)]
        g, s = _poly_xgcd(list(self.coeffs), mod)
        if len(g) != 1 or g[0] == 0:
            raise AssertionError("element not invertible modulo the cyclotomic polynomial")
        inv_g = Fraction(1) / g[0]
        phi = len(self.coeffs)
        # reduce s * inv_g modulo the cyclotomic polynomial
        table = _power_table(self.n)
        out = [Fraction(0)] * phi
        for k, c in enumerate(s):
            c = c * inv_g
            if c:
                row = table[k] if k < len(table) else None
                if row is None:
                    raise AssertionError("xgcd cofactor degree out of range")
                for idx in range(phi):
                    out[idx] += c * row[idx]
        return CycNum(self.n, out)

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            q = Fraction(other)
            return CycNum(self.n, [a / q for a in self.coeffs])
        if not isinstance(other, CycNum):
            return NotImplemented
        self._check(other)
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other * self.inverse()

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inverse() ** (-k)
        result = CycNum.one(self.n)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def _coerce(self, other):
        if isinstance(other, CycNum):
            return other
        if isinstance(other, (int, Fraction)):
            return CycNum.from_rational(self.n, other)
        return NotImplemented

    # -- structure queries ----------------------------------------------

    def __bool__(self) -> bool:
        return any(self.coeffs)

    def __eq__(self, other) -> bool:
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self.n == other.n and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash((self.n, self.coeffs))

    def is_rational(self) -> bool:
        return not any(self.coeffs[1:])

    def is_integral(self) -> bool:
        """True when the element lies in Z[zeta_n]."""
        return all(c.denominator == 1 for c in self.coeffs)

    def conjugate(self) -> "CycNum":
        """Complex conjugation, zeta^k -> zeta^(n-k)."""
        table = _power_table(self.n)
        phi = len(self.coeffs)
        out = [Fraction(0)] * phi
        for k, c in enumerate(self.coeffs):
            if c:
                row = table[(self.n - k) % self.n]
                for idx in range(phi):
                    out[idx] += c * row[idx]
        return CycNum(self.n, out)

    # -- output ----------------------------------------------------------

    def embed(self) -> "ComplexInterval":
        """Numerical image under zeta_n -> exp(2 pi i / n), with error radius."""
        roots = _root_table(self.n)
        acc = 0.0 + 0.0j
        absacc = 0.0
        for c, root in zip(self.coeffs, roots):
            fc = float(c)
            acc += fc * root
            absacc += abs(fc)
        # root error + Fraction->float rounding + phi products and sums
        rad = absacc * (_ROOT_ERR + EPS * (len(self.coeffs) + 4.0))
        return ComplexInterval(acc.real, acc.imag, rad)

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "coeffs": [[c.numerator, c.denominator] for c in self.coeffs],
        }

    @classmethod
    def from_json(cls, data: dict) -> "CycNum":
        return cls(data["n"], [Fraction(num, den) for num, den in data["coeffs"]])

    def __repr__(self) -> str:
        parts = []
        for k, c in enumerate(self.coeffs):
            if not c:
                continue
            if k == 0:
                parts.append(str(c))
            elif k == 1:
                parts.append(f"{c}*z" if c != 1 else "z")
            else:
                parts.append(f"{c}*z^{k}" if c != 1 else f"z^{k}")
        body = " + ".join(parts) if parts else "0"
        return f"CycNum({self.n}: {body})"


def zeta(n: int, k: int = 1) -> CycNum:
    """zeta_n^k as an exact field element."""
    if n < 3:
        raise ValueError(f"cyclotomic field index must be >= 3, got {n}")
    table = _power_table(n)
    return CycNum(n, table[k % n])


@dataclass(frozen=True)
class RealInterval:
    """A real value known to lie in [mid - rad, mid + rad]."""

    mid: float
    rad: float

    def __post_init__(self):
        if not (self.rad >= 0.0) or math.isnan(self.mid):
            raise ValueError(f"bad interval: mid={self.mid}, rad={self.rad}")

    @classmethod
    def exact(cls, value: float) -> "RealInterval":
        return cls(float(value), 0.0)

    @classmethod
    def from_bounds(cls, lo: float, hi: float) -> "RealInterval":
        if hi < lo:
            raise ValueError(f"empty interval [{lo}, {hi}]")
        mid = 0.5 * (lo + hi)
        rad = 0.5 * (hi - lo) + 2.0 * EPS * (abs(lo) + abs(hi))
        return cls(mid, rad)

    @property
    def lo(self) -> float:
        return self.mid - self.rad

    @property
    def hi(self) -> float:
        return self.mid + self.rad

    def contains(self, value: float) -> bool:
        return self.lo <= value <= self.hi

    def _slop(self, mid: float, rad: float) -> float:
        return rad + 2.0 * EPS * (abs(mid) + rad)

    def __add__(self, other):
        if isinstance(other, (int, float)):
            other = RealInterval.exact(other)
        if not isinstance(other, RealInterval):
            return NotImplemented
        mid = self.mid + other.mid
        return RealInterval(mid, self._slop(mid, self.rad + other.rad))

    __radd__ = __add__

    def __neg__(self):
        return RealInterval(-self.mid, self.rad)

    def __sub__(self, other):
        if isinstance(other, (int, float)):
            other = RealInterval.exact(other)
        if not isinstance(other, RealInterval):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, float)):
            other = RealInterval.exact(other)
        if not isinstance(other, RealInterval):
            return NotImplemented
        mid = self.mid * other.mid
        rad = (
            abs(self.mid) * other.rad
            + abs(other.mid) * self.rad
            + self.rad * other.rad
        )
        return RealInterval(mid, self._slop(mid, rad))

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, float)):
            other = RealInterval.exact(other)
        if not isinstance(other, RealInterval):
            return NotImplemented
        if other.lo <= 0.0 <= other.hi:
            raise ZeroDivisionError("division by an interval containing zero")
        quots = [
            self.lo / other.lo, self.lo / other.hi,
            self.hi / other.lo, self.hi / other.hi,
        ]
        return RealInterval.from_bounds(min(quots), max(quots))

    def __rtruediv__(self, other):
        if isinstance(other, (int, float)):
            return RealInterval.exact(other) / self
        return NotImplemented

    def to_json(self) -> dict:
        return {"mid": self.mid, "rad": self.rad}


@dataclass(frozen=True)
class ComplexInterval:
    """A complex value within distance rad of the midpoint re + i*im."""

    re: float
    im: float
    rad: float

    def __post_init__(self):
        if not (self.rad >= 0.0):
            raise ValueError(f"negative radius {self.rad}")

    @property
    def mid(self) -> complex:
        return complex(self.re, self.im)

    def _slop(self, rad: float) -> float:
        return rad + 4.0 * EPS * (abs(self.re) + abs(self.im) + rad)

    def __add__(self, other):
        if isinstance(other, (int, float, complex)):
            other = ComplexInterval(complex(other).real, complex(other).imag, 0.0)
        if not isinstance(other, ComplexInterval):
            return NotImplemented
        re, im = self.re + other.re, self.im + other.im
        rad = self.rad + other.rad + 4.0 * EPS * (abs(re) + abs(im))
        return ComplexInterval(re, im, rad)

    __radd__ = __add__

    def __neg__(self):
        return ComplexInterval(-self.re, -self.im, self.rad)

    def __sub__(self, other):
        if isinstance(other, (int, float, complex)):
            other = ComplexInterval(complex(other).real, complex(other).imag, 0.0)
        if not isinstance(other, ComplexInterval):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, float, complex)):
            other = ComplexInterval(complex(other).real, complex(other).imag, 0.0)
        if not isinstance(other, ComplexInterval):
            return NotImplemented
        prod = self.mid * other.mid
        m1, m2 = abs(self.mid), abs(other.mid)
        rad = m1 * other.rad + m2 * self.rad + self.rad * other.rad
        rad += 8.0 * EPS * (m1 * m2 + abs(prod))
        return ComplexInterval(prod.real, prod.imag, rad)

    __rmul__ = __mul__

    def mul_real(self, value: RealInterval) -> "ComplexInterval":
        """Multiply by a real interval."""
        m = abs(self.mid)
        re, im = self.re * value.mid, self.im * value.mid
        rad = m * value.rad + abs(value.mid) * self.rad + self.rad * value.rad
        rad += 8.0 * EPS * (m * abs(value.mid) + abs(re) + abs(im))
        return ComplexInterval(re, im, rad)

    def real_part(self) -> RealInterval:
        return RealInterval(self.re, self.rad + 2.0 * EPS * abs(self.re))

    def imag_part(self) -> RealInterval:
        return RealInterval(self.im, self.rad + 2.0 * EPS * abs(self.im))

    def abs_bounds(self) -> RealInterval:
        m = abs(self.mid)
        return RealInterval.from_bounds(max(0.0, m - self.rad), m + self.rad + 4.0 * EPS * m)

    def to_json(self) -> dict:
        return {"re": self.re, "im": self.im, "rad": self.rad}


def _lattice_coordinates(value: complex, n: int) -> tuple[float, float]:
    """Real coordinates (a, b) with value ~ a + b*zeta_n."""
    if n == 4:
        return value.real, value.imag
    b = 2.0 * value.imag / math.sqrt(3.0)
    if n == 3:
        return value.real + 0.5 * b, b
    # n == 6
    return value.real - 0.5 * b, b


def lattice_distance(value: Union[complex, ComplexInterval], n: int) -> RealInterval:
    """Certified Euclidean distance from value to the lattice Z[zeta_n].

    Only n in {3, 4, 6} give discrete rings of integers in C (phi(n) <= 2);
    other indices are rejected because the image of Z[zeta_n] is dense and
    the distance carries no information.
    """
    if n not in _LATTICE_FIELDS:
        raise ValueError(
            f"Z[zeta_{n}] is not a discrete subset of C; lattice distance "
            f"is defined only for n in {_LATTICE_FIELDS}"
        )
    if not isinstance(value, ComplexInterval):
        value = ComplexInterval(complex(value).real, complex(value).imag, 0.0)
    root = complex(math.cos(2.0 * math.pi / n), math.sin(2.0 * math.pi / n))
    mid = value.mid
    a, b = _lattice_coordinates(mid, n)
    best = math.inf
    # any nearest lattice point sits within unit box of the rounded coordinates
    for q in range(math.floor(b) - 2, math.floor(b) + 4):
        for p in range(math.floor(a) - 2, math.floor(a) + 4):
            cand = p + q * root
            best = min(best, abs(mid - cand))
    # float slop: coordinates, root and distance evaluation
    slop = 64.0 * EPS * (abs(mid) + abs(a) + abs(b) + best + 1.0)
    lo = max(0.0, best - value.rad - slop)
    hi = best + value.rad + slop
    return RealInterval.from_bounds(lo, hi)

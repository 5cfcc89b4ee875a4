"""Chen iterated integrals of length two along loops on the Fermat curve.

Every path of interest is a word in translates of one base path under the
two scaling automorphisms, so a word is stored as letters (i, j, sign).
Single integrals of the normalized forms land in Z[zeta_n]; length-two
integrals are affine expressions A * x + B over Q(zeta_n) in a single
transcendental symbol x_{r,s,l,m} attached to the ordered form pair.  The
generic engine folds the composition rule over a word; the closed forms
for the standard loops are implemented separately so the two can be
checked against each other.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from .cyclotomic import ComplexInterval, CycNum, Rat, RealInterval, zeta
from .forms import FormIdx


@dataclass(frozen=True)
class PathWord:
    """A concatenation of translated base paths, each run forward or back."""

    n: int
    letters: tuple[tuple[int, int, int], ...]

    def __post_init__(self):
        for (i, j, sign) in self.letters:
            if sign not in (1, -1):
                raise ValueError(f"letter sign must be +-1, got {sign}")

    def __mul__(self, other: "PathWord") -> "PathWord":
        if self.n != other.n:
            raise ValueError("mixed curve indices")
        return PathWord(self.n, self.letters + other.letters)

    def inverse(self) -> "PathWord":
        return PathWord(
            self.n, tuple((i, j, -sign) for (i, j, sign) in reversed(self.letters))
        )

    def translate(self, a: int, b: int) -> "PathWord":
        n = self.n
        return PathWord(
            n, tuple(((i + a) % n, (j + b) % n, sign) for (i, j, sign) in self.letters)
        )


def base_path(n: int) -> PathWord:
    """The arc t -> (t, (1 - t^n)^(1/n)) joining the two coordinate points."""
    return PathWord(n, ((0, 0, 1),))


def kappa_word(n: int) -> PathWord:
    """The base loop: the commutator-like square of translated arcs."""
    return PathWord(n, ((0, 0, 1), (0, 1, -1), (1, 1, 1), (1, 0, -1)))


def gamma_path(n: int, j: int) -> PathWord:
    """The connecting path from the base point to its beta^j translate."""
    return PathWord(n, ((0, 0, 1), (0, j % n, -1)))


def gamma_loop(n: int, i: int, j: int) -> PathWord:
    """The basis loop at the common base point: conjugated (i, j) translate."""
    conn = gamma_path(n, j)
    return conn * kappa_word(n).translate(i, j) * conn.inverse()


def single_integral(word: PathWord, f: FormIdx) -> CycNum:
    """Integral of a normalized form along a word; always in Z[zeta_n]."""
    if word.n != f.n:
        raise ValueError("curve index mismatch between path and form")
    total = CycNum.zero(word.n)
    for (i, j, sign) in word.letters:
        total = total + zeta(word.n, i * f.r + j * f.s) * sign
    return total


def loop_period(n: int, i: int, j: int, f: FormIdx) -> CycNum:
    """Closed form of the kappa-loop period: (1-z^r)(1-z^s) z^(ir+js)."""
    one = CycNum.one(n)
    return (one - zeta(n, f.r)) * (one - zeta(n, f.s)) * zeta(n, i * f.r + j * f.s)


@dataclass(frozen=True)
class ItExpr:
    """An exact affine expression A * x_{r,s,l,m} + B over Q(zeta_n)."""

    n: int
    x_index: tuple[int, int, int, int]
    A: CycNum
    B: CycNum

    def __post_init__(self):
        if self.A.n != self.n or self.B.n != self.n:
            raise ValueError("coefficient field does not match the curve index")

    def __add__(self, other: "ItExpr") -> "ItExpr":
        if self.n != other.n:
            raise ValueError("mixed curve indices")
        if self.x_index != other.x_index:
            raise ValueError(
                f"cannot add expressions in different symbols "
                f"{self.x_index} vs {other.x_index}"
            )
        return ItExpr(self.n, self.x_index, self.A + other.A, self.B + other.B)

    def __sub__(self, other: "ItExpr") -> "ItExpr":
        return self + other.scale(-1)

    def scale(self, c: Union[Rat, CycNum]) -> "ItExpr":
        return ItExpr(self.n, self.x_index, self.A * c, self.B * c)

    def evaluate(self, x: RealInterval) -> ComplexInterval:
        """Numerical enclosure given an enclosure of the symbol's value."""
        return self.A.embed().mul_real(x) + self.B.embed()

    def to_json(self) -> dict:
        return {
            "x_index": list(self.x_index),
            "A": self.A.to_json(),
            "B": self.B.to_json(),
        }


def x_index_for(f1: FormIdx, f2: FormIdx) -> tuple[int, int, int, int]:
    return (f1.r, f1.s, f2.r, f2.s)


def iterated_integral(word: PathWord, f1: FormIdx, f2: FormIdx) -> ItExpr:
    """Fold the composition rule over the word.

    For letters ell the building blocks are the forward values
    int_ell w1 w2 = twist * x and int_ell w = zeta-power, the inversion rule
    int_{ell^-1} = -int_ell + (int_ell w1)(int_ell w2), and composition
    int_{uv} = int_u + int_v + (int_u w1)(int_v w2).
    """
    n = word.n
    if f1.n != n or f2.n != n:
        raise ValueError("curve index mismatch between path and forms")
    acc_a = CycNum.zero(n)
    acc_b = CycNum.zero(n)
    first_sum = CycNum.zero(n)  # running single integral of f1
    for (i, j, sign) in word.letters:
        twist = zeta(n, i * (f1.r + f2.r) + j * (f1.s + f2.s))
        e1 = zeta(n, i * f1.r + j * f1.s)
        e2 = zeta(n, i * f2.r + j * f2.s)
        if sign > 0:
            letter_a, letter_b = twist, CycNum.zero(n)
            s1, s2 = e1, e2
        else:
            # reversal: negate, then add the product of single integrals
            letter_a, letter_b = -twist, twist
            s1, s2 = -e1, -e2
        acc_a = acc_a + letter_a
        acc_b = acc_b + letter_b + first_sum * s2
        first_sum = first_sum + s1
    return ItExpr(n, x_index_for(f1, f2), acc_a, acc_b)


def closed_form_kappa(n: int, i: int, j: int, f1: FormIdx, f2: FormIdx) -> ItExpr:
    """Length-two integral along the (i, j) translate of the base loop."""
    r, s, l, m = f1.r, f1.s, f2.r, f2.s
    one = CycNum.one(n)
    twist = zeta(n, i * (r + l) + j * (s + m))
    coeff_a = (one - zeta(n, r + l)) * (one - zeta(n, s + m))
    coeff_b = (one - zeta(n, s)) * (
        zeta(n, r + l) + zeta(n, l + m) - zeta(n, m) - zeta(n, l)
    )
    return ItExpr(n, x_index_for(f1, f2), twist * coeff_a, twist * coeff_b)


def closed_form_gamma(n: int, i: int, j: int, f1: FormIdx, f2: FormIdx) -> ItExpr:
    """Length-two integral along the based loop gamma_{i,j}.

    Equals the kappa value plus base-point corrections from the connecting
    path: + (1-z^(js))(1-z^l)(1-z^m) z^(il+jm)
          - (1-z^(jm))(1-z^r)(1-z^s) z^(ir+js).
    """
    r, s, l, m = f1.r, f1.s, f2.r, f2.s
    one = CycNum.one(n)
    base = closed_form_kappa(n, i, j, f1, f2)
    corr = (one - zeta(n, j * s)) * (one - zeta(n, l)) * (one - zeta(n, m)) * zeta(
        n, i * l + j * m
    ) - (one - zeta(n, j * m)) * (one - zeta(n, r)) * (one - zeta(n, s)) * zeta(
        n, i * r + j * s
    )
    return ItExpr(n, base.x_index, base.A, base.B + corr)


def l_combination(n: int, i: int, k: int, f1: FormIdx, f2: FormIdx) -> ItExpr:
    """Character-weighted column sum: sum_j zeta^(jk) * gamma_{i,j} integral."""
    total = None
    for j in range(n):
        term = closed_form_gamma(n, i, j, f1, f2).scale(zeta(n, j * k))
        total = term if total is None else total + term
    return total

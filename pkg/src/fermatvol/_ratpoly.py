"""Small exact-polynomial toolkit over Fraction, ascending coefficients."""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Sequence

Poly = list[Fraction]


def trim(p: Poly) -> Poly:
    while len(p) > 1 and p[-1] == 0:
        p.pop()
    return p


def add(p: Poly, q: Poly) -> Poly:
    width = max(len(p), len(q))
    return trim([
        (p[i] if i < len(p) else Fraction(0)) + (q[i] if i < len(q) else Fraction(0))
        for i in range(width)
    ])


def scale(p: Poly, c: Fraction) -> Poly:
    return trim([c * v for v in p])


def mul(p: Poly, q: Poly) -> Poly:
    out = [Fraction(0)] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a:
            for j, b in enumerate(q):
                out[i + j] += a * b
    return trim(out)


def shift_one(p: Poly) -> Poly:
    """p(n + 1) from p(n)."""
    out = [Fraction(0)] * len(p)
    for i, a in enumerate(p):
        if a:
            for j in range(i + 1):
                out[j] += a * math.comb(i, j)
    return trim(out)


def evaluate(p: Poly, x: Fraction) -> Fraction:
    acc = Fraction(0)
    for c in reversed(p):
        acc = acc * x + c
    return acc


def monomial(deg: int) -> Poly:
    return [Fraction(0)] * deg + [Fraction(1)]


def from_roots(roots: Sequence[Fraction]) -> Poly:
    """Monic product of (n + root) factors."""
    p: Poly = [Fraction(1)]
    for r in roots:
        p = mul(p, [Fraction(r), Fraction(1)])
    return p


def coefficient(p: Poly, deg: int) -> Fraction:
    return p[deg] if deg < len(p) else Fraction(0)


def positive_for_all(p: Poly, n0: Fraction) -> bool:
    """Sufficient exact test for p(n) > 0 at every n >= n0 >= 1.

    Divides by the leading monomial and bounds every lower-order term by its
    value at n0, so a True answer is a proof; False only means undecided.
    """
    p = trim(list(p))
    deg = len(p) - 1
    lead = p[deg]
    if lead <= 0:
        return False
    bound = lead
    for i in range(deg):
        c = p[i]
        if c < 0:
            bound += c * n0 ** (i - deg)
    return bound > 0


def solve_exact(rows: Sequence[Sequence[Fraction]], rhs: Sequence[Fraction]) -> list[Fraction]:
    """Solve an exactly-determined or overdetermined consistent system."""
    m = len(rows)
    cols = len(rows[0])
    mat = [list(r) + [rhs[k]] for k, r in enumerate(rows)]
    piv_cols: list[int] = []
    row = 0
    for col in range(cols):
        sel = None
        for r in range(row, m):
            if mat[r][col]:
                sel = r
                break
        if sel is None:
            continue
        mat[row], mat[sel] = mat[sel], mat[row]
        inv = Fraction(1) / mat[row][col]
        mat[row] = [v * inv for v in mat[row]]
        for r in range(m):
            if r != row and mat[r][col]:
                f = mat[r][col]
                mat[r] = [v - f * w for v, w in zip(mat[r], mat[row])]
        piv_cols.append(col)
        row += 1
    if len(piv_cols) != cols:
        raise ArithmeticError("singular linear system")
    for r in range(row, m):
        if mat[r][cols]:
            raise ArithmeticError("inconsistent linear system")
    out = [Fraction(0)] * cols
    for r, c in enumerate(piv_cols):
        out[c] = mat[r][cols]
    return out

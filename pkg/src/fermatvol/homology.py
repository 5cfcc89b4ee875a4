"""Integral homology of the Fermat curve x^n + y^n = 1 in group-ring form.

H_1 is generated by the translates alpha^i beta^j kappa_0 of a single loop
under the two order-n automorphisms, so classes are stored as coefficient
vectors over (Z/n)^2.  The norm relations (rows, columns and diagonals of
the translation grid) cut this down to rank 3n - 2, leaving the standard
basis {alpha^i beta^j kappa_0 : 0 <= i <= n-3, 0 <= j <= n-2} of size 2g.
The skew pairing comes from the six nonzero intersection numbers of kappa_0
with its immediate translates.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

from .cyclotomic import Rat


def genus(n: int) -> int:
    if n < 3:
        raise ValueError(f"need n >= 3 for a positive-genus Fermat curve, got {n}")
    return (n - 1) * (n - 2) // 2


def base_pairing(n: int, i: int, j: int) -> int:
    """Intersection number of the base loop with its (i, j) translate."""
    if n < 3:
        raise ValueError(f"need n >= 3, got {n}")
    i, j = i % n, j % n
    if (i, j) in ((1, 0), (0, 1), (n - 1, n - 1)):
        return 1
    if (i, j) in ((1, 1), (n - 1, 0), (0, n - 1)):
        return -1
    return 0


@lru_cache(maxsize=None)
def basis_indices(n: int) -> tuple[tuple[int, int], ...]:
    """Index pairs of the 2g basis loops, lexicographic."""
    return tuple((i, j) for i in range(n - 2) for j in range(n - 1))


@dataclass(frozen=True)
class GroupRingClass:
    """A formal combination of the loops alpha^i beta^j kappa_0."""

    n: int
    coeffs: tuple[Fraction, ...]  # dense, index i*n + j

    def __post_init__(self):
        if len(self.coeffs) != self.n * self.n:
            raise ValueError(f"expected {self.n * self.n} coefficients, got {len(self.coeffs)}")

    def __getitem__(self, key: tuple[int, int]) -> Fraction:
        i, j = key
        return self.coeffs[(i % self.n) * self.n + (j % self.n)]

    def __add__(self, other: "GroupRingClass") -> "GroupRingClass":
        if self.n != other.n:
            raise ValueError("mixed curve indices")
        return GroupRingClass(self.n, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other: "GroupRingClass") -> "GroupRingClass":
        if self.n != other.n:
            raise ValueError("mixed curve indices")
        return GroupRingClass(self.n, tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self) -> "GroupRingClass":
        return GroupRingClass(self.n, tuple(-a for a in self.coeffs))

    def scale(self, c: Rat) -> "GroupRingClass":
        q = Fraction(c)
        return GroupRingClass(self.n, tuple(a * q for a in self.coeffs))

    def translate(self, a: int, b: int) -> "GroupRingClass":
        """Push forward by alpha^a beta^b."""
        n = self.n
        out = [Fraction(0)] * (n * n)
        for i in range(n):
            for j in range(n):
                c = self.coeffs[i * n + j]
                if c:
                    out[((i + a) % n) * n + (j + b) % n] = c
        return GroupRingClass(n, tuple(out))

    def is_zero(self) -> bool:
        return not any(self.coeffs)


def loop_class(n: int, i: int = 0, j: int = 0) -> GroupRingClass:
    """The single loop alpha^i beta^j kappa_0 as a group-ring class."""
    coeffs = [Fraction(0)] * (n * n)
    coeffs[(i % n) * n + (j % n)] = Fraction(1)
    return GroupRingClass(n, tuple(coeffs))


def intersection(x: GroupRingClass, y: GroupRingClass) -> Fraction:
    """Skew pairing extended bilinearly from the base loop table."""
    if x.n != y.n:
        raise ValueError("mixed curve indices")
    n = x.n
    total = Fraction(0)
    for a in range(n):
        for b in range(n):
            xa = x.coeffs[a * n + b]
            if not xa:
                continue
            for c in range(n):
                for d in range(n):
                    yc = y.coeffs[c * n + d]
                    if yc:
                        p = base_pairing(n, c - a, d - b)
                        if p:
                            total += xa * yc * p
    return total


def relations(n: int) -> list[GroupRingClass]:
    """The 3n norm relations: beta-columns, alpha-rows and diagonals."""
    if n < 3:
        raise ValueError(f"need n >= 3, got {n}")
    rels = []
    for j in range(n):  # sum over i with j fixed
        coeffs = [Fraction(0)] * (n * n)
        for i in range(n):
            coeffs[i * n + j] = Fraction(1)
        rels.append(GroupRingClass(n, tuple(coeffs)))
    for i in range(n):  # sum over j with i fixed
        coeffs = [Fraction(0)] * (n * n)
        for j in range(n):
            coeffs[i * n + j] = Fraction(1)
        rels.append(GroupRingClass(n, tuple(coeffs)))
    for d in range(n):  # diagonal sums, j - i fixed
        coeffs = [Fraction(0)] * (n * n)
        for k in range(n):
            coeffs[k * n + (k + d) % n] = Fraction(1)
        rels.append(GroupRingClass(n, tuple(coeffs)))
    return rels


@lru_cache(maxsize=None)
def _reduction_rows(n: int) -> tuple[tuple[int, tuple[Fraction, ...]], ...]:
    """RREF of the relation matrix with pivots in the non-basis columns.

    Returns (pivot_column, row) pairs; each row is 1 at its pivot, 0 at all
    other pivot columns, so subtracting coeff[pivot] * row clears a vector's
    non-basis support.
    """
    basis = set(i * n + j for i, j in basis_indices(n))
    nonbasis = [c for c in range(n * n) if c not in basis]
    mat = [list(rel.coeffs) for rel in relations(n)]
    pivots: list[tuple[int, int]] = []  # (row index, column)
    row = 0
    for col in nonbasis:
        sel = None
        for r in range(row, len(mat)):
            if mat[r][col]:
                sel = r
                break
        if sel is None:
            continue
        mat[row], mat[sel] = mat[sel], mat[row]
        inv = Fraction(1) / mat[row][col]
        mat[row] = [v * inv for v in mat[row]]
        for r in range(len(mat)):
            if r != row and mat[r][col]:
                f = mat[r][col]
                mat[r] = [v - f * w for v, w in zip(mat[r], mat[row])]
        pivots.append((row, col))
        row += 1
    if len(pivots) != 3 * n - 2:
        raise RuntimeError(
            f"relation rank is {len(pivots)}, expected {3 * n - 2}; "
            "the chosen basis does not span"
        )
    for r in range(row, len(mat)):
        if any(mat[r]):
            raise RuntimeError("relations do not vanish on the basis span")
    return tuple((col, tuple(mat[r])) for r, col in pivots)


def reduce_coefficients(n: int, coeffs: Sequence) -> list:
    """Rewrite a dense (Z/n)^2 coefficient vector on the homology basis.

    Generic in the coefficient type: anything with addition and
    multiplication by Fraction works, so both rational and cyclotomic
    coefficient vectors reduce through the same rows.
    """
    if len(coeffs) != n * n:
        raise ValueError(f"expected {n * n} coefficients, got {len(coeffs)}")
    vec = list(coeffs)
    for col, row in _reduction_rows(n):
        c = vec[col]
        if c:
            for k, w in enumerate(row):
                if w:
                    vec[k] = vec[k] - c * w
    return [vec[i * n + j] for i, j in basis_indices(n)]


@dataclass(frozen=True)
class HomologyClass:
    """A class written on the 2g basis loops."""

    n: int
    coeffs: tuple[Fraction, ...]

    def __post_init__(self):
        if len(self.coeffs) != 2 * genus(self.n):
            raise ValueError(
                f"expected {2 * genus(self.n)} basis coefficients, got {len(self.coeffs)}"
            )

    def lift(self) -> GroupRingClass:
        n = self.n
        out = [Fraction(0)] * (n * n)
        for (i, j), c in zip(basis_indices(n), self.coeffs):
            out[i * n + j] = c
        return GroupRingClass(n, tuple(out))


def reduce(x: GroupRingClass) -> HomologyClass:
    """Express a group-ring class on the homology basis."""
    return HomologyClass(x.n, tuple(reduce_coefficients(x.n, x.coeffs)))


@lru_cache(maxsize=None)
def intersection_matrix(n: int) -> tuple[tuple[int, ...], ...]:
    """Pairing matrix of the 2g basis loops; integral and skew."""
    idx = basis_indices(n)
    rows = []
    for (a, b) in idx:
        row = []
        for (c, d) in idx:
            row.append(base_pairing(n, c - a, d - b))
        rows.append(tuple(row))
    return tuple(rows)


def smith_invariants(mat: Sequence[Sequence[int]]) -> list[int]:
    """Nonzero Smith normal form divisors of an integer matrix."""
    a = [list(map(int, row)) for row in mat]
    rows = len(a)
    cols = len(a[0]) if rows else 0
    t = 0
    while t < min(rows, cols):
        # locate a smallest-magnitude nonzero entry in the trailing block
        pr = pc = -1
        best = None
        for r in range(t, rows):
            for c in range(t, cols):
                v = abs(a[r][c])
                if v and (best is None or v < best):
                    best, pr, pc = v, r, c
        if best is None:
            break
        a[t], a[pr] = a[pr], a[t]
        for r in range(rows):
            a[r][t], a[r][pc] = a[r][pc], a[r][t]
        dirty = False
        for r in range(t + 1, rows):
            if a[r][t] % a[t][t]:
                dirty = True
            q = a[r][t] // a[t][t]
            if q:
                for c in range(t, cols):
                    a[r][c] -= q * a[t][c]
        for c in range(t + 1, cols):
            if a[t][c] % a[t][t]:
                dirty = True
            q = a[t][c] // a[t][t]
            if q:
                for r in range(t, rows):
                    a[r][c] -= q * a[r][t]
        if dirty or any(a[r][t] for r in range(t + 1, rows)) or any(
            a[t][c] for c in range(t + 1, cols)
        ):
            continue  # remainders were introduced; repeat with a smaller pivot
        # pivot must divide the rest of the block for the divisor chain
        offender = None
        for r in range(t + 1, rows):
            for c in range(t + 1, cols):
                if a[r][c] % a[t][t]:
                    offender = r
                    break
            if offender is not None:
                break
        if offender is not None:
            for c in range(t, cols):
                a[t][c] += a[offender][c]
            continue
        t += 1
    return [abs(a[k][k]) for k in range(t)]


def rational_rank(rows: Sequence[Sequence[Rat]]) -> int:
    """Rank over Q by fraction-exact elimination."""
    mat = [[Fraction(v) for v in row] for row in rows]
    rank = 0
    cols = len(mat[0]) if mat else 0
    for col in range(cols):
        sel = None
        for r in range(rank, len(mat)):
            if mat[r][col]:
                sel = r
                break
        if sel is None:
            continue
        mat[rank], mat[sel] = mat[sel], mat[rank]
        inv = Fraction(1) / mat[rank][col]
        mat[rank] = [v * inv for v in mat[rank]]
        for r in range(len(mat)):
            if r != rank and mat[r][col]:
                f = mat[r][col]
                mat[r] = [v - f * w for v, w in zip(mat[r], mat[rank])]
        rank += 1
    return rank

"""Poincare duals of the normalized one-forms, exact over Q(zeta_n).

The dual of a form is the homology class whose pairing against every basis
loop reproduces the form's periods.  That is one exact linear solve against
the (transposed) intersection matrix, done with cyclotomic Gaussian
elimination; the result is cached and re-verified against the defining
property before it is returned.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .cyclotomic import CycNum, zeta
from .forms import FormIdx
from .homology import base_pairing, basis_indices, intersection_matrix, reduce_coefficients
from .iterated import loop_period


def period_vector(f: FormIdx) -> tuple[CycNum, ...]:
    """Periods of the form over the basis loops, in basis order."""
    return tuple(loop_period(f.n, i, j, f) for (i, j) in basis_indices(f.n))


@dataclass(frozen=True)
class DualVector:
    """Coefficients of a Poincare dual on the basis loops."""

    form: FormIdx
    coeffs: tuple[CycNum, ...]

    @property
    def n(self) -> int:
        return self.form.n

    def coeff(self, i: int, j: int) -> CycNum:
        return self.coeffs[basis_indices(self.n).index((i, j))]

    def to_json(self) -> dict:
        return {
            "form": self.form.to_json(),
            "coeffs": [
                {"loop": [i, j], "coeff": c.to_json()}
                for (i, j), c in zip(basis_indices(self.n), self.coeffs)
            ],
        }


@lru_cache(maxsize=None)
def poincare_dual(f: FormIdx) -> DualVector:
    """Solve pairing(dual, basis loop) = period for every basis loop."""
    n = f.n
    mat = intersection_matrix(n)
    dim = len(mat)
    periods = period_vector(f)
    # unknowns a_r with sum_r a_r * (K_r, K_c) = period_c: transposed system
    rows = [
        [CycNum.from_rational(n, mat[r][c]) for r in range(dim)] + [periods[c]]
        for c in range(dim)
    ]
    for col in range(dim):
        sel = None
        for r in range(col, dim):
            if rows[r][col]:
                sel = r
                break
        if sel is None:
            raise RuntimeError("intersection matrix is singular; homology data corrupt")
        rows[col], rows[sel] = rows[sel], rows[col]
        inv = rows[col][col].inverse()
        rows[col] = [v * inv for v in rows[col]]
        for r in range(dim):
            if r != col and rows[r][col]:
                factor = rows[r][col]
                rows[r] = [v - factor * w for v, w in zip(rows[r], rows[col])]
    coeffs = tuple(rows[r][dim] for r in range(dim))
    dual = DualVector(f, coeffs)
    for idx, (i, j) in enumerate(basis_indices(n)):
        if pair_with_basis(dual, i, j) != periods[idx]:
            raise RuntimeError("dual solve failed its defining pairing check")
    return dual


def pair_with_basis(dual: DualVector, i: int, j: int) -> CycNum:
    """Pairing of the dual class against the (i, j) basis loop."""
    n = dual.n
    total = CycNum.zero(n)
    for (a, b), c in zip(basis_indices(n), dual.coeffs):
        if c:
            p = base_pairing(n, i - a, j - b)
            if p:
                total = total + c * p
    return total


def dual_pairing(d1: DualVector, d2: DualVector) -> CycNum:
    """Intersection pairing of two dual classes, bilinear in both slots.

    For duals of two holomorphic forms this vanishes: the pairing equals the
    integral of the wedge of the forms, and the wedge of two (1,0)-forms is
    identically zero on a curve.  That makes it a sharp consistency check on
    the solve and on the pairing table at once.
    """
    if d1.n != d2.n:
        raise ValueError("duals live on different curves")
    total = CycNum.zero(d1.n)
    for (i, j), c in zip(basis_indices(d1.n), d2.coeffs):
        if c:
            total = total + pair_with_basis(d1, i, j) * c
    return total


def pushforward(dual: DualVector, generator: str) -> tuple[CycNum, ...]:
    """Basis coefficients of the image class under alpha_* or beta_*."""
    n = dual.n
    if generator == "alpha":
        da, db = 1, 0
    elif generator == "beta":
        da, db = 0, 1
    else:
        raise ValueError(f"generator must be 'alpha' or 'beta', got {generator!r}")
    dense = [CycNum.zero(n) for _ in range(n * n)]
    for (i, j), c in zip(basis_indices(n), dual.coeffs):
        dense[((i + da) % n) * n + (j + db) % n] = c
    return tuple(reduce_coefficients(n, dense))


def equivariance_check(f: FormIdx, generator: str = "beta") -> bool:
    """Pushing the dual forward must scale it by the conjugate character.

    beta_* multiplies the dual of omega_{r,s} by zeta^(-s), alpha_* by
    zeta^(-r); checked exactly on every basis coefficient.
    """
    dual = poincare_dual(f)
    moved = pushforward(dual, generator)
    power = -f.s if generator == "beta" else -f.r
    factor = zeta(f.n, power)
    return all(m == factor * c for m, c in zip(moved, dual.coeffs))

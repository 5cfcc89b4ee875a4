"""Poincare duals of the holomorphic basis forms.

The dual of a form is the unique homology class whose intersection with
every basis loop reproduces the form's period over that loop.  Three
independent consequences pin the solve: equivariance under both curve
automorphisms, vanishing of the pairing between any two holomorphic duals
(their wedge is a (2,0)-form on a curve, hence zero), and an explicit
coefficient quadruple in the character-weighted loop combinations.
"""

import pytest

from fermatvol import pdual
from fermatvol.cyclotomic import CycNum, zeta
from fermatvol.forms import FormIdx, form_indices
from fermatvol.homology import basis_indices, reduce_coefficients
from fermatvol.iterated import loop_period
from fermatvol.pdual import (
    DualVector,
    dual_pairing,
    equivariance_check,
    pair_with_basis,
    period_vector,
    poincare_dual,
)


@pytest.mark.parametrize("n", [4, 5, 6])
def test_period_vectors_are_lattice_valued(n):
    for f in form_indices(n):
        assert all(c.is_integral() for c in period_vector(f))


@pytest.mark.parametrize("n", [4, 6])
def test_dual_reproduces_every_period(n):
    for f in form_indices(n):
        dual = poincare_dual(f)
        for (i, j) in basis_indices(n):
            assert pair_with_basis(dual, i, j) == loop_period(n, i, j, f)


@pytest.mark.parametrize("n", [4, 6])
@pytest.mark.parametrize("generator", ["alpha", "beta"])
def test_dual_equivariance(n, generator):
    for f in form_indices(n):
        assert equivariance_check(f, generator)


def test_duals_of_holomorphic_forms_pair_to_zero():
    # includes the diagonal: (dual w, dual w) = int w ^ w = 0 as well
    for n in (4, 6):
        duals = [poincare_dual(f) for f in form_indices(n)]
        for a in range(len(duals)):
            for b in range(a, len(duals)):
                assert not dual_pairing(duals[a], duals[b])


def test_dual_pairing_rejects_mixed_curves():
    with pytest.raises(ValueError):
        dual_pairing(poincare_dual(FormIdx(4, 1, 1)), poincare_dual(FormIdx(6, 1, 1)))


def _weighted_column(n, i, lam):
    """Reduced coordinates of lam * sum_j zeta^j (loop i,j)."""
    dense = [CycNum.zero(n)] * (n * n)
    for j in range(n):
        dense[i * n + j] = zeta(n, j) * lam
    return reduce_coefficients(n, dense)


def test_first_form_dual_presentation():
    # dual(w_{1,1}) at n = 6 equals zeta * (C_0 + 2 C_1 + 2 C_2 + C_3) where
    # C_i is the zeta^j-weighted sum of the loops with first index i
    n = 6
    z = zeta(n)
    dual = poincare_dual(FormIdx(n, 1, 1))
    weights = (z, z * 2, z * 2, z)
    combo = [CycNum.zero(n)] * len(basis_indices(n))
    for i, lam in enumerate(weights):
        for k, c in enumerate(_weighted_column(n, i, lam)):
            combo[k] = combo[k] + c
    assert tuple(combo) == dual.coeffs


def test_beta_pushforward_scales_first_form_dual():
    # beta acts on dual(w_{1,1}) by zeta^(-1)
    n = 6
    dual = poincare_dual(FormIdx(n, 1, 1))
    moved = pdual.pushforward(dual, "beta")
    factor = zeta(n, -1)
    assert all(m == c * factor for m, c in zip(moved, dual.coeffs))


def test_dual_vector_surface():
    f = FormIdx(6, 1, 2)
    dual = poincare_dual(f)
    assert isinstance(dual, DualVector)
    assert dual.n == 6
    assert len(dual.coeffs) == len(basis_indices(6))
    i, j = basis_indices(6)[3]
    assert dual.coeff(i, j) == dual.coeffs[3]
    payload = dual.to_json()
    assert payload["form"] == f.to_json()
    assert len(payload["coeffs"]) == len(dual.coeffs)

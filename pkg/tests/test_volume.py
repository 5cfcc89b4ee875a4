"""Doubled harmonic volumes: exact expressions, verdicts, and the sweep.

Each tensor of three basis forms contracts the dual coefficients of the
third form against the loop integrals of the first two, giving an exact
affine expression A * x + B over Q(zeta) in one transcendental symbol.  The
doubled value decides algebraic equivalence: a certified positive distance
from the period lattice is a proof of nontriviality, while a lattice value
is inconclusive.  The regression targets below were frozen from the exact
arithmetic itself plus both numerical routes run far under the tolerances.
"""

import json

import pytest

from fermatvol import volume
from fermatvol.analysis import x_value
from fermatvol.cyclotomic import CycNum, RealInterval, zeta
from fermatvol.forms import FormIdx
from fermatvol.volume import (
    VERDICT_INCONCLUSIVE,
    VERDICT_NONTRIVIAL,
    VERDICT_UNSUPPORTED,
    evaluate,
    harmonic_volume_expr,
    nearest_integer_gap,
    sweep,
)

FLAGSHIP = (FormIdx(6, 1, 2), FormIdx(6, 1, 3), FormIdx(6, 1, 1))
WITNESS6 = (FormIdx(6, 1, 1), FormIdx(6, 1, 4), FormIdx(6, 4, 1))
WITNESS4 = (FormIdx(4, 1, 1), FormIdx(4, 1, 2), FormIdx(4, 2, 1))


def test_flagship_exact_expression():
    z = zeta(6)
    expr = harmonic_volume_expr(*FLAGSHIP)
    assert not expr.A
    assert expr.B == CycNum.from_rational(6, 24) - z * 12
    report = evaluate(*FLAGSHIP, tol=1e-9)
    # the report carries the doubled expression
    assert not report.exact_expr.A
    assert report.exact_expr.B == CycNum.from_rational(6, 48) - z * 24
    assert report.exact_expr.B.is_integral()


def test_flagship_verdict_is_inconclusive():
    report = evaluate(*FLAGSHIP, tol=1e-9)
    assert report.verdict == VERDICT_INCONCLUSIVE
    assert report.two_re_mod_1.contains(0.0)
    assert abs(report.two_re_mod_1.mid) <= 1e-10
    assert report.lattice_dist is not None
    assert report.lattice_dist.contains(0.0)


def test_witness_tensor_certifies_nontriviality():
    z = zeta(6)
    report = evaluate(*WITNESS6, tol=1e-9)
    assert report.exact_expr.A == CycNum.from_rational(6, -72) + z * 144
    assert report.exact_expr.B == CycNum.from_rational(6, -288) + z * 144
    assert report.verdict == VERDICT_NONTRIVIAL
    assert report.lattice_dist.lo > 0.09
    assert abs(report.x.mid - 0.30479137742691503) <= report.x.err + 1e-12


def test_quartic_witness_certifies_nontriviality():
    z = zeta(4)
    report = evaluate(*WITNESS4, tol=1e-9)
    assert report.exact_expr.A == z * 64
    assert report.exact_expr.B == CycNum.from_rational(4, -64) - z * 64
    assert report.verdict == VERDICT_NONTRIVIAL
    assert report.lattice_dist.lo > 0.26
    assert abs(report.x.mid - 0.3791093106651847) <= report.x.err + 1e-12


def test_unsupported_degree_reports_honestly():
    report = evaluate(FormIdx(5, 1, 1), FormIdx(5, 1, 2), FormIdx(5, 2, 1), tol=1e-8)
    assert report.verdict == VERDICT_UNSUPPORTED
    assert report.lattice_dist is None


def test_methods_agree_on_witness():
    a = evaluate(*WITNESS6, tol=1e-8, method="series")
    b = evaluate(*WITNESS6, tol=1e-8, method="quadrature")
    assert abs(a.two_re_mod_1.mid - b.two_re_mod_1.mid) <= (
        a.two_re_mod_1.rad + b.two_re_mod_1.rad
    )
    assert a.verdict == b.verdict == VERDICT_NONTRIVIAL


def test_supplied_enclosure_is_reused_or_rejected():
    first = evaluate(*WITNESS6, tol=1e-8)
    again = evaluate(*WITNESS6, tol=1e-8, x=first.x)
    assert again.two_re_mod_1.mid == first.two_re_mod_1.mid
    with pytest.raises(ValueError):
        evaluate(*FLAGSHIP, tol=1e-8, x=first.x)


def test_report_json_shape():
    report = evaluate(*WITNESS6, tol=1e-8)
    payload = report.to_json()
    assert payload["n"] == 6
    assert payload["tensor"] == [[1, 1], [1, 4], [4, 1]]
    assert payload["verdict"] == VERDICT_NONTRIVIAL
    assert set(payload) >= {"exact_expr", "x", "value", "two_re_mod_1", "lattice_dist"}
    json.dumps(payload)  # must be serializable as-is


def test_residue_is_normalized():
    for tensor in (FLAGSHIP, WITNESS6, WITNESS4):
        report = evaluate(*tensor, tol=1e-8)
        assert 0.0 <= report.two_re_mod_1.mid < 1.0


def test_sweep_quartic_census():
    reports = list(sweep(4, tol=1e-8))
    assert len(reports) == 18
    # first two slots are canonically ordered, so no ordered duplicates
    keys = [tuple((f.r, f.s) for f in r.tensor) for r in reports]
    assert len(set(keys)) == len(keys)
    assert all(k[0] <= k[1] for k in keys)
    assert sum(1 for r in reports if not r.exact_expr.A) == 14
    winners = {k for k, r in zip(keys, reports) if r.verdict == VERDICT_NONTRIVIAL}
    assert winners == {
        ((1, 1), (1, 2), (2, 1)),
        ((1, 1), (2, 1), (1, 2)),
        ((1, 2), (2, 1), (1, 1)),
    }


def test_sweep_shares_enclosures_per_symbol():
    reports = list(sweep(4, tol=1e-8))
    by_symbol = {}
    for r in reports:
        key = (r.x.r, r.x.s, r.x.l, r.x.m)
        by_symbol.setdefault(key, set()).add((r.x.mid, r.x.err))
    for values in by_symbol.values():
        assert len(values) == 1


def test_nearest_integer_gap():
    assert nearest_integer_gap(RealInterval.exact(0.3)) == pytest.approx(0.3)
    assert nearest_integer_gap(RealInterval.exact(0.0)) == 0.0
    assert nearest_integer_gap(RealInterval.exact(0.5)) == pytest.approx(0.5)
    # an interval touching an integer has no certified gap
    assert nearest_integer_gap(RealInterval(0.9, 0.2)) == 0.0


def test_x_value_matches_standalone_route():
    report = evaluate(*WITNESS6, tol=1e-9)
    direct = x_value(6, 1, 1, 1, 4, tol=1e-9)
    assert abs(report.x.mid - direct.mid) <= report.x.err + direct.err

"""Command-line interface.

Exit codes: 0 on success, 2 when `check` cannot certify nontriviality,
1 on usage errors or internal failures.  All numeric output carries both a
midpoint and a radius; JSON output is key-sorted so identical inputs give
bit-identical bytes.
"""

from __future__ import annotations

import argparse
import json
import os
import random
import sys
import time
from fractions import Fraction

from . import analysis, homology, iterated, pdual, volume
from .cyclotomic import CycNum, lattice_distance, zeta
from .forms import FormIdx, form_indices


def _default_tol() -> float:
    raw = os.environ.get("FERMATVOL_TOL", "1e-8")
    try:
        value = float(raw)
        if value <= 0:
            raise ValueError
    except ValueError:
        raise SystemExit(f"fermatvol: bad FERMATVOL_TOL value {raw!r}")
    return value


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        # argparse exits 2 on usage errors by default; 2 is reserved for
        # failed verdict checks here, so remap to 1
        self.print_usage(sys.stderr)
        sys.stderr.write(f"{self.prog}: error: {message}\n")
        raise SystemExit(1)


def _parse_ints(text: str, count: int, what: str) -> list[int]:
    parts = text.split(",")
    if len(parts) != count:
        raise ValueError(f"{what} needs {count} comma-separated integers, got {text!r}")
    return [int(p) for p in parts]


def _parse_tensor(text: str, n: int) -> tuple[FormIdx, FormIdx, FormIdx]:
    parts = text.split(":")
    if len(parts) != 3:
        raise ValueError(f"tensor needs three r,s pairs joined by ':', got {text!r}")
    forms = []
    for part in parts:
        r, s = _parse_ints(part, 2, "form index")
        forms.append(FormIdx(n, r, s))
    return tuple(forms)


def _emit(payload: dict) -> None:
    sys.stdout.write(json.dumps(payload, sort_keys=True) + "\n")


def _cmd_periods(args) -> int:
    f = FormIdx(args.n, *_parse_ints(args.form, 2, "--form"))
    entries = [
        {"loop": [i, j], "period": iterated.loop_period(args.n, i, j, f).to_json()}
        for (i, j) in homology.basis_indices(args.n)
    ]
    _emit({"n": args.n, "form": f.to_json(), "periods": entries})
    return 0


def _cmd_intersection(args) -> int:
    mat = homology.intersection_matrix(args.n)
    _emit({"n": args.n, "matrix": [list(row) for row in mat]})
    return 0


def _cmd_itint(args) -> int:
    r, s, l, m = _parse_ints(args.forms, 4, "--forms")
    f1, f2 = FormIdx(args.n, r, s), FormIdx(args.n, l, m)
    if args.loop == "kappa":
        expr = iterated.closed_form_kappa(args.n, args.i, args.j, f1, f2)
    else:
        expr = iterated.closed_form_gamma(args.n, args.i, args.j, f1, f2)
    payload = expr.to_json()
    payload.update({"n": args.n, "loop": args.loop, "i": args.i, "j": args.j})
    _emit(payload)
    return 0


def _cmd_x(args) -> int:
    r, s, l, m = _parse_ints(args.forms, 4, "--forms")
    xv = analysis.x_value(
        args.n, r, s, l, m, tol=args.tol, method=args.method, max_terms=args.max_terms
    )
    _emit(xv.to_json())
    return 0


def _cmd_pdual(args) -> int:
    f = FormIdx(args.n, *_parse_ints(args.form, 2, "--form"))
    dual = pdual.poincare_dual(f)
    payload = dual.to_json()
    payload["n"] = args.n
    _emit(payload)
    return 0


def _volume_report(args) -> volume.VolumeReport:
    f1, f2, f3 = _parse_tensor(args.tensor, args.n)
    return volume.evaluate(f1, f2, f3, tol=args.tol, method=args.method)


def _print_volume(report: volume.VolumeReport, fmt: str) -> None:
    if fmt == "json":
        _emit(report.to_json())
        return
    value = report.value
    print(f"n = {report.n}, tensor = " + " (x) ".join(
        f"omega_{f.r},{f.s}" for f in report.tensor
    ))
    print(f"doubled volume = {value.re:+.12f} {value.im:+.12f}i  (radius {value.rad:.3e})")
    print(
        f"2*Re mod 1     = {report.two_re_mod_1.mid:.12f}"
        f"  (radius {report.two_re_mod_1.rad:.3e})"
    )
    if report.lattice_dist is not None:
        print(
            f"lattice dist   = {report.lattice_dist.mid:.12f}"
            f"  (radius {report.lattice_dist.rad:.3e})"
        )
    print(f"verdict        = {report.verdict}")


def _cmd_volume(args) -> int:
    _print_volume(_volume_report(args), args.format)
    return 0


def _cmd_check(args) -> int:
    report = _volume_report(args)
    _print_volume(report, args.format)
    return 0 if report.verdict == volume.VERDICT_NONTRIVIAL else 2


def _cmd_sweep(args) -> int:
    for report in volume.sweep(args.n, tol=args.tol, method=args.method):
        _emit(report.to_json())
    return 0


def _cmd_selftest(args) -> int:
    checks: list[tuple[str, bool, str]] = []
    rng = random.Random(args.seed)
    t0 = time.monotonic()

    def record(name: str, ok: bool, detail: str = "") -> None:
        checks.append((name, ok, detail))

    # field identities
    ok = True
    for n in range(3, 11):
        total = CycNum.zero(n)
        for k in range(n):
            total = total + zeta(n, k)
        ok = ok and not total
    for _ in range(20):
        n = rng.choice([3, 4, 5, 6, 7, 8, 12])
        a = CycNum(n, [Fraction(rng.randint(-9, 9), rng.randint(1, 9))
                       for _ in range(len(CycNum.zero(n).coeffs))])
        if a:
            ok = ok and (a * a.inverse() == CycNum.one(n))
        conj_emb = a.conjugate().embed()
        emb = a.embed()
        ok = ok and abs(complex(conj_emb.re, conj_emb.im).conjugate()
                        - complex(emb.re, emb.im)) <= conj_emb.rad + emb.rad + 1e-12
    record("cyclotomic field identities", ok)

    # homology certificates
    ok = True
    for n in (4, 5, 6):
        rels = homology.relations(n)
        rank = homology.rational_rank([r.coeffs for r in rels])
        ok = ok and rank == 3 * n - 2
        mat = homology.intersection_matrix(n)
        ok = ok and all(d == 1 for d in homology.smith_invariants(mat))
        ok = ok and len(homology.smith_invariants(mat)) == 2 * homology.genus(n)
        probe = homology.loop_class(n, rng.randrange(n), rng.randrange(n))
        ok = ok and all(homology.intersection(rel, probe) == 0 for rel in rels)
    record("homology rank and unimodularity", ok)

    # closed forms against the engine
    ok = True
    for n, samples in ((4, None), (6, 60)):
        forms = form_indices(n)
        grid = [(i, j, f1, f2) for i in range(n) for j in range(n)
                for f1 in forms for f2 in forms]
        if samples is not None:
            grid = [grid[rng.randrange(len(grid))] for _ in range(samples)]
        for (i, j, f1, f2) in grid:
            engine = iterated.iterated_integral(iterated.gamma_loop(n, i, j), f1, f2)
            ok = ok and engine == iterated.closed_form_gamma(n, i, j, f1, f2)
    record("iterated-integral closed forms", ok)

    # periods integral
    ok = True
    for n in (4, 5, 6):
        for f in form_indices(n):
            ok = ok and all(c.is_integral() for c in pdual.period_vector(f))
    record("loop periods lie in Z[zeta]", ok)

    # dual defining property and equivariance
    ok = True
    for n in (4, 6):
        for f in form_indices(n):
            dual = pdual.poincare_dual(f)  # raises if the pairing check fails
            ok = ok and pdual.equivariance_check(f, "beta")
            ok = ok and pdual.equivariance_check(f, "alpha")
    record("Poincare dual pairing and equivariance", ok)

    # duals of holomorphic forms intersect trivially (their wedge vanishes)
    ok = True
    for n in (4, 6):
        duals = [pdual.poincare_dual(f) for f in form_indices(n)]
        for a in range(len(duals)):
            for b in range(a + 1, len(duals)):
                ok = ok and not bool(pdual.dual_pairing(duals[a], duals[b]))
    record("holomorphic duals pairwise orthogonal", ok)

    # x values: dual routes and the shuffle identity
    x1 = analysis.x_value(6, 1, 2, 1, 3, tol=args.tol)
    x2 = analysis.x_value(6, 1, 3, 1, 2, tol=args.tol)
    ok = abs(x1.mid + x2.mid - 1.0) <= x1.err + x2.err
    xd = analysis.x_value(6, 1, 1, 1, 1, tol=args.tol)
    ok = ok and abs(xd.mid - 0.5) <= xd.err
    record("x enclosures (both routes, shuffle identity)", ok,
           f"x_1213 = {x1.mid:.12f} +- {x1.err:.1e}")

    # lattice distance soundness
    ok = True
    for _ in range(100):
        pt = zeta(6, rng.randrange(6)) * rng.randint(-8, 8) + CycNum.from_rational(
            6, rng.randint(-8, 8)
        )
        dist = lattice_distance(pt.embed(), 6)
        ok = ok and dist.contains(0.0)
        two_re = pt + pt.conjugate()
        ok = ok and two_re.is_rational() and two_re.coeffs[0].denominator == 1
    off = lattice_distance(complex(0.5, 0.25), 6)
    ok = ok and off.lo > 0.1
    record("lattice distance soundness", ok)

    # volume pipeline on the flagship tensor: what it provably equals
    f1, f2, f3 = FormIdx(6, 1, 2), FormIdx(6, 1, 3), FormIdx(6, 1, 1)
    report = volume.evaluate(f1, f2, f3, tol=args.tol)
    z = zeta(6)
    b_true = CycNum.from_rational(6, 48) - z * 24
    record(
        "volume flagship exact value",
        not bool(report.exact_expr.A)
        and report.exact_expr.B == b_true
        and report.verdict == volume.VERDICT_INCONCLUSIVE
        and report.two_re_mod_1.contains(0.0),
        "doubled expression = 48 - 24*zeta exactly, a lattice element",
    )

    # a tensor whose doubled value certifiably avoids the lattice
    w = volume.evaluate(FormIdx(6, 1, 1), FormIdx(6, 1, 4), FormIdx(6, 4, 1),
                        tol=args.tol)
    wa_true = CycNum.from_rational(6, -72) + z * 144
    wb_true = CycNum.from_rational(6, -288) + z * 144
    record(
        "volume witness certificate",
        w.exact_expr.A == wa_true
        and w.exact_expr.B == wb_true
        and w.verdict == volume.VERDICT_NONTRIVIAL
        and w.lattice_dist is not None
        and w.lattice_dist.lo > 0.05,
        f"(1,1)(1,4)(4,1): lattice distance >= "
        f"{w.lattice_dist.lo:.6f}" if w.lattice_dist else "no distance bound",
    )

    # pinned target for the flagship tensor; kept verbatim even though the
    # exact evaluation above shows no nonzero residue is available for it
    target = 0.74286
    record(
        "target-value regression (flagship tensor)",
        abs(report.two_re_mod_1.mid - target) <= 1e-4
        and report.verdict == volume.VERDICT_NONTRIVIAL,
        f"target 2Re mod 1 = {target}, computed {report.two_re_mod_1.mid:.10f} "
        f"({report.verdict}); the doubled expression is the lattice element "
        "48 - 24*zeta, so the residue is exactly 0",
    )

    elapsed = time.monotonic() - t0
    failures = 0
    for name, ok, detail in checks:
        status = "ok" if ok else "FAIL"
        line = f"{status:4s} {name}"
        if detail:
            line += f"  [{detail}]"
        print(line)
        if not ok:
            failures += 1
    print(f"{len(checks) - failures}/{len(checks)} checks passed in {elapsed:.1f}s")
    return 0 if failures == 0 else 1


def _build_parser() -> _Parser:
    parser = _Parser(prog="fermatvol", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, tol=True, method=True):
        p.add_argument("--n", type=int, required=True, help="degree of the Fermat curve")
        if tol:
            p.add_argument("--tol", type=float, default=_default_tol(),
                           help="target radius (env FERMATVOL_TOL overrides the default)")
        if method:
            p.add_argument("--method", choices=("series", "quadrature", "both"),
                           default="both")

    p = sub.add_parser("periods", help="periods of a form over the basis loops")
    common(p, tol=False, method=False)
    p.add_argument("--form", required=True, help="form index as r,s")
    p.set_defaults(func=_cmd_periods)

    p = sub.add_parser("intersection", help="intersection matrix of the basis loops")
    common(p, tol=False, method=False)
    p.add_argument("--matrix", action="store_true", help="included for symmetry; implied")
    p.set_defaults(func=_cmd_intersection)

    p = sub.add_parser("itint", help="closed-form iterated integral along a loop")
    common(p, tol=False, method=False)
    p.add_argument("--loop", choices=("kappa", "gamma"), default="gamma")
    p.add_argument("--i", type=int, default=0)
    p.add_argument("--j", type=int, default=0)
    p.add_argument("--forms", required=True, help="ordered pair as r,s,l,m")
    p.set_defaults(func=_cmd_itint)

    p = sub.add_parser("x", help="certified numerical x_{r,s,l,m}")
    common(p)
    p.add_argument("--forms", required=True, help="symbol index as r,s,l,m")
    p.add_argument("--max-terms", type=int, default=10_000_000)
    p.set_defaults(func=_cmd_x)

    p = sub.add_parser("pdual", help="Poincare dual of a form on the basis loops")
    common(p, tol=False, method=False)
    p.add_argument("--form", required=True, help="form index as r,s")
    p.set_defaults(func=_cmd_pdual)

    for name, fn in (("volume", _cmd_volume), ("check", _cmd_check)):
        p = sub.add_parser(name, help=f"{'evaluate' if name == 'volume' else 'certify'} "
                                      "a doubled harmonic volume")
        common(p)
        p.add_argument("--tensor", required=True, help="three forms as r,s:l,m:p,q")
        p.add_argument("--format", choices=("json", "text"), default="json")
        p.set_defaults(func=fn)

    p = sub.add_parser("sweep", help="evaluate all tensors, one JSON report per line")
    common(p)
    p.set_defaults(func=_cmd_sweep)

    p = sub.add_parser("selftest", help="run the built-in invariant battery")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--tol", type=float, default=_default_tol())
    p.set_defaults(func=_cmd_selftest)

    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, analysis.ToleranceUnreachable) as exc:
        sys.stderr.write(f"fermatvol: error: {exc}\n")
        return 1
    except RuntimeError as exc:
        sys.stderr.write(f"fermatvol: internal error: {exc}\n")
        return 1


if __name__ == "__main__":
    raise SystemExit(main())

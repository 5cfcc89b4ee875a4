"""Numerical evaluation of the transcendental constants x_{r,s,l,m}.

Each constant is, up to exactly-known Beta-function prefactors, a 3F2 value
at unit argument (equivalently a double integral over a simplex).  Two
independent routes are implemented:

* a series route summing the 3F2 terms directly, with the tail enclosed by
  an exact telescoping certificate, so the returned radius is a proof;
* a quadrature route integrating the defining double integral after
  splitting off both algebraic endpoint singularities, with a rule-doubling
  error estimate (heuristic, safety factor included).

The series radius is the one propagated into verdicts; the quadrature route
exists to cross-check it.  Everything here works on ordinary floats plus
exact Fraction bookkeeping for the certificates; no arbitrary-precision
arithmetic is involved.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import NamedTuple, Union

from scipy.special import roots_jacobi

from . import _ratpoly as rp
from .cyclotomic import EPS, RealInterval
from .forms import FormIdx

RatLike = Union[int, float, Fraction]

_TAIL_ORDER = 8           # order of the telescoping tail certificate
_SERIES_START = 64        # first escalation threshold for the series route
_CF_TINY = 1e-300         # Lentz underflow guard
_CF_ACC = 1e-15           # continued-fraction relative stop
_CF_MAX_ITER = 500
_QUAD_RULES = (12, 24, 48, 96, 192, 384, 768, 1536)
_QUAD_SAFETY = 4.0        # multiplier on the rule-doubling difference
_SPECFUN_REL = 4e-13      # blanket relative slop for lgamma/CF evaluations


class ToleranceUnreachable(RuntimeError):
    """Raised when a route cannot certify the requested tolerance."""


def _as_fraction(value: RatLike) -> Fraction:
    if isinstance(value, float):
        return Fraction(value).limit_denominator(10**12)
    return Fraction(value)


def beta_value(a: RatLike, b: RatLike) -> RealInterval:
    """Euler Beta B(a, b) for positive arguments, with an error radius."""
    fa, fb = float(a), float(b)
    if not (fa > 0.0 and fb > 0.0):
        raise ValueError(f"Beta arguments must be positive, got ({a}, {b})")
    la, lb, lab = math.lgamma(fa), math.lgamma(fb), math.lgamma(fa + fb)
    log_mid = la + lb - lab
    mid = math.exp(log_mid)
    # lgamma is a few ulp; argument conversion adds a psi-weighted ulp
    dlog = 8.0 * EPS * (abs(la) + abs(lb) + abs(lab) + 2.0)
    rad = mid * (math.expm1(dlog) + 8.0 * EPS)
    return RealInterval(mid, rad)


def beta_rational(n: int, r: int, s: int) -> RealInterval:
    """B(r/n, s/n) for integer indices."""
    if n < 1 or r < 1 or s < 1:
        raise ValueError(f"need positive integers, got n={n}, r={r}, s={s}")
    return beta_value(Fraction(r, n), Fraction(s, n))


@dataclass(frozen=True)
class HypParams:
    """Parameters of 3F2(a1, a2, a3; b1, b2; 1)."""

    a1: Fraction
    a2: Fraction
    a3: Fraction
    b1: Fraction
    b2: Fraction

    def __post_init__(self):
        for name in ("a1", "a2", "a3", "b1", "b2"):
            object.__setattr__(self, name, _as_fraction(getattr(self, name)))
        if self.a1 < 0 or self.a2 < 0 or self.a3 < 0:
            raise ValueError("numerator parameters must be nonnegative")
        if self.b1 <= 0 or self.b2 <= 0:
            raise ValueError("denominator parameters must be positive")

    @property
    def sigma(self) -> Fraction:
        return self.b1 + self.b2 + 1 - self.a1 - self.a2 - self.a3


class SeriesResult(NamedTuple):
    value: RealInterval
    terms: int


class QuadResult(NamedTuple):
    value: RealInterval
    nodes: int


@dataclass(frozen=True)
class _TailCertificate:
    """Exact data certifying |tail - T_n0 W(n0)| <= delta * tail for n0 on."""

    order: int
    w_tilde: tuple[Fraction, ...]   # W(n) * n^(order-1), a polynomial
    defect: tuple[Fraction, ...]    # numerator A(n) of the defect, deg <= order
    decrease: tuple[Fraction, ...]  # Q(n) - P(n); positive means terms shrink

    def w_at(self, n0: int) -> Fraction:
        return rp.evaluate(list(self.w_tilde), Fraction(n0)) / Fraction(n0) ** (self.order - 1)

    def delta_at(self, n0: int) -> Fraction:
        k = self.order
        bound = Fraction(0)
        for i, c in enumerate(self.defect):
            bound += abs(c) * Fraction(n0) ** (i - k)
        return bound / Fraction(n0) ** (k + 1)

    def valid_from(self, n0: int) -> bool:
        nval = Fraction(n0)
        return rp.positive_for_all(list(self.w_tilde), nval) and rp.positive_for_all(
            list(self.decrease), nval
        )


@lru_cache(maxsize=None)
def _tail_certificate(params: HypParams, order: int = _TAIL_ORDER) -> _TailCertificate:
    """Solve for W(n) = sum w_j n^(1-j) with telescoping defect of degree <= order.

    With T_{n+1} = T_n P(n)/Q(n), the defect eps(n) = W(n) - (P/Q)(n) W(n+1) - 1
    clears denominators to A(n) / (n^(K-1) (n+1)^(K-1) Q(n)).  Choosing w to
    kill the coefficients of n^(K+1) .. n^(2K+2) leaves deg A <= K, hence
    |eps(n)| <= C_A / n^(K+1) for n >= 1, which encloses the whole tail by a
    single telescoped evaluation.
    """
    K = order
    P = rp.from_roots([params.a1, params.a2, params.a3])
    Q = rp.from_roots([params.b1, params.b2, Fraction(1)])
    n_pow = rp.monomial(K - 1)
    n1_pow = rp.shift_one(list(n_pow))

    def build_defect(w: list[Fraction]) -> rp.Poly:
        w_tilde = [Fraction(0)] * (K + 1)
        for j, wj in enumerate(w):
            w_tilde[K - j] += wj
        w_tilde_next = rp.shift_one(list(w_tilde))
        t1 = rp.mul(rp.mul(w_tilde, Q), n1_pow)
        t2 = rp.mul(rp.mul(P, w_tilde_next), list(n_pow))
        t3 = rp.mul(rp.mul(list(n_pow), n1_pow), Q)
        return rp.add(t1, rp.add(rp.scale(t2, Fraction(-1)), rp.scale(t3, Fraction(-1))))

    zero = [Fraction(0)] * (K + 1)
    base = build_defect(zero)
    columns = []
    for j in range(K + 1):
        unit = list(zero)
        unit[j] = Fraction(1)
        columns.append(rp.add(build_defect(unit), rp.scale(base, Fraction(-1))))
    rows = []
    rhs = []
    for deg in range(K + 1, 2 * K + 3):
        rows.append([rp.coefficient(col, deg) for col in columns])
        rhs.append(-rp.coefficient(base, deg))
    w = rp.solve_exact(rows, rhs)
    defect = build_defect(w)
    if len(defect) - 1 > K:
        raise AssertionError("tail defect degree exceeds the certificate order")
    w_tilde = [Fraction(0)] * (K + 1)
    for j, wj in enumerate(w):
        w_tilde[K - j] += wj
    decrease = rp.add(Q, rp.scale(P, Fraction(-1)))
    return _TailCertificate(
        order=K,
        w_tilde=tuple(rp.trim(w_tilde)),
        defect=tuple(defect),
        decrease=tuple(decrease),
    )


def hyp3f2_unit(params: HypParams, tol: float, max_terms: int = 10_000_000) -> SeriesResult:
    """3F2 at unit argument with a certified error radius.

    Requires sigma = b1 + b2 + 1 - a1 - a2 - a3 > 0 (the series diverges
    otherwise).  The partial sum runs to an escalating threshold n0 and the
    rest is enclosed through the telescoping certificate; n0 doubles until
    the certified radius fits inside tol.
    """
    if tol <= 0.0:
        raise ValueError(f"tolerance must be positive, got {tol}")
    if params.sigma <= 0:
        raise ValueError(
            f"series diverges at unit argument: sigma = {params.sigma} <= 0"
        )
    if params.a1 == 0 or params.a2 == 0 or params.a3 == 0:
        return SeriesResult(RealInterval(1.0, 0.0), 1)

    fa = (float(params.a1), float(params.a2), float(params.a3))
    fb = (float(params.b1), float(params.b2))
    cert = _tail_certificate(params)

    n0 = _SERIES_START
    partial = 0.0
    term = 1.0
    n = 0
    while True:
        while n < n0:
            partial += term
            term *= (
                (n + fa[0]) * (n + fa[1]) * (n + fa[2])
                / ((n + fb[0]) * (n + fb[1]) * (n + 1.0))
            )
            n += 1
        if cert.valid_from(n0):
            delta = float(cert.delta_at(n0)) * (1.0 + 4.0 * EPS)
            if delta < 0.5:
                w_val = float(cert.w_at(n0)) * (1.0 + 4.0 * EPS)
                tail = term * w_val
                tail_err = tail * delta / (1.0 - delta)
                # term recurrences and the running sum each cost O(eps) per step
                float_err = 16.0 * EPS * n0 * (abs(partial) + tail)
                rad = tail_err + float_err
                if rad <= tol:
                    return SeriesResult(RealInterval(partial + tail, rad), n0)
        n0 *= 2
        if n0 > max_terms:
            raise ToleranceUnreachable(
                f"series route could not certify tol={tol} within {max_terms} terms"
            )


def _beta_cf(a: float, b: float, x: float) -> float:
    """Lentz continued fraction for the regularized incomplete Beta."""
    qab, qap, qam = a + b, a + 1.0, a - 1.0
    c = 1.0
    d = 1.0 - qab * x / qap
    if abs(d) < _CF_TINY:
        d = _CF_TINY
    d = 1.0 / d
    h = d
    for m in range(1, _CF_MAX_ITER):
        m2 = 2 * m
        aa = m * (b - m) * x / ((qam + m2) * (a + m2))
        d = 1.0 + aa * d
        if abs(d) < _CF_TINY:
            d = _CF_TINY
        c = 1.0 + aa / c
        if abs(c) < _CF_TINY:
            c = _CF_TINY
        d = 1.0 / d
        h *= d * c
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2))
        d = 1.0 + aa * d
        if abs(d) < _CF_TINY:
            d = _CF_TINY
        c = 1.0 + aa / c
        if abs(c) < _CF_TINY:
            c = _CF_TINY
        d = 1.0 / d
        step = d * c
        h *= step
        if abs(step - 1.0) < _CF_ACC:
            return h
    raise ToleranceUnreachable("incomplete Beta continued fraction did not converge")


def ibeta_lower(a: float, b: float, x: float) -> float:
    """Unregularized lower incomplete Beta integral on [0, x]."""
    if not (a > 0.0 and b > 0.0):
        raise ValueError(f"incomplete Beta needs positive parameters, got ({a}, {b})")
    if x <= 0.0:
        return 0.0
    if x >= 1.0:
        return beta_value(a, b).mid
    front = math.exp(a * math.log(x) + b * math.log1p(-x))
    if x < (a + 1.0) / (a + b + 2.0):
        return front * _beta_cf(a, b, x) / a
    return beta_value(a, b).mid - front * _beta_cf(b, a, 1.0 - x) / b


@lru_cache(maxsize=None)
def _jacobi_rule(m: int, beta_exp: float) -> tuple[tuple[float, ...], tuple[float, ...]]:
    nodes, weights = roots_jacobi(m, 0.0, beta_exp)
    return tuple(nodes.tolist()), tuple(weights.tolist())


def _gauss_jacobi_half(beta_exp: float, f, m: int) -> float:
    """integral_0^(1/2) v^beta_exp f(v) dv for smooth f, m-point rule."""
    nodes, weights = _jacobi_rule(m, beta_exp)
    scale = 4.0 ** (-(beta_exp + 1.0))
    return scale * math.fsum(w * f((1.0 + t) / 4.0) for t, w in zip(nodes, weights))


def _refined_piece(beta_exp: float, f, tol: float) -> tuple[float, float, int]:
    prev = _gauss_jacobi_half(beta_exp, f, _QUAD_RULES[0])
    used = _QUAD_RULES[0]
    for m in _QUAD_RULES[1:]:
        cur = _gauss_jacobi_half(beta_exp, f, m)
        used += m
        est = _QUAD_SAFETY * abs(cur - prev) + 64.0 * EPS * abs(cur)
        if est <= tol:
            return cur, est, used
        prev = cur
    raise ToleranceUnreachable(
        f"quadrature piece did not reach tol={tol} within {_QUAD_RULES[-1]} points"
    )


def simplex_integral(a: RatLike, b: RatLike, p: RatLike, q: RatLike, tol: float) -> QuadResult:
    """integral over {0 <= u <= v <= 1} of u^(a-1)(1-u)^(b-1) v^(p-1)(1-v)^(q-1).

    Both endpoint singularities are split off analytically: the v-integral is
    cut at 1/2, the u-power is absorbed into a Gauss-Jacobi weight on the
    left, and the reflected w = 1 - v piece absorbs the (1-v) power on the
    right, leaving smooth factors built from incomplete-Beta ratios.  The
    reported radius is a rule-doubling estimate, not a certificate.
    """
    a, b, p, q = float(a), float(b), float(p), float(q)
    if not (a > 0.0 and b > 0.0 and p > 0.0 and q > 0.0):
        raise ValueError(f"parameters must be positive, got {(a, b, p, q)}")
    if b >= 1.0:
        raise ValueError(f"the inner exponent requires b < 1, got b = {b}")
    if tol <= 0.0:
        raise ValueError(f"tolerance must be positive, got {tol}")

    beta_ab = beta_value(a, b)

    def left_factor(v: float) -> float:
        # G(v)/v^a * (1-v)^(q-1), analytic on [0, 1/2]
        return ibeta_lower(a, b, v) / v**a * (1.0 - v) ** (q - 1.0)

    def right_factor(w: float) -> float:
        # (int_0^w u^(b-1)(1-u)^(a-1) du) / w^b * (1-w)^(p-1)
        return ibeta_lower(b, a, w) / w**b * (1.0 - w) ** (p - 1.0)

    piece_tol = tol / 3.0
    left_val, left_err, left_nodes = _refined_piece(p + a - 1.0, left_factor, piece_tol)
    right_val, right_err, right_nodes = _refined_piece(q + b - 1.0, right_factor, piece_tol)
    mid_tail = ibeta_lower(q, p, 0.5)

    left_iv = RealInterval(left_val, left_err + _SPECFUN_REL * abs(left_val))
    right_iv = RealInterval(right_val, right_err + _SPECFUN_REL * abs(right_val))
    tail_iv = RealInterval(mid_tail, _SPECFUN_REL * abs(mid_tail))
    total = left_iv + beta_ab * tail_iv - right_iv
    return QuadResult(total, left_nodes + right_nodes)


@dataclass(frozen=True)
class XValue:
    """A certified numerical value of x_{r,s,l,m}."""

    n: int
    r: int
    s: int
    l: int
    m: int
    mid: float
    err: float
    method: str
    terms_or_nodes: int

    @property
    def interval(self) -> RealInterval:
        return RealInterval(self.mid, self.err)

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "r": self.r,
            "s": self.s,
            "l": self.l,
            "m": self.m,
            "mid": self.mid,
            "err": self.err,
            "method": self.method,
            "terms_or_nodes": self.terms_or_nodes,
        }


def series_params(n: int, r: int, s: int, l: int, m: int) -> HypParams:
    """3F2 parameters of x_{r,s,l,m}: (r, N-s, r+l)/N over (N+r, r+l+m)/N."""
    return HypParams(
        Fraction(r, n),
        1 - Fraction(s, n),
        Fraction(r + l, n),
        1 + Fraction(r, n),
        Fraction(r + l + m, n),
    )


def _x_series(n: int, r: int, s: int, l: int, m: int, tol: float, max_terms: int):
    prefactor = (
        beta_value(Fraction(r + l, n), Fraction(m, n))
        * n
        / (beta_rational(n, r, s) * beta_rational(n, l, m) * r)
    )
    inner_tol = tol / (4.0 * prefactor.hi)
    for _ in range(3):
        series = hyp3f2_unit(series_params(n, r, s, l, m), inner_tol, max_terms)
        value = prefactor * series.value
        if value.rad <= tol:
            return value, series.terms
        inner_tol /= 16.0
    raise ToleranceUnreachable(
        f"series route stuck above tol={tol} for x_{{{r},{s},{l},{m}}}"
    )


def _x_quadrature(n: int, r: int, s: int, l: int, m: int, tol: float):
    denom = beta_rational(n, r, s) * beta_rational(n, l, m)
    inner_tol = tol * denom.lo / 2.0
    quad = simplex_integral(
        Fraction(r, n), Fraction(s, n), Fraction(l, n), Fraction(m, n), inner_tol
    )
    return quad.value / denom, quad.nodes


def x_value(
    n: int,
    r: int,
    s: int,
    l: int,
    m: int,
    tol: float = 1e-8,
    method: str = "both",
    max_terms: int = 10_000_000,
) -> XValue:
    """Certified x_{r,s,l,m} for valid form indices (r, s) and (l, m).

    method "series" carries the certified radius, "quadrature" the heuristic
    rule-doubling radius, and "both" computes the two independently, raises
    RuntimeError when their intervals fail to overlap, and reports the
    series enclosure.
    """
    FormIdx(n, r, s)
    FormIdx(n, l, m)
    if method not in ("series", "quadrature", "both"):
        raise ValueError(f"unknown method {method!r}")
    if tol <= 0.0:
        raise ValueError(f"tolerance must be positive, got {tol}")

    if method == "series":
        value, count = _x_series(n, r, s, l, m, tol, max_terms)
    elif method == "quadrature":
        value, count = _x_quadrature(n, r, s, l, m, tol)
    else:
        s_val, terms = _x_series(n, r, s, l, m, tol, max_terms)
        q_val, nodes = _x_quadrature(n, r, s, l, m, tol)
        if abs(s_val.mid - q_val.mid) > s_val.rad + q_val.rad:
            raise RuntimeError(
                f"series and quadrature disagree for x_{{{r},{s},{l},{m}}}: "
                f"{s_val.mid} +- {s_val.rad} vs {q_val.mid} +- {q_val.rad}"
            )
        value, count = s_val, terms + nodes
    return XValue(n, r, s, l, m, value.mid, value.rad, method, count)

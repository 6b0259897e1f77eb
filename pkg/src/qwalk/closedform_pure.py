"""Closed-form position amplitudes for the pure-state walk.

For a walker prepared on finitely many sites, the amplitude pair at time t
is a finite double sum over source sites x' and an auxiliary index h. With
d = x - x', chi = e^{i(phi1+phi2)} and all factorial arguments required to
be non-negative integers (terms are dropped otherwise, never continued via
the Gamma function), the six term families are, schematically,

    alpha_x(t) =  sum_h (-1)^{(h-d)/2} T(t, h; d) cos^h(theta)
                      chi^{(t-d)/2} alpha_{x'}                      (F1)
               +  sum_h (-1)^{(h-1-d)/2} T(t-1, h; d+1...) cos^{h+1}(theta)
                      chi^{(t-d)/2} alpha_{x'}                      (F2)
               +  sum_h (-1)^{(h+1-d)/2} T(t-1, h; d-1...) cos^h(theta)
                      sin(theta) e^{i phi1} chi^{(t-d)/2} beta_{x'} (F3)

and mirror families F4..F6 for beta_x(t), where
T(m, h; ...) = ((m+h)/2)! / [((m-h)/2)! p! q!] is a trinomial whose lower
arguments p, q are the family-specific half-integers spelled out in the
table below. Admissibility (all arguments integral and non-negative) forces
h = |d| parity and confines support to the light cone |d| <= t.

The beta <- alpha cross family carries a phase that can be written two
equivalent ways: e^{-i phi1} chi^{(t-d)/2} or e^{+i phi2} chi^{(t-d)/2 - 1}
(identical because chi = e^{i(phi1+phi2)}). Both spellings are exposed via
``beta_cross_phase`` and tested to agree exactly.

Three arithmetic modes: ``exact`` (ring Q[sqrt(2)][i], eighth-turn coins
only), ``adaptive`` (mpmath, precision sized from the largest trinomial
plus guard bits), ``double`` (floats; cancellation-prone at large t by
design, so the failure stays demonstrable).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterator, NamedTuple

import mpmath

from .arithmetic import (
    Angle,
    SqrtTwo,
    SqrtTwoComplex,
    guard_bits,
    neumaier_sum,
)
from .core import CoinParams, Distribution, PureState

__all__ = [
    "TermIndex",
    "FAMILIES",
    "admissible_terms",
    "term_coefficient",
    "coefficient_bits",
    "amplitude",
    "distribution",
]

MODES = ("exact", "adaptive", "double")
BETA_CROSS_PHASES = ("phi1", "phi2")


class _Family(NamedTuple):
    target: str  # which output component the family feeds
    source: str  # which input component it reads
    dt: int      # 0 for the f_t families, 1 for the f_{t-1} families
    p0: int      # p = (h + p0 + d)/2
    q0: int      # q = (h + q0 - d)/2, sign of the term is (-1)^q
    cos_plus: bool   # cos exponent is h+1 instead of h
    use_sin: bool    # extra sin(theta) factor
    negate: bool     # overall minus sign
    phase: str       # "none" | "phi1" | "cross"


FAMILIES: dict[str, _Family] = {
    "alpha_ft": _Family("alpha", "alpha", 0, 0, 0, False, False, False, "none"),
    "alpha_cos": _Family("alpha", "alpha", 1, 1, -1, True, False, False, "none"),
    "alpha_sin": _Family("alpha", "beta", 1, -1, 1, False, True, False, "phi1"),
    "beta_ft": _Family("beta", "beta", 0, 0, 0, False, False, False, "none"),
    "beta_sin": _Family("beta", "alpha", 1, 1, -1, False, True, False, "cross"),
    "beta_cos": _Family("beta", "beta", 1, -1, 1, True, False, True, "none"),
}


@dataclass(frozen=True)
class TermIndex:
    """One admissible term: auxiliary index h, source site xp, family name."""

    h: int
    xp: int
    family: str


def admissible_terms(x: int, t: int, xp: int, family: str) -> Iterator[TermIndex]:
    """Yield the admissible h values for one (destination, source, family).

    A term survives iff every factorial argument is a non-negative integer;
    equivalently h has the right parity and clears the family's offsets.
    """
    fam = FAMILIES.get(family)
    if fam is None:
        raise ValueError(f"unknown family {family!r}")
    d = x - xp
    m = t - fam.dt
    if m < 0:
        return
    if (fam.p0 + d - m) % 2:
        return
    h0 = max(0, -(fam.p0 + d), d - fam.q0)
    h0 += (m - h0) % 2
    for h in range(h0, m + 1, 2):
        yield TermIndex(h=h, xp=xp, family=family)


def term_coefficient(t: int, family: str, d: int, h: int) -> int:
    """Signed integer coefficient of one admissible term (the trinomial
    times the term's sign), excluding the cos/sin/phase factors."""
    fam = FAMILIES[family]
    m = t - fam.dt
    n = (m + h) // 2
    a = (m - h) // 2
    p = (h + fam.p0 + d) // 2
    q = (h + fam.q0 - d) // 2
    if min(a, p, q) < 0:
        raise ValueError("term is not admissible")
    coeff = math.comb(n, a) * math.comb(n - a, p)
    if (q + fam.negate) % 2:
        coeff = -coeff
    return coeff


def coefficient_bits(t: int) -> int:
    """Bit length of the largest trinomial any family can produce at time t.

    Used to size the adaptive working precision before any summation
    happens.
    """
    worst = 1
    for m in (t, t - 1):
        for h in range(max(m % 2, 0), m + 1, 2):
            n = (m + h) // 2
            a = (m - h) // 2
            c = math.comb(n, a) * math.comb(n - a, (h + 1) // 2)
            if c > worst:
                worst = c
    return worst.bit_length()


def _collect_terms(x: int, t: int, init: PureState):
    """Group admissible terms per (family, source site): the h-sum inside a
    group is real, so each group costs one complex multiply."""
    groups = []
    for xp in init.support:
        d = x - xp
        if abs(d) > t or (t - d) % 2:
            continue
        for name, fam in FAMILIES.items():
            terms = [
                (term_coefficient(t, name, d, ti.h), ti.h + fam.cos_plus)
                for ti in admissible_terms(x, t, xp, name)
            ]
            if terms:
                groups.append((name, fam, xp, (t - d) // 2, terms))
    return groups


def _check_args(t: int, mode: str, beta_cross_phase: str) -> None:
    if t < 0:
        raise ValueError("t must be non-negative")
    if mode not in MODES:
        raise ValueError(f"unknown mode {mode!r}")
    if beta_cross_phase not in BETA_CROSS_PHASES:
        raise ValueError(f"unknown beta_cross_phase {beta_cross_phase!r}")


def _exact_context(params: CoinParams, t: int, beta_cross_phase: str):
    if not params.exact_capable:
        raise ValueError("exact mode needs coin angles on the eighth-turn grid")
    cos = params.theta.cos_exact()
    sin = params.theta.sin_exact()
    cos_pows = [SqrtTwo(1)]
    for _ in range(t + 1):
        cos_pows.append(cos_pows[-1] * cos)
    chi = params.chi_exact()
    chi_conj = chi.conjugate()
    ephi1 = params.phi1.exp_i_exact()
    if beta_cross_phase == "phi1":
        cross, cross_shift = ephi1.conjugate(), 0
    else:
        cross, cross_shift = params.phi2.exp_i_exact(), -1

    def chi_pow(e: int) -> SqrtTwoComplex:
        return chi**e if e >= 0 else chi_conj ** (-e)

    return cos_pows, SqrtTwoComplex(sin), chi_pow, ephi1, cross, cross_shift


def _amplitude_exact(x, t, init, params, beta_cross_phase):
    cos_pows, sin_c, chi_pow, ephi1, cross, cross_shift = _exact_context(
        params, t, beta_cross_phase
    )
    out = {
        "alpha": SqrtTwoComplex.zero(),
        "beta": SqrtTwoComplex.zero(),
    }
    for _name, fam, xp, e, terms in _collect_terms(x, t, init):
        inner = SqrtTwo()
        for coeff, cexp in terms:
            inner = inner + coeff * cos_pows[cexp]
        src = init.amplitudes[xp][0 if fam.source == "alpha" else 1]
        factor = src
        if fam.use_sin:
            factor = factor * sin_c
        if fam.phase == "phi1":
            factor = factor * ephi1 * chi_pow(e)
        elif fam.phase == "cross":
            factor = factor * cross * chi_pow(e + cross_shift)
        else:
            factor = factor * chi_pow(e)
        out[fam.target] = out[fam.target] + factor * SqrtTwoComplex(inner)
    return out["alpha"], out["beta"]


def _mp_expj(angle: Angle):
    value = mpmath.expjpi(mpmath.mpf(angle.pi_num) / angle.pi_den)
    if angle.offset:
        value = value * mpmath.expj(mpmath.mpf(angle.offset))
    return value


def _amplitude_adaptive(x, t, init, params, beta_cross_phase):
    prec = coefficient_bits(t) + guard_bits()
    with mpmath.workprec(max(prec, 53)):
        th = params.theta.mp_radians()
        cos, sin = mpmath.cos(th), mpmath.sin(th)
        cos_pows = [mpmath.mpf(1)]
        for _ in range(t + 1):
            cos_pows.append(cos_pows[-1] * cos)
        chi = _mp_expj(params.phi1) * _mp_expj(params.phi2)
        ephi1 = _mp_expj(params.phi1)
        if beta_cross_phase == "phi1":
            cross, cross_shift = mpmath.conj(ephi1), 0
        else:
            cross, cross_shift = _mp_expj(params.phi2), -1
        alpha = mpmath.mpc(0)
        beta = mpmath.mpc(0)
        for _name, fam, xp, e, terms in _collect_terms(x, t, init):
            inner = mpmath.mpf(0)
            for coeff, cexp in terms:
                inner += coeff * cos_pows[cexp]
            src = mpmath.mpc(init.amplitudes[xp][0 if fam.source == "alpha" else 1])
            factor = src
            if fam.use_sin:
                factor = factor * sin
            if fam.phase == "phi1":
                factor = factor * ephi1 * chi**e
            elif fam.phase == "cross":
                factor = factor * cross * chi ** (e + cross_shift)
            else:
                factor = factor * chi**e
            value = factor * inner
            if fam.target == "alpha":
                alpha += value
            else:
                beta += value
        return complex(alpha), complex(beta)


def _amplitude_double(x, t, init, params, beta_cross_phase):
    th = params.theta.radians
    cos, sin = math.cos(th), math.sin(th)
    cos_pows = [1.0]
    for _ in range(t + 1):
        cos_pows.append(cos_pows[-1] * cos)
    chi = params.chi
    ephi1 = complex(math.cos(params.phi1.radians), math.sin(params.phi1.radians))
    if beta_cross_phase == "phi1":
        cross, cross_shift = ephi1.conjugate(), 0
    else:
        ephi2 = complex(math.cos(params.phi2.radians), math.sin(params.phi2.radians))
        cross, cross_shift = ephi2, -1
    alpha = 0j
    beta = 0j
    for _name, fam, xp, e, terms in _collect_terms(x, t, init):
        inner = neumaier_sum(coeff * cos_pows[cexp] for coeff, cexp in terms)
        src = init.amplitudes[xp][0 if fam.source == "alpha" else 1]
        factor = complex(src)
        if fam.use_sin:
            factor *= sin
        if fam.phase == "phi1":
            factor *= ephi1 * chi**e
        elif fam.phase == "cross":
            factor *= cross * chi ** (e + cross_shift)
        else:
            factor *= chi**e
        value = factor * inner
        if fam.target == "alpha":
            alpha += value
        else:
            beta += value
    return alpha, beta


def amplitude(
    x: int,
    t: int,
    init: PureState,
    params: CoinParams,
    mode: str = "adaptive",
    beta_cross_phase: str = "phi1",
):
    """Amplitude pair (alpha_x(t), beta_x(t)) by the closed form.

    Returns ring elements in exact mode, complex otherwise. Positions
    outside the light cone give exact zeros.
    """
    _check_args(t, mode, beta_cross_phase)
    if mode == "exact":
        if not init.exact:
            raise ValueError("exact mode needs ring-valued initial amplitudes")
        if t == 0:
            return init.amplitude(x)
        return _amplitude_exact(x, t, init, params, beta_cross_phase)
    init = init.to_float()
    if t == 0:
        return init.amplitude(x)
    if mode == "adaptive":
        return _amplitude_adaptive(x, t, init, params, beta_cross_phase)
    return _amplitude_double(x, t, init, params, beta_cross_phase)


def distribution(
    t: int,
    init: PureState,
    params: CoinParams,
    mode: str = "adaptive",
    beta_cross_phase: str = "phi1",
) -> Distribution:
    """Closed-form distribution on the full light-cone span of the initial
    support, parity-forbidden sites included as exact zeros."""
    _check_args(t, mode, beta_cross_phase)
    lo, hi = init.span
    grid = range(lo - t, hi + t + 1)
    if mode == "exact":
        exact: dict[int, SqrtTwo] = {}
        for x in grid:
            a, b = amplitude(x, t, init, params, "exact", beta_cross_phase)
            exact[x] = a.abs_sq() + b.abs_sq()
        probs = {x: float(v) for x, v in exact.items()}
        return Distribution(probs, t=t, method="closed-form", mode="exact", exact=exact)
    probs = {}
    for x in grid:
        a, b = amplitude(x, t, init, params, mode, beta_cross_phase)
        probs[x] = abs(a) ** 2 + abs(b) ** 2
    return Distribution(probs, t=t, method="closed-form", mode=mode)

"""Closed-form distribution for a Hadamard walker whose coin starts in an
arbitrary mixed state r0 I + r1 X + r2 Y + r3 Z (r0 = 1/2 for unit trace).

The position distribution is a double momentum integral of the trace of the
t-th power of the pair superoperator L_{k,k'} against the coin density
matrix. The quartic Horner identity turns L^t into four terms f_{t-j} L_j,
whose first Pauli rows produce trace kernels built from
delta = k - k' and sigma = k + k':

    j=0:  2 r0
    j=1:  2 r0 cos(sigma)           - 2i r? sin(delta)
    j=2: -2 r0 cos(delta) cos(sigma) - 2i r? cos(sigma) sin(delta)
         - 2i r? sin(delta) sin(sigma) ...
    j=3: -2 r0 cos(delta)           - 2i r3 sin(delta)

Two kernel assignments are shipped. ``consistent`` attaches the Pauli
components the way the Horner-basis rows dictate (r1 on the first-order
sin(delta) kernel). ``literal`` is an alternative assignment that swaps r1
and r2 there and merges (r2 + r3) on the second-order mixed kernel; it is
kept so the discrepancy it produces can be measured. The direct
density-matrix oracle adjudicates: ``consistent`` matches it.

The momentum integrals reduce, through binomial expansions of the cosine
powers, to integer Kronecker-delta selections; every vanishing claim is
recomputed here rather than assumed (the sin(delta) sin(sigma) brackets do
cancel pairwise and the machinery asserts that the net imaginary part is
exactly zero). All weights are exact rationals; floats appear only in the
final per-position dot product with (r0, r1, r2, r3).
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache
from typing import NamedTuple

from .core import Distribution, MixedLocalizedState
from .horner import quartic_partitions

__all__ = [
    "half_binom",
    "KERNELS",
    "kernel_value",
    "integral_identity",
    "KernelTerm",
    "trace_kernels",
    "trace_series",
    "prob_pipeline",
    "prob_literal",
    "pipeline_weights",
    "literal_weights",
    "distribution_mixed",
    "MIXED_METHODS",
]

MIXED_METHODS = ("consistent", "literal", "pipeline-literal")


def half_binom(n: int, num: int) -> int:
    """C(n, num/2) when num is even and num/2 lies in [0, n], else 0.

    The closed forms index binomials by half-integers; out-of-range or
    non-integral lower arguments annihilate the term.
    """
    if num % 2 or num < 0 or num > 2 * n:
        return 0
    return math.comb(n, num // 2)


# Integral identities: for each trig kernel,
#   int dk/2pi int dk'/2pi e^{ikA} e^{ik'B} kernel(k,k')
#     = (1/i if imag else 1) * sum of frac * [A == a][B == b].
# Entries are (a, b, frac).
_IDENTITIES: dict[str, tuple[bool, tuple[tuple[int, int, Fraction], ...]]] = {
    "one": (False, ((0, 0, Fraction(1)),)),
    "cos_sum": (False, ((-1, -1, Fraction(1, 2)), (1, 1, Fraction(1, 2)))),
    "cos_diff": (False, ((-1, 1, Fraction(1, 2)), (1, -1, Fraction(1, 2)))),
    "sin_diff": (True, ((-1, 1, Fraction(1, 2)), (1, -1, Fraction(-1, 2)))),
    "cos_diff_cos_sum": (
        False,
        (
            (-2, 0, Fraction(1, 4)),
            (2, 0, Fraction(1, 4)),
            (0, -2, Fraction(1, 4)),
            (0, 2, Fraction(1, 4)),
        ),
    ),
    "sin_diff_sin_sum": (
        False,
        (
            (-2, 0, Fraction(-1, 4)),
            (2, 0, Fraction(-1, 4)),
            (0, -2, Fraction(1, 4)),
            (0, 2, Fraction(1, 4)),
        ),
    ),
    "sin_diff_cos_sum": (
        True,
        (
            (-2, 0, Fraction(1, 4)),
            (2, 0, Fraction(-1, 4)),
            (0, -2, Fraction(-1, 4)),
            (0, 2, Fraction(1, 4)),
        ),
    ),
}

KERNELS = tuple(_IDENTITIES)


def integral_identity(kernel: str):
    """(imag_flag, ((a, b, frac), ...)) for one kernel; see module header."""
    return _IDENTITIES[kernel]


def kernel_value(kernel: str, k: float, kp: float) -> float:
    d = k - kp
    s = k + kp
    return {
        "one": 1.0,
        "cos_sum": math.cos(s),
        "cos_diff": math.cos(d),
        "sin_diff": math.sin(d),
        "cos_diff_cos_sum": math.cos(d) * math.cos(s),
        "sin_diff_sin_sum": math.sin(d) * math.sin(s),
        "sin_diff_cos_sum": math.sin(d) * math.cos(s),
    }[kernel]


class KernelTerm(NamedTuple):
    """One additive piece of the trace kernel at Horner order j:
    coeff * (i if imag else 1) * kernel(k,k') * r[r_index] multiplying
    f_{t-j}."""

    j: int
    kernel: str
    r_index: int
    coeff: int
    imag: bool


_CONSISTENT: tuple[KernelTerm, ...] = (
    KernelTerm(0, "one", 0, 2, False),
    KernelTerm(1, "cos_sum", 0, 2, False),
    KernelTerm(1, "sin_diff", 1, -2, True),
    KernelTerm(2, "cos_diff_cos_sum", 0, -2, False),
    KernelTerm(2, "sin_diff_cos_sum", 1, -2, True),
    KernelTerm(2, "sin_diff_sin_sum", 2, -2, True),
    KernelTerm(2, "sin_diff_cos_sum", 3, -2, True),
    KernelTerm(3, "cos_diff", 0, -2, False),
    KernelTerm(3, "sin_diff", 3, -2, True),
)

_LITERAL: tuple[KernelTerm, ...] = (
    KernelTerm(0, "one", 0, 2, False),
    KernelTerm(1, "cos_sum", 0, 2, False),
    KernelTerm(1, "sin_diff", 2, -2, True),
    KernelTerm(2, "cos_diff_cos_sum", 0, -2, False),
    KernelTerm(2, "sin_diff_sin_sum", 1, -2, True),
    KernelTerm(2, "sin_diff_cos_sum", 2, -2, True),
    KernelTerm(2, "sin_diff_cos_sum", 3, -2, True),
    KernelTerm(3, "cos_diff", 0, -2, False),
    KernelTerm(3, "sin_diff", 3, -2, True),
)


def trace_kernels(mode: str) -> tuple[KernelTerm, ...]:
    """The kernel table for one assignment ("consistent" or "literal")."""
    if mode == "consistent":
        return _CONSISTENT
    if mode == "literal":
        return _LITERAL
    raise ValueError(f"unknown kernel mode {mode!r}")


def trace_series(mode: str, k: float, kp: float, r) -> list[complex]:
    """[w_0, ..., w_3] with Tr(L^t O) = sum_j f_{t-j} w_j for the quartic
    f at (k, k'). Used to test the tables against direct conjugation."""
    r = tuple(float(v) for v in r)
    out = [0j, 0j, 0j, 0j]
    for term in trace_kernels(mode):
        value = term.coeff * kernel_value(term.kernel, k, kp) * r[term.r_index]
        out[term.j] += value * 1j if term.imag else value
    return out


@lru_cache(maxsize=None)
def _base_weights(m: int) -> tuple[tuple[int, int, int], ...]:
    """Aggregated expansion of the quartic f_m coefficient products.

    f_m's partition sum expands, through binomials of c0^h0 c1^h1 c2^h2
    c3^h3, into signed integer weights on monomials
    cos^A1(delta) cos^A2(sigma). Returns tuples (A1, A2, weight); the
    1/2^{A1+A2} from later cosine-power expansion is NOT included here.
    """
    acc: dict[tuple[int, int], int] = {}
    for h0, h1, h2, h3 in quartic_partitions(m):
        mult = math.comb(h0 + h1, h0) * math.comb(h0 + h1 + h2, h2)
        mult = mult * math.comb(h0 + h1 + h2 + h3, h3)
        base = mult * (2**h1) * (-1) ** h3
        for s0 in range(h0 + 1):
            c_s0 = math.comb(h0, s0) * (-1) ** (h0 - s0)
            for s2 in range(h2 + 1):
                weight = base * c_s0 * math.comb(h2, s2) * (-1) ** (h2 - s2)
                a1 = s0 + h1 + s2
                a2 = h0 + h1 + h2 - s0 - s2
                key = (a1, a2)
                acc[key] = acc.get(key, 0) + weight
    return tuple((a1, a2, w) for (a1, a2), w in sorted(acc.items()))


@lru_cache(maxsize=None)
def pipeline_weights(t: int, mode: str) -> dict[int, tuple[Fraction, ...]]:
    """Exact weight vectors w(y) with P(y, t) = sum_i w_i(y) r_i, computed
    by pushing every kernel through its integral identity.

    Terms whose  i  prefactor does not cancel against an identity's 1/i
    are accumulated separately; their total is asserted to vanish exactly
    (this is the recomputation of the claimed kernel cancellations).
    """
    if t < 0:
        raise ValueError("t must be non-negative")
    terms = trace_kernels(mode)
    bases = {}
    for term in terms:
        m = t - term.j
        if m >= 0 and m not in bases:
            bases[m] = _base_weights(m)
    # Common denominator 2^{t+2}: each contribution carries 2^{-(A1+A2)}
    # from the cosine expansions and at most 1/4 from the identity.
    shift = t + 2
    table: dict[int, tuple[Fraction, ...]] = {}
    for y in range(-t, t + 1):
        real_acc = [0, 0, 0, 0]
        imag_acc = [0, 0, 0, 0]
        for term in terms:
            m = t - term.j
            if m < 0:
                continue
            kern_imag, entries = _IDENTITIES[term.kernel]
            for a1, a2, w in bases[m]:
                scale = w * term.coeff * (1 << (t - a1 - a2))
                for a, b, frac in entries:
                    c1 = half_binom(a1, a1 - y + (a - b) // 2)
                    if not c1:
                        continue
                    c2 = half_binom(a2, a2 + (a + b) // 2)
                    if not c2:
                        continue
                    # frac has denominator 1, 2 or 4; scale carries 2^2.
                    piece = scale * int(frac * 4) * c1 * c2
                    if term.imag == kern_imag:
                        real_acc[term.r_index] += piece
                    elif term.imag:
                        imag_acc[term.r_index] += piece
                    else:
                        imag_acc[term.r_index] -= piece
        if any(imag_acc):
            raise AssertionError(
                f"nonvanishing imaginary trace residue at t={t}, y={y}: {imag_acc}"
            )
        table[y] = tuple(Fraction(n, 1 << shift) for n in real_acc)
    return table


@lru_cache(maxsize=None)
def literal_weights(t: int) -> dict[int, tuple[Fraction, ...]]:
    """Exact weight vectors of the compact closed form (the "literal"
    distribution formula, with the mixed-kernel groups it drops)."""
    if t < 0:
        raise ValueError("t must be non-negative")
    bases = {m: _base_weights(m) for m in range(max(t - 3, 0), t + 1)}
    table: dict[int, tuple[Fraction, ...]] = {}
    for y in range(-t, t + 1):
        w0 = Fraction(0)
        w2 = Fraction(0)
        w3 = Fraction(0)
        for j in range(4):
            m = t - j
            if m < 0:
                continue
            for a1, a2, w in bases[m]:
                a0 = Fraction(w, 1 << (a1 + a2))
                if j == 0:
                    w0 += a0 * 2 * half_binom(a1, a1 - y) * half_binom(a2, a2)
                elif j == 1:
                    w0 += a0 * 2 * half_binom(a1, a1 - y) * half_binom(a2, a2 - 1)
                    w2 += (
                        a0
                        * Fraction(y, a1 + 1)
                        * half_binom(a1 + 1, a1 - y + 1)
                        * half_binom(a2, a2)
                    )
                elif j == 2:
                    w0 -= a0 * half_binom(a1 + 1, a1 - y + 1) * half_binom(a2, a2 - 1)
                else:
                    hb5 = half_binom(a1 + 1, a1 - y + 1) * half_binom(a2, a2)
                    w0 -= a0 * hb5
                    w3 += a0 * Fraction(y, a1 + 1) * hb5
        table[y] = (w0, Fraction(0), w2, w3)
    return table


def _dot(weights: tuple[Fraction, ...], r: tuple[float, ...]) -> float:
    return float(sum(float(w) * v for w, v in zip(weights, r)))


def _as_pauli(r) -> tuple[float, float, float, float]:
    if isinstance(r, MixedLocalizedState):
        return r.pauli
    r = tuple(float(v) for v in r)
    if len(r) != 4:
        raise ValueError("expected four Pauli components (r0, r1, r2, r3)")
    return r


def prob_pipeline(y: int, t: int, r, mode: str = "consistent") -> float:
    """P(y, t) through the integral pipeline with the chosen kernel table."""
    weights = pipeline_weights(t, mode).get(y)
    return _dot(weights, _as_pauli(r)) if weights is not None else 0.0


def prob_literal(y: int, t: int, r) -> float:
    """P(y, t) by the compact closed form (note: r1 never enters it)."""
    weights = literal_weights(t).get(y)
    return _dot(weights, _as_pauli(r)) if weights is not None else 0.0


def distribution_mixed(t: int, r, mode: str = "consistent") -> Distribution:
    """Distribution over y in [-t, t] (full grid; parity-forbidden sites
    carry exact zeros). mode selects the evaluation: "consistent" or
    "pipeline-literal" run the integral pipeline with the respective kernel
    table, "literal" evaluates the compact closed form."""
    if t < 0:
        raise ValueError("t must be non-negative")
    if mode not in MIXED_METHODS:
        raise ValueError(f"unknown mixed mode {mode!r}")
    pauli = _as_pauli(r)
    if mode == "literal":
        table = literal_weights(t)
    elif mode == "pipeline-literal":
        table = pipeline_weights(t, "literal")
    else:
        table = pipeline_weights(t, "consistent")
    probs = {y: _dot(table[y], pauli) for y in range(-t, t + 1)}
    return Distribution(probs, t=t, method=f"mixed-{mode}", mode="exact")

"""Momentum-space evolution on an odd ring large enough that the walk never
wraps, giving an independent second evaluation path.

Forward transform: alpha~_j = sum_x e^{+i k_j x} alpha_x with k_j = 2 pi j / n.
Inverse: alpha_x = (1/n) sum_j e^{-i k_j x} alpha~_j.

With this sign convention the coefficient pair at mode j evolves under the
one-step matrix taken at -k_j: the matrix u_k acts on the momentum ket
|k> = sum_x e^{ikx} |x>, whose expansion coefficients carry the opposite
phase. Propagating with u(-k_j) is what reproduces the position-space walk
(coin component 0 moving right); tests pin this against the direct oracle.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .core import CoinParams, Distribution, PureState
from .horner import u_k, u_k_power

__all__ = [
    "MomentumField",
    "ring_size",
    "forward",
    "propagate",
    "inverse",
    "evolve_spectral",
    "simulate",
]


@dataclass(frozen=True)
class MomentumField:
    """Coin-resolved momentum amplitudes on the n ring modes."""

    n: int
    alpha: np.ndarray
    beta: np.ndarray

    def __post_init__(self) -> None:
        if self.n % 2 == 0 or self.n < 1:
            raise ValueError("ring size must be odd and positive")
        if self.alpha.shape != (self.n,) or self.beta.shape != (self.n,):
            raise ValueError("mode arrays must have shape (n,)")

    @property
    def ks(self) -> np.ndarray:
        return 2.0 * math.pi * np.arange(self.n) / self.n

    def mode_norms(self) -> np.ndarray:
        return np.abs(self.alpha) ** 2 + np.abs(self.beta) ** 2


def ring_size(t: int, support_radius: int) -> int:
    """Smallest odd ring that keeps a walk of t steps from a support of the
    given radius strictly away from wrap-around."""
    n = 2 * (t + support_radius) + 3
    return n if n % 2 == 1 else n + 1


def forward(state: PureState, n: int) -> MomentumField:
    """Embed a line state on the ring and transform to momentum space."""
    state = state.to_float()
    lo, hi = state.span
    radius = max(abs(lo), abs(hi))
    if n % 2 == 0:
        raise ValueError("ring size must be odd")
    if n < 2 * radius + 1:
        raise ValueError(
            f"ring size {n} too small for support radius {radius}"
        )
    ks = 2.0 * math.pi * np.arange(n) / n
    alpha = np.zeros(n, dtype=complex)
    beta = np.zeros(n, dtype=complex)
    for x, (a, b) in state.amplitudes.items():
        phase = np.exp(1j * ks * x)
        alpha += phase * a
        beta += phase * b
    return MomentumField(n, alpha, beta)


def propagate(
    field: MomentumField, params: CoinParams, t: int, power: str = "repeated"
) -> MomentumField:
    """Advance every mode by t steps.

    power="repeated" multiplies the one-step matrix t times; "horner" uses
    the quadratic characteristic identity. Both must agree to float
    tolerance; tests enforce it.
    """
    if t < 0:
        raise ValueError("t must be non-negative")
    if power not in ("repeated", "horner"):
        raise ValueError(f"unknown power method {power!r}")
    alpha = np.empty(field.n, dtype=complex)
    beta = np.empty(field.n, dtype=complex)
    for j, k in enumerate(field.ks):
        vec = np.array([field.alpha[j], field.beta[j]], dtype=complex)
        if power == "horner":
            vec = u_k_power(params, -k, t) @ vec
        else:
            m = u_k(params, -k)
            for _ in range(t):
                vec = m @ vec
        alpha[j], beta[j] = vec
    return MomentumField(field.n, alpha, beta)


def inverse(field: MomentumField, lo: int | None = None, hi: int | None = None) -> PureState:
    """Transform back to positions lo..hi (default: the centered window
    covering the whole ring)."""
    half = (field.n - 1) // 2
    if lo is None:
        lo = -half
    if hi is None:
        hi = half
    ks = field.ks
    amps = {}
    for x in range(lo, hi + 1):
        phase = np.exp(-1j * ks * x)
        a = complex(np.dot(phase, field.alpha)) / field.n
        b = complex(np.dot(phase, field.beta)) / field.n
        amps[x] = (a, b)
    return PureState(amps)


def evolve_spectral(
    init: PureState, params: CoinParams, t: int, n: int | None = None,
    power: str = "repeated",
) -> PureState:
    """Full pipeline, returning amplitudes on the light-cone window."""
    lo, hi = init.span
    if n is None:
        n = ring_size(t, max(abs(lo), abs(hi)))
    field = propagate(forward(init, n), params, t, power=power)
    return inverse(field, lo - t, hi + t)


def simulate(
    init: PureState, params: CoinParams, t: int, n: int | None = None,
    power: str = "repeated",
) -> Distribution:
    state = evolve_spectral(init, params, t, n=n, power=power)
    probs = {
        x: abs(a) ** 2 + abs(b) ** 2 for x, (a, b) in state.amplitudes.items()
    }
    return Distribution(probs, t=t, method="spectral", mode="double")

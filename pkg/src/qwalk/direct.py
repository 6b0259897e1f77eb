"""Direct position-space evolution. This is the reference implementation
(oracle) that every other evaluation path is checked against.

A step applies the coin at every occupied site, then routes the coin-0
result to x+1 and the coin-1 result to x-1. Evolution is exact in
Q[sqrt(2)][i] when both the state and the coin live on the eighth-turn grid,
ordinary complex arithmetic otherwise.
"""

from __future__ import annotations

import math
from fractions import Fraction

import numpy as np

from .arithmetic import SqrtTwo, SqrtTwoComplex
from .core import (
    CoinParams,
    Distribution,
    MixedLocalizedState,
    PureState,
    coin_matrix,
    coin_matrix_exact,
    validate_state,
)

__all__ = ["step", "evolve_pure", "distribution_of", "evolve_mixed"]


def _coin_entries(params: CoinParams, exact: bool):
    if exact:
        return coin_matrix_exact(params)
    m = coin_matrix(params)
    return ((m[0, 0], m[0, 1]), (m[1, 0], m[1, 1]))


def step(state: PureState, params: CoinParams) -> PureState:
    """One walk step U = S C."""
    exact = state.exact and params.exact_capable
    if state.exact and not exact:
        state = state.to_float()
    (c00, c01), (c10, c11) = _coin_entries(params, exact)
    zero = SqrtTwoComplex.zero() if exact else 0j
    out: dict[int, list] = {}

    def cell(x: int) -> list:
        got = out.get(x)
        if got is None:
            got = [zero, zero]
            out[x] = got
        return got

    for x, (a, b) in state.amplitudes.items():
        cell(x + 1)[0] = cell(x + 1)[0] + (c00 * a + c01 * b)
        cell(x - 1)[1] = cell(x - 1)[1] + (c10 * a + c11 * b)
    return PureState({x: (a, b) for x, (a, b) in out.items()})


def evolve_pure(init: PureState, params: CoinParams, t: int) -> PureState:
    if t < 0:
        raise ValueError("t must be non-negative")
    state = init
    for _ in range(t):
        state = step(state, params)
    return state


def distribution_of(state: PureState, t: int = 0, method: str = "direct") -> Distribution:
    """Position distribution of a state, on the full integer span.

    Sites inside the span that the state never reaches (wrong parity, or
    interference zeros) appear explicitly with probability 0.
    """
    lo, hi = state.span
    if state.exact:
        exact: dict[int, SqrtTwo] = {x: SqrtTwo() for x in range(lo, hi + 1)}
        for x, (a, b) in state.amplitudes.items():
            exact[x] = a.abs_sq() + b.abs_sq()
        probs = {x: float(v) for x, v in exact.items()}
        return Distribution(probs, t=t, method=method, mode="exact", exact=exact)
    probs = {x: 0.0 for x in range(lo, hi + 1)}
    for x, (a, b) in state.amplitudes.items():
        probs[x] = abs(a) ** 2 + abs(b) ** 2
    return Distribution(probs, t=t, method=method, mode="double")


def _exact_basis_branches(r: tuple[float, float, float, float]):
    """Eigen-branches of a diagonal coin density matrix, kept exact.

    Diagonal rho (r1 = r2 = 0) has eigenpairs (r0 + r3, |0>) and
    (r0 - r3, |1>); the basis choice is pinned here so degenerate spectra
    stay deterministic.
    """
    r0, _, _, r3 = r
    one = SqrtTwoComplex.one()
    zero = SqrtTwoComplex.zero()
    return [
        (r0 + r3, PureState.localized(0, one, zero)),
        (r0 - r3, PureState.localized(0, zero, one)),
    ]


def _numeric_branches(rho: np.ndarray):
    evals, evecs = np.linalg.eigh(rho)
    branches = []
    for i in range(2):
        w = float(evals[i])
        v = evecs[:, i]
        branches.append((w, PureState.localized(0, complex(v[0]), complex(v[1]))))
    return branches


def evolve_mixed(
    state: MixedLocalizedState, params: CoinParams, t: int
) -> Distribution:
    """Distribution at time t for a walker started at the origin with a
    mixed coin state, by evolving the (at most two) eigen-branches of the
    coin density matrix as pure states and mixing their distributions.
    """
    diag = validate_state(state)
    if not diag.valid:
        raise ValueError(f"invalid mixed state: {diag.violations}")
    if t < 0:
        raise ValueError("t must be non-negative")
    r = state.pauli
    exact_ok = r[1] == 0.0 and r[2] == 0.0 and params.exact_capable
    branches = _exact_basis_branches(r) if exact_ok else _numeric_branches(state.rho)

    grid = range(-t, t + 1)
    if exact_ok:
        acc_exact: dict[int, SqrtTwo] = {x: SqrtTwo() for x in grid}
        for weight, branch in branches:
            if weight == 0.0:
                continue
            if weight < 0.0:
                raise ValueError(f"negative branch weight {weight!r}")
            frac = Fraction(weight)
            d = distribution_of(evolve_pure(branch, params, t), t)
            for x in acc_exact:
                acc_exact[x] = acc_exact[x] + frac * d.exact_value(x)
        probs = {x: float(v) for x, v in acc_exact.items()}
        return Distribution(
            probs, t=t, method="mixed-direct", mode="exact", exact=acc_exact
        )

    acc = {x: 0.0 for x in grid}
    for weight, branch in branches:
        if weight <= 0.0:
            if weight < -1e-12:
                raise ValueError(f"negative branch weight {weight!r}")
            continue
        # Branch vectors from eigh are unit; no renormalization needed.
        d = distribution_of(evolve_pure(branch, params, t), t)
        for x in acc:
            acc[x] += weight * d[x]
    return Distribution(acc, t=t, method="mixed-direct", mode="double")

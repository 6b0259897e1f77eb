"""Cross-verification harness.

Runs the same walk through independent evaluation paths (position-space
stepping, momentum-space propagation, closed-form coefficients) and
reports pairwise deviations, invariant defects, and pass/fail against
explicit tolerances. Reports serialize to canonical JSON that is
byte-stable across runs: timings are measured and carried on the report
object but excluded from the canonical form, since they are the only
nondeterministic field.
"""

from __future__ import annotations

import json
import math
import random
import time
from dataclasses import dataclass, field
from itertools import combinations

from . import closedform_mixed, closedform_pure, direct, spectral
from .core import (
    CoinParams,
    Distribution,
    MixedLocalizedState,
    PureState,
    max_pointwise_difference,
    total_variation,
)

__all__ = [
    "Tolerances",
    "ComparisonReport",
    "compare_pure",
    "compare_mixed",
    "InvariantSuiteReport",
    "run_invariant_suite",
    "PURE_METHODS",
    "MIXED_COMPARE_METHODS",
]

PURE_METHODS = ("direct", "spectral", "closed-form")
MIXED_COMPARE_METHODS = ("direct", "consistent", "literal", "pipeline-literal")


@dataclass(frozen=True)
class Tolerances:
    """Acceptance thresholds for a comparison run."""

    pairwise_tv: float = 1e-10
    pointwise: float = 1e-10
    normalization: float = 1e-12
    # Double-precision paths leave |amplitude|^2 roundoff dust (~1e-30) on
    # parity-forbidden sites; a genuine parity leak deposits O(1) mass.
    forbidden_mass: float = 1e-24
    symmetry: float = 1e-12


def _pair_key(a: str, b: str) -> str:
    return f"{a}|{b}"


@dataclass
class ComparisonReport:
    """Outcome of one multi-method comparison.

    ``pairwise_tv`` and ``pairwise_pointwise`` are keyed "methodA|methodB"
    in the order the methods were requested. ``failures`` lists every
    tolerance violation as a human-readable string; ``passed`` is its
    emptiness.
    """

    kind: str
    t: int
    methods: tuple[str, ...]
    tolerances: Tolerances
    pairwise_tv: dict[str, float]
    pairwise_pointwise: dict[str, float]
    normalization_error: dict[str, float]
    forbidden_mass: dict[str, float]
    symmetry_defect: float | None
    failures: list[str]
    distributions: dict[str, dict[int, float]]
    timings: dict[str, float] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return not self.failures

    def to_dict(self, include_timings: bool = False) -> dict:
        out = {
            "kind": self.kind,
            "t": self.t,
            "methods": list(self.methods),
            "tolerances": {
                "pairwise_tv": self.tolerances.pairwise_tv,
                "pointwise": self.tolerances.pointwise,
                "normalization": self.tolerances.normalization,
                "forbidden_mass": self.tolerances.forbidden_mass,
                "symmetry": self.tolerances.symmetry,
            },
            "pairwise_tv": dict(self.pairwise_tv),
            "pairwise_pointwise": dict(self.pairwise_pointwise),
            "normalization_error": dict(self.normalization_error),
            "forbidden_mass": dict(self.forbidden_mass),
            "symmetry_defect": self.symmetry_defect,
            "passed": self.passed,
            "failures": list(self.failures),
            "distributions": {
                m: {str(x): p for x, p in sorted(d.items())}
                for m, d in self.distributions.items()
            },
        }
        if include_timings:
            out["timings"] = dict(self.timings)
        return out

    def to_json(self, include_timings: bool = False) -> str:
        """Canonical JSON: sorted keys, no whitespace, timings omitted
        unless explicitly requested."""
        return json.dumps(
            self.to_dict(include_timings=include_timings),
            sort_keys=True,
            separators=(",", ":"),
        )


def _forbidden_mass(dist: Distribution, parities: set[int]) -> float:
    """Probability mass on sites the walk cannot reach at this t."""
    if len(parities) != 1:
        return 0.0
    (allowed,) = parities
    return sum(p for x, p in dist.items() if x % 2 != allowed)


def _check_distributions(
    report: ComparisonReport,
    dists: dict[str, Distribution],
    parities: set[int],
    check_symmetry: bool,
) -> None:
    tol = report.tolerances
    for name, dist in dists.items():
        norm_err = abs(dist.total() - 1.0)
        report.normalization_error[name] = norm_err
        if norm_err > tol.normalization:
            report.failures.append(
                f"{name}: normalization off by {norm_err:.3e} "
                f"(tolerance {tol.normalization:.3e})"
            )
        mass = _forbidden_mass(dist, parities)
        report.forbidden_mass[name] = mass
        if mass > tol.forbidden_mass:
            report.failures.append(
                f"{name}: {mass:.3e} probability on parity-forbidden sites"
            )
    for a, b in combinations(dists, 2):
        key = _pair_key(a, b)
        tv = total_variation(dists[a], dists[b])
        pw = max_pointwise_difference(dists[a], dists[b])
        report.pairwise_tv[key] = tv
        report.pairwise_pointwise[key] = pw
        if tv > tol.pairwise_tv:
            report.failures.append(
                f"{key}: total variation {tv:.3e} exceeds {tol.pairwise_tv:.3e}"
            )
        if pw > tol.pointwise:
            report.failures.append(
                f"{key}: pointwise deviation {pw:.3e} exceeds {tol.pointwise:.3e}"
            )
    if check_symmetry:
        defect = 0.0
        for dist in dists.values():
            for x in dist.positions:
                defect = max(defect, abs(dist[x] - dist[-x]))
        report.symmetry_defect = defect
        if defect > tol.symmetry:
            report.failures.append(
                f"symmetry defect {defect:.3e} exceeds {tol.symmetry:.3e}"
            )


def compare_pure(
    init: PureState,
    params: CoinParams,
    t: int,
    methods: tuple[str, ...] = PURE_METHODS,
    mode: str = "adaptive",
    beta_cross_phase: str = "phi1",
    tolerances: Tolerances | None = None,
    check_symmetry: bool = False,
) -> ComparisonReport:
    """Run a pure-state walk through each requested method and compare.

    ``mode`` selects the closed-form arithmetic ("exact", "adaptive",
    "double"); the direct method uses exact ring arithmetic automatically
    when the initial state and coin support it, and the momentum method is
    always double precision.
    """
    if t < 0:
        raise ValueError("t must be non-negative")
    unknown = [m for m in methods if m not in PURE_METHODS]
    if unknown:
        raise ValueError(f"unknown pure methods: {unknown}")
    report = ComparisonReport(
        kind="pure",
        t=t,
        methods=tuple(methods),
        tolerances=tolerances or Tolerances(),
        pairwise_tv={},
        pairwise_pointwise={},
        normalization_error={},
        forbidden_mass={},
        symmetry_defect=None,
        failures=[],
        distributions={},
    )
    dists: dict[str, Distribution] = {}
    for name in methods:
        start = time.perf_counter()
        if name == "direct":
            dist = direct.distribution_of(direct.evolve_pure(init, params, t), t)
        elif name == "spectral":
            dist = spectral.simulate(init, params, t)
        else:
            dist = closedform_pure.distribution(
                t, init, params, mode=mode, beta_cross_phase=beta_cross_phase
            )
        report.timings[name] = time.perf_counter() - start
        dists[name] = dist
        report.distributions[name] = dict(dist.items())
    parities = {(x + t) % 2 for x in init.support}
    _check_distributions(report, dists, parities, check_symmetry)
    return report


def compare_mixed(
    r,
    t: int,
    methods: tuple[str, ...] = ("direct", "consistent", "literal"),
    params: CoinParams | None = None,
    tolerances: Tolerances | None = None,
) -> ComparisonReport:
    """Compare mixed-coin evaluations. ``r`` is the Pauli vector
    (r0, r1, r2, r3) or a MixedLocalizedState. The closed forms are
    Hadamard-specific; ``params`` only affects the "direct" oracle and
    defaults to the Hadamard coin."""
    if t < 0:
        raise ValueError("t must be non-negative")
    unknown = [m for m in methods if m not in MIXED_COMPARE_METHODS]
    if unknown:
        raise ValueError(f"unknown mixed methods: {unknown}")
    if isinstance(r, MixedLocalizedState):
        state = r
    else:
        state = MixedLocalizedState.from_pauli(*(float(v) for v in r))
    params = params or CoinParams.hadamard()
    report = ComparisonReport(
        kind="mixed",
        t=t,
        methods=tuple(methods),
        tolerances=tolerances or Tolerances(),
        pairwise_tv={},
        pairwise_pointwise={},
        normalization_error={},
        forbidden_mass={},
        symmetry_defect=None,
        failures=[],
        distributions={},
    )
    dists: dict[str, Distribution] = {}
    for name in methods:
        start = time.perf_counter()
        if name == "direct":
            dist = direct.evolve_mixed(state, params, t)
        else:
            dist = closedform_mixed.distribution_mixed(t, state.pauli, mode=name)
        report.timings[name] = time.perf_counter() - start
        dists[name] = dist
        report.distributions[name] = dict(dist.items())
    parities = {t % 2}
    _check_distributions(report, dists, parities, check_symmetry=False)
    return report


@dataclass
class InvariantSuiteReport:
    """Aggregate of a randomized invariant sweep."""

    seed: int
    pure_cases: int
    mixed_cases: int
    max_norm_defect: float
    max_forbidden_mass: float
    max_closed_vs_direct: float
    max_spectral_vs_direct: float
    max_mixed_vs_direct: float
    failures: list[str]

    @property
    def passed(self) -> bool:
        return not self.failures

    def to_json(self) -> str:
        return json.dumps(
            {
                "seed": self.seed,
                "pure_cases": self.pure_cases,
                "mixed_cases": self.mixed_cases,
                "max_norm_defect": self.max_norm_defect,
                "max_forbidden_mass": self.max_forbidden_mass,
                "max_closed_vs_direct": self.max_closed_vs_direct,
                "max_spectral_vs_direct": self.max_spectral_vs_direct,
                "max_mixed_vs_direct": self.max_mixed_vs_direct,
                "passed": self.passed,
                "failures": list(self.failures),
            },
            sort_keys=True,
            separators=(",", ":"),
        )


def _random_pure_case(rng: random.Random, max_t: int, max_radius: int):
    theta = rng.uniform(0.05, math.pi - 0.05)
    phi1 = rng.uniform(0.0, 2.0 * math.pi)
    phi2 = rng.uniform(0.0, 2.0 * math.pi)
    params = CoinParams.make(theta, phi1, phi2)
    sites = {}
    for x in range(-max_radius, max_radius + 1):
        if rng.random() < 0.6:
            sites[x] = (
                complex(rng.gauss(0, 1), rng.gauss(0, 1)),
                complex(rng.gauss(0, 1), rng.gauss(0, 1)),
            )
    if not sites:
        sites[0] = (1.0 + 0j, 0j)
    norm = math.sqrt(
        sum(abs(a) ** 2 + abs(b) ** 2 for a, b in sites.values())
    )
    sites = {x: (a / norm, b / norm) for x, (a, b) in sites.items()}
    return PureState(sites), params, rng.randint(0, max_t)


def _random_bloch(rng: random.Random) -> tuple[float, float, float, float]:
    u, v, w = rng.gauss(0, 1), rng.gauss(0, 1), rng.gauss(0, 1)
    norm = math.sqrt(u * u + v * v + w * w) or 1.0
    radius = rng.uniform(0.0, 0.5)
    return (0.5, u / norm * radius, v / norm * radius, w / norm * radius)


def run_invariant_suite(
    seed: int = 0,
    pure_cases: int = 20,
    mixed_cases: int = 10,
    max_t: int = 12,
    max_radius: int = 2,
    tolerances: Tolerances | None = None,
) -> InvariantSuiteReport:
    """Randomized sweep of the core invariants.

    Every case draws a fresh coin, initial state, and step count from the
    seeded generator, so a failure is reproducible from (seed, case index).
    """
    tol = tolerances or Tolerances()
    rng = random.Random(seed)
    report = InvariantSuiteReport(
        seed=seed,
        pure_cases=pure_cases,
        mixed_cases=mixed_cases,
        max_norm_defect=0.0,
        max_forbidden_mass=0.0,
        max_closed_vs_direct=0.0,
        max_spectral_vs_direct=0.0,
        max_mixed_vs_direct=0.0,
        failures=[],
    )
    for case in range(pure_cases):
        init, params, t = _random_pure_case(rng, max_t, max_radius)
        cmp = compare_pure(init, params, t, tolerances=tol)
        report.max_norm_defect = max(
            report.max_norm_defect, *cmp.normalization_error.values()
        )
        report.max_forbidden_mass = max(
            report.max_forbidden_mass, *cmp.forbidden_mass.values()
        )
        report.max_closed_vs_direct = max(
            report.max_closed_vs_direct,
            cmp.pairwise_pointwise[_pair_key("direct", "closed-form")],
        )
        report.max_spectral_vs_direct = max(
            report.max_spectral_vs_direct,
            cmp.pairwise_pointwise[_pair_key("direct", "spectral")],
        )
        if not cmp.passed:
            report.failures.extend(
                f"pure case {case}: {msg}" for msg in cmp.failures
            )
    for case in range(mixed_cases):
        r = _random_bloch(rng)
        t = rng.randint(0, max_t)
        cmp = compare_mixed(r, t, methods=("direct", "consistent"), tolerances=tol)
        report.max_norm_defect = max(
            report.max_norm_defect, *cmp.normalization_error.values()
        )
        report.max_mixed_vs_direct = max(
            report.max_mixed_vs_direct,
            cmp.pairwise_pointwise[_pair_key("direct", "consistent")],
        )
        if not cmp.passed:
            report.failures.extend(
                f"mixed case {case}: {msg}" for msg in cmp.failures
            )
    return report

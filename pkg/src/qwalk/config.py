"""Walk configuration files.

JSON documents describing a walk: coin angles, initial state, step count,
method(s), arithmetic mode. Angles and exact amplitudes are written as
strings ("1/4 pi", "1/2 sqrt2") so that exact-mode activation is a
deliberate choice; bare floats select floating-point arithmetic.

Unknown keys are rejected everywhere. A config that parses is guaranteed
to construct valid core objects.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .arithmetic import Angle, SqrtTwo, SqrtTwoComplex
from .closedform_mixed import MIXED_METHODS
from .closedform_pure import BETA_CROSS_PHASES, MODES
from .core import CoinParams, MixedLocalizedState, PureState, validate_state
from .verify import MIXED_COMPARE_METHODS, PURE_METHODS, Tolerances

__all__ = ["ConfigError", "WalkConfig", "parse_amplitude_component"]


class ConfigError(ValueError):
    """Invalid configuration file or flag combination."""


def _require_keys(d: dict, allowed: set[str], required: set[str], where: str):
    if not isinstance(d, dict):
        raise ConfigError(f"{where}: expected an object, got {type(d).__name__}")
    unknown = set(d) - allowed
    if unknown:
        raise ConfigError(f"{where}: unknown keys {sorted(unknown)}")
    missing = required - set(d)
    if missing:
        raise ConfigError(f"{where}: missing keys {sorted(missing)}")


def _parse_angle(value, where: str) -> Angle:
    try:
        return Angle.parse(value)
    except (ValueError, TypeError) as exc:
        raise ConfigError(f"{where}: {exc}") from exc


# "p/q" or "p/q sqrt2" (whitespace tolerant, q optional).
_EXACT_COMPONENT = re.compile(
    r"^\s*([+-]?\d+)\s*(?:/\s*([1-9]\d*))?\s*(sqrt2)?\s*$"
)


def parse_amplitude_component(value, where: str = "amplitude"):
    """One real component of an amplitude.

    Strings ("1/2", "-1/2 sqrt2") and ints parse to exact SqrtTwo values;
    floats parse to floats. The caller decides whether mixing is allowed.
    """
    if isinstance(value, bool):
        raise ConfigError(f"{where}: expected a number or string")
    if isinstance(value, str):
        m = _EXACT_COMPONENT.match(value)
        if not m:
            raise ConfigError(
                f"{where}: cannot parse {value!r} (expected 'p/q' or 'p/q sqrt2')"
            )
        num, den, root = m.groups()
        frac = Fraction(int(num), int(den) if den else 1)
        return SqrtTwo(0, frac) if root else SqrtTwo(frac, 0)
    if isinstance(value, int):
        return SqrtTwo(value, 0)
    if isinstance(value, float):
        return value
    raise ConfigError(f"{where}: expected a number or string, got {type(value).__name__}")


def _parse_pair(value, where: str):
    """[re, im] -> (component, component); a bare number means re only."""
    if isinstance(value, (int, float, str)) and not isinstance(value, bool):
        return parse_amplitude_component(value, where), parse_amplitude_component(0, where)
    if isinstance(value, list) and len(value) == 2:
        return (
            parse_amplitude_component(value[0], f"{where}[0]"),
            parse_amplitude_component(value[1], f"{where}[1]"),
        )
    raise ConfigError(f"{where}: expected a number, string, or [re, im] pair")


def _parse_pure(entries, where: str) -> PureState:
    if not isinstance(entries, list) or not entries:
        raise ConfigError(f"{where}: expected a non-empty list of sites")
    components = []
    has_string = has_float = False
    sites: dict[int, tuple] = {}
    for i, entry in enumerate(entries):
        here = f"{where}[{i}]"
        _require_keys(entry, {"x", "alpha", "beta"}, {"x"}, here)
        x = entry["x"]
        if not isinstance(x, int) or isinstance(x, bool):
            raise ConfigError(f"{here}: x must be an integer")
        if x in sites:
            raise ConfigError(f"{here}: duplicate site x={x}")
        for raw in (entry.get("alpha", 0), entry.get("beta", 0)):
            flat = raw if isinstance(raw, list) else [raw]
            has_string = has_string or any(isinstance(v, str) for v in flat)
            has_float = has_float or any(isinstance(v, float) for v in flat)
        alpha = _parse_pair(entry.get("alpha", 0), f"{here}.alpha")
        beta = _parse_pair(entry.get("beta", 0), f"{here}.beta")
        components.extend([*alpha, *beta])
        sites[x] = (alpha, beta)
    # Strings request exact arithmetic; bare ints go along with either
    # side, so an all-integer state (a basis state) is exact too.
    exact = has_string or not has_float
    amplitudes = {}
    for x, (alpha, beta) in sites.items():
        if exact:
            if not all(isinstance(c, SqrtTwo) for c in (*alpha, *beta)):
                raise ConfigError(
                    f"{where}: cannot mix exact strings and floats; "
                    "write every component as a string or integer"
                )
            amplitudes[x] = (
                SqrtTwoComplex(alpha[0], alpha[1]),
                SqrtTwoComplex(beta[0], beta[1]),
            )
        else:
            amplitudes[x] = (
                complex(float(alpha[0]), float(alpha[1])),
                complex(float(beta[0]), float(beta[1])),
            )
    try:
        return PureState(amplitudes)
    except ValueError as exc:
        raise ConfigError(f"{where}: {exc}") from exc


def _parse_mixed(spec, where: str) -> MixedLocalizedState:
    _require_keys(spec, {"pauli", "rho"}, set(), where)
    if ("pauli" in spec) == ("rho" in spec):
        raise ConfigError(f"{where}: give exactly one of 'pauli' or 'rho'")
    if "pauli" in spec:
        pauli = spec["pauli"]
        if not isinstance(pauli, list) or len(pauli) != 4:
            raise ConfigError(f"{where}.pauli: expected [r0, r1, r2, r3]")
        try:
            state = MixedLocalizedState.from_pauli(*(float(v) for v in pauli))
        except (TypeError, ValueError) as exc:
            raise ConfigError(f"{where}.pauli: {exc}") from exc
        return _validated_mixed(state, f"{where}.pauli")
    rows = spec["rho"]
    if not isinstance(rows, list) or len(rows) != 2:
        raise ConfigError(f"{where}.rho: expected a 2x2 matrix")
    m = np.zeros((2, 2), dtype=complex)
    for i, row in enumerate(rows):
        if not isinstance(row, list) or len(row) != 2:
            raise ConfigError(f"{where}.rho: expected a 2x2 matrix")
        for j, cell in enumerate(row):
            if isinstance(cell, (int, float)) and not isinstance(cell, bool):
                m[i, j] = cell
            elif isinstance(cell, list) and len(cell) == 2:
                m[i, j] = complex(float(cell[0]), float(cell[1]))
            else:
                raise ConfigError(
                    f"{where}.rho[{i}][{j}]: expected a number or [re, im]"
                )
    try:
        state = MixedLocalizedState.from_rho(m)
    except ValueError as exc:
        raise ConfigError(f"{where}.rho: {exc}") from exc
    return _validated_mixed(state, f"{where}.rho")


def _validated_mixed(state: MixedLocalizedState, where: str) -> MixedLocalizedState:
    diag = validate_state(state)
    if not diag.valid:
        problems = "; ".join(f"{code}: {msg}" for code, msg, _ in diag.violations)
        raise ConfigError(f"{where}: not a valid coin density matrix ({problems})")
    return state


def _parse_tolerances(spec, where: str) -> Tolerances:
    fields = {
        "pairwise_tv",
        "pointwise",
        "normalization",
        "forbidden_mass",
        "symmetry",
    }
    _require_keys(spec, fields, set(), where)
    kwargs = {}
    for key, value in spec.items():
        if isinstance(value, bool) or not isinstance(value, (int, float)) or value < 0:
            raise ConfigError(f"{where}.{key}: expected a non-negative number")
        kwargs[key] = float(value)
    return Tolerances(**kwargs)


@dataclass(frozen=True)
class WalkConfig:
    """A fully validated walk description."""

    params: CoinParams
    initial_pure: PureState | None
    initial_mixed: MixedLocalizedState | None
    steps: int
    methods: tuple[str, ...]
    mode: str
    beta_cross_phase: str
    output: str | None
    tolerances: Tolerances

    @property
    def is_mixed(self) -> bool:
        return self.initial_mixed is not None

    @property
    def initial(self):
        return self.initial_mixed if self.is_mixed else self.initial_pure

    @classmethod
    def from_dict(cls, doc: dict) -> "WalkConfig":
        _require_keys(
            doc,
            {
                "coin",
                "initial",
                "steps",
                "method",
                "mode",
                "beta_cross_phase",
                "output",
                "tolerances",
            },
            {"coin", "initial", "steps"},
            "config",
        )
        coin = doc["coin"]
        _require_keys(coin, {"theta", "phi1", "phi2"}, {"theta"}, "config.coin")
        params = CoinParams(
            theta=_parse_angle(coin["theta"], "config.coin.theta"),
            phi1=_parse_angle(coin.get("phi1", 0.0), "config.coin.phi1"),
            phi2=_parse_angle(coin.get("phi2", 0.0), "config.coin.phi2"),
        )

        initial = doc["initial"]
        _require_keys(initial, {"pure", "mixed"}, set(), "config.initial")
        if ("pure" in initial) == ("mixed" in initial):
            raise ConfigError("config.initial: give exactly one of 'pure' or 'mixed'")
        pure = mixed = None
        if "pure" in initial:
            pure = _parse_pure(initial["pure"], "config.initial.pure")
        else:
            mixed = _parse_mixed(initial["mixed"], "config.initial.mixed")

        steps = doc["steps"]
        if not isinstance(steps, int) or isinstance(steps, bool) or steps < 0:
            raise ConfigError("config.steps: expected a non-negative integer")

        method = doc.get("method", "direct")
        if isinstance(method, str):
            methods = tuple(m.strip() for m in method.split(",") if m.strip())
        elif isinstance(method, list) and all(isinstance(m, str) for m in method):
            methods = tuple(method)
        else:
            raise ConfigError("config.method: expected a name or list of names")
        if not methods:
            raise ConfigError("config.method: no method named")
        valid = MIXED_COMPARE_METHODS if mixed is not None else PURE_METHODS
        bad = [m for m in methods if m not in valid]
        if bad:
            kind = "mixed" if mixed is not None else "pure"
            raise ConfigError(
                f"config.method: {bad} not valid for a {kind} initial state "
                f"(choose from {list(valid)})"
            )

        mode = doc.get("mode", "adaptive")
        if mode not in MODES:
            raise ConfigError(f"config.mode: expected one of {list(MODES)}")
        if mode == "exact":
            if mixed is not None:
                raise ConfigError(
                    "config.mode: exact mode applies to pure closed-form walks"
                )
            if not params.exact_capable:
                raise ConfigError(
                    "config.mode: exact mode needs all coin angles on the "
                    "eighth-turn grid (write them as 'p/q pi' strings)"
                )
            if not pure.exact:
                raise ConfigError(
                    "config.mode: exact mode needs exact initial amplitudes "
                    "(write them as 'p/q' or 'p/q sqrt2' strings)"
                )

        beta_cross_phase = doc.get("beta_cross_phase", "phi1")
        if beta_cross_phase not in BETA_CROSS_PHASES:
            raise ConfigError(
                f"config.beta_cross_phase: expected one of {list(BETA_CROSS_PHASES)}"
            )

        output = doc.get("output")
        if output is not None and not isinstance(output, str):
            raise ConfigError("config.output: expected a path string")

        tolerances = _parse_tolerances(doc.get("tolerances", {}), "config.tolerances")

        return cls(
            params=params,
            initial_pure=pure,
            initial_mixed=mixed,
            steps=steps,
            methods=methods,
            mode=mode,
            beta_cross_phase=beta_cross_phase,
            output=output,
            tolerances=tolerances,
        )

    @classmethod
    def from_file(cls, path: str) -> "WalkConfig":
        try:
            with open(path, encoding="utf-8") as fh:
                doc = json.load(fh)
        except OSError as exc:
            raise ConfigError(f"cannot read config {path}: {exc}") from exc
        except json.JSONDecodeError as exc:
            raise ConfigError(f"config {path} is not valid JSON: {exc}") from exc
        return cls.from_dict(doc)

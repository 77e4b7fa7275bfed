"""Scenario-file parsing and run configuration.

Scenario files are YAML mappings. The two-agent form names both data
sources directly; the helper side may instead be a plain constant or a
union of helper agents (a federation):

    x: {family: normal, params: {mu: 0.0, sd: 1.0}}
    n_x: 10
    y: {family: normal, params: {mu: 0.5, sd: 1.0}}   # or {constant: 0.5}
    n_y: 10                                            # "inf" accepted
    alphas: [0.0, 0.2, 0.5]
    trials: 100000
    seed: 42

    # union form (for the federate command):
    # y: {union: [{family: normal, params: {mu: 0, sd: 1}, n: 10}, ...]}

A ``scenarios:`` list of such mappings defines a validation suite. Every
run is fully determined by the parsed configuration plus the seed.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass
from typing import Any

import yaml

from .distributions import Distribution, PointMass, make_distribution
from .federation import Agent, FederationScenario
from .montecarlo import SampledScenario
from .theory import ErrorProfile

ENV_SEED = "COLLAB_AVG_SEED"

DEFAULT_TRIALS = 100_000
DEFAULT_K = 4.0
DEFAULT_SEED = 0
DEFAULT_ALPHAS = (0.2, 0.5)
DEFAULT_CONTOUR_BOUNDS = (0.01, 100.0, 0.01, 100.0)


class ConfigError(ValueError):
    """The scenario file or flags violate the expected schema."""


@dataclass(frozen=True)
class ParsedScenario:
    """One scenario entry: a focal agent plus a helper side of either form."""

    x: Distribution
    n_x: int
    y: Distribution | None
    n_y: int | float | None
    helpers: tuple[Agent, ...] | None
    expected: ErrorProfile | None = None

    def two_agent(self) -> SampledScenario:
        if self.y is None or self.n_y is None:
            raise ConfigError("this command needs a two-agent scenario (y with n_y)")
        return SampledScenario(x=self.x, n_x=self.n_x, y=self.y, n_y=self.n_y)

    def federation(self) -> FederationScenario:
        if self.helpers is None:
            raise ConfigError("this command needs a federation scenario (y.union)")
        return FederationScenario(focal=Agent(self.x, self.n_x), helpers=self.helpers)


@dataclass(frozen=True)
class RunConfig:
    """Everything a command run depends on besides the command name."""

    scenarios: tuple[ParsedScenario, ...]
    alphas: tuple[float, ...]
    trials: int
    seed: int
    k: float
    grid: int | None
    out: str | None
    contour_bounds: tuple[float, float, float, float]


def _require_mapping(node: Any, where: str) -> dict:
    if not isinstance(node, dict):
        raise ConfigError(f"{where} must be a mapping, got {type(node).__name__}")
    return node


def _parse_count(node: Any, where: str, allow_infinite: bool = False) -> int | float:
    if allow_infinite and (node in ("inf", "+inf") or (isinstance(node, float) and math.isinf(node))):
        return math.inf
    if isinstance(node, bool) or not isinstance(node, int):
        raise ConfigError(f"{where} must be a positive integer" + (" or 'inf'" if allow_infinite else ""))
    if node < 1:
        raise ConfigError(f"{where} must be >= 1")
    return node


def _parse_distribution(node: Any, where: str) -> Distribution:
    node = _require_mapping(node, where)
    if "constant" in node:
        return PointMass(float(node["constant"]))
    if "family" not in node:
        raise ConfigError(f"{where} needs a 'family' (or 'constant'/'union') key")
    params = node.get("params", {})
    params = _require_mapping(params, f"{where}.params")
    try:
        return make_distribution(str(node["family"]), **{str(k): float(v) for k, v in params.items()})
    except ValueError as exc:
        raise ConfigError(f"{where}: {exc}") from exc


def _parse_helpers(node: Any, where: str) -> tuple[Agent, ...]:
    if not isinstance(node, list) or not node:
        raise ConfigError(f"{where} must be a non-empty list of helper agents")
    helpers = []
    for i, entry in enumerate(node):
        entry = _require_mapping(entry, f"{where}[{i}]")
        if "n" not in entry:
            raise ConfigError(f"{where}[{i}] needs an 'n' sample count")
        spec = _parse_distribution({k: v for k, v in entry.items() if k != "n"}, f"{where}[{i}]")
        helpers.append(Agent(spec=spec, n=int(_parse_count(entry["n"], f"{where}[{i}].n"))))
    return tuple(helpers)


def _parse_expected(node: Any, where: str) -> ErrorProfile:
    node = _require_mapping(node, where)
    try:
        e0 = float(node["e0"])
        e1 = float(node["e1"])
    except KeyError as exc:
        raise ConfigError(f"{where} needs 'e0' and 'e1'") from exc
    if e0 == 0.0 and e1 == 0.0:
        return ErrorProfile(e0=0.0, e1=0.0, alpha_star=0.0, degenerate=True)
    return ErrorProfile(e0=e0, e1=e1, alpha_star=e0 / (e0 + e1))


def _parse_scenario(node: Any, where: str) -> ParsedScenario:
    node = _require_mapping(node, where)
    if "x" not in node:
        raise ConfigError(f"{where} needs an 'x' distribution")
    x = _parse_distribution(node["x"], f"{where}.x")
    if "n_x" not in node:
        raise ConfigError(f"{where} needs 'n_x'")
    n_x = int(_parse_count(node["n_x"], f"{where}.n_x"))
    if "y" not in node:
        raise ConfigError(f"{where} needs a 'y' side")
    y_node = _require_mapping(node["y"], f"{where}.y")
    expected = _parse_expected(node["expected"], f"{where}.expected") if "expected" in node else None

    if "union" in y_node:
        helpers = _parse_helpers(y_node["union"], f"{where}.y.union")
        return ParsedScenario(x=x, n_x=n_x, y=None, n_y=None, helpers=helpers, expected=expected)

    y = _parse_distribution(y_node, f"{where}.y")
    if "n_y" in node:
        n_y = _parse_count(node["n_y"], f"{where}.n_y", allow_infinite=True)
    elif isinstance(y, PointMass):
        n_y = 1  # a constant helper has a zero-variance mean at any count
    else:
        raise ConfigError(f"{where} needs 'n_y' for a sampled y")
    return ParsedScenario(x=x, n_x=n_x, y=y, n_y=n_y, helpers=None, expected=expected)


def _resolve_seed(flag_seed: int | None, file_seed: Any) -> int:
    if flag_seed is not None:
        seed = flag_seed
    elif file_seed is not None:
        if isinstance(file_seed, bool) or not isinstance(file_seed, int):
            raise ConfigError("seed must be a non-negative integer")
        seed = file_seed
    else:
        env = os.environ.get(ENV_SEED)
        if env is None:
            return DEFAULT_SEED
        try:
            seed = int(env)
        except ValueError as exc:
            raise ConfigError(f"{ENV_SEED} must be an integer, got {env!r}") from exc
    if not 0 <= seed < 2**64:
        raise ConfigError("seed must fit in an unsigned 64-bit integer")
    return seed


def load_run_config(
    scenario_path: str | None,
    *,
    seed: int | None = None,
    trials: int | None = None,
    k: float | None = None,
    grid: int | None = None,
    out: str | None = None,
    require_scenario: bool = False,
) -> RunConfig:
    """Combine a scenario file (optional) with flag overrides."""
    data: dict = {}
    if scenario_path is not None:
        try:
            with open(scenario_path, "r", encoding="utf-8") as handle:
                loaded = yaml.safe_load(handle)
        except OSError as exc:
            raise ConfigError(f"cannot read scenario file: {exc}") from exc
        except yaml.YAMLError as exc:
            raise ConfigError(f"scenario file is not valid YAML: {exc}") from exc
        data = _require_mapping(loaded if loaded is not None else {}, "scenario file")
    elif require_scenario:
        raise ConfigError("this command requires --scenario <path>")

    scenarios: list[ParsedScenario] = []
    if "scenarios" in data:
        entries = data["scenarios"]
        if not isinstance(entries, list) or not entries:
            raise ConfigError("'scenarios' must be a non-empty list")
        for i, entry in enumerate(entries):
            scenarios.append(_parse_scenario(entry, f"scenarios[{i}]"))
    elif "x" in data:
        scenarios.append(_parse_scenario(data, "scenario file"))
    elif require_scenario:
        raise ConfigError("scenario file defines no scenario (needs 'x' or 'scenarios')")

    alphas_node = data.get("alphas", list(DEFAULT_ALPHAS))
    if not isinstance(alphas_node, list):
        raise ConfigError("'alphas' must be a list of numbers in [0, 1]")
    alphas = []
    for value in alphas_node:
        alpha = float(value)
        if not 0.0 <= alpha <= 1.0:
            raise ConfigError(f"alpha {alpha!r} outside [0, 1]")
        alphas.append(alpha)

    trials_value = trials if trials is not None else data.get("trials", DEFAULT_TRIALS)
    if isinstance(trials_value, bool) or not isinstance(trials_value, int) or trials_value < 2:
        raise ConfigError("trials must be an integer >= 2")
    k_value = float(k if k is not None else data.get("k", DEFAULT_K))
    if k_value <= 0:
        raise ConfigError("k must be > 0")

    bounds = DEFAULT_CONTOUR_BOUNDS
    if "contour" in data:
        node = _require_mapping(data["contour"], "contour")
        try:
            bounds = (
                float(node.get("u_min", DEFAULT_CONTOUR_BOUNDS[0])),
                float(node.get("u_max", DEFAULT_CONTOUR_BOUNDS[1])),
                float(node.get("v_min", DEFAULT_CONTOUR_BOUNDS[2])),
                float(node.get("v_max", DEFAULT_CONTOUR_BOUNDS[3])),
            )
        except (TypeError, ValueError) as exc:
            raise ConfigError(f"contour bounds must be numbers: {exc}") from exc
        if not all(b > 0 and math.isfinite(b) for b in bounds):
            raise ConfigError("contour bounds must be positive and finite")
        if bounds[0] >= bounds[1] or bounds[2] >= bounds[3]:
            raise ConfigError("contour bounds must satisfy u_min < u_max and v_min < v_max")

    return RunConfig(
        scenarios=tuple(scenarios),
        alphas=tuple(alphas),
        trials=trials_value,
        seed=_resolve_seed(seed, data.get("seed")),
        k=k_value,
        grid=grid,
        out=out,
        contour_bounds=bounds,
    )

"""Experiment and sweep configuration: schema, validation, JSON round-trip.

Config files are plain JSON.  Unknown keys are rejected so typos fail
loudly instead of silently running a different experiment.

Experiment schema (defaults in parentheses)::

    {
      "model":     "angle" | "market" | "pairwise",
      "agents":    int >= 2,
      "rounds":    int >= 0,
      "seed":      unsigned 64-bit int,
      "params":    { ... per-model, see below ... },
      "snapshots": [round indices in [0, rounds]],   (default [rounds])
      "output":    "directory path"                  (default "out")
    }

    angle params:    share (required, in [0,1]), poor_win_prob (0.5),
                     init_wealth (1.0), matching ("single-pair" | "full",
                     default "single-pair")
    market params:   damped_fraction (0.0), damped_halfwidth (0.25),
                     init_x (1.0), init_y (1.0)
    pairwise params: monopolist_fraction (required, in [0,1]),
                     matching ("full" | "single-pair", default "full"),
                     plus the market params above

Sweep schema::

    {
      "base":     { ... experiment config ... },
      "variable": "<numeric params key>",
      "values":   [v0, v1, ...],      (non-empty)
      "replicas": int >= 1            (default 1)
    }

Replica seeds derive as (base_seed + value_index * replicas + replica)
mod 2**64, so any single replica can be re-run in isolation.
"""

import dataclasses
import json
from dataclasses import dataclass

from .errors import ConfigError

MODELS = ("angle", "market", "pairwise")
MATCHING_MODES = ("single-pair", "full")


@dataclass(frozen=True)
class AngleParams:
    """Coin-toss expropriation process parameters.

    share: fraction of the loser's wealth seized by the winner, in [0, 1].
    poor_win_prob: probability that the poorer agent of a pair wins the
        toss; 0.5 is the unbiased process.
    init_wealth: uniform initial endowment per agent.
    matching: "single-pair" trades one sampled pair per round; "full"
        trades a full random matching each round.
    """

    share: float
    poor_win_prob: float = 0.5
    init_wealth: float = 1.0
    matching: str = "single-pair"


@dataclass(frozen=True)
class MarketParams:
    """Two-good competitive exchange economy parameters.

    damped_fraction: share of agents whose preference redraws are
        restricted to [0.5 - damped_halfwidth, 0.5 + damped_halfwidth];
        the rest redraw uniformly on [0, 1].
    """

    damped_fraction: float = 0.0
    damped_halfwidth: float = 0.25
    init_x: float = 1.0
    init_y: float = 1.0


@dataclass(frozen=True)
class PairwiseParams:
    """Pairwise exchange economy with a fixed set of monopolist agents."""

    monopolist_fraction: float
    matching: str = "full"
    damped_fraction: float = 0.0
    damped_halfwidth: float = 0.25
    init_x: float = 1.0
    init_y: float = 1.0


_PARAMS_CLS = {"angle": AngleParams, "market": MarketParams, "pairwise": PairwiseParams}


@dataclass(frozen=True)
class ExperimentConfig:
    """Full declarative description of one simulation run."""

    model: str
    agents: int
    rounds: int
    seed: int
    params: AngleParams | MarketParams | PairwiseParams
    snapshots: tuple[int, ...]
    output: str = "out"

    def validate(self) -> "ExperimentConfig":
        if self.model not in MODELS:
            raise ConfigError(f"unknown model {self.model!r}, expected one of {MODELS}")
        if not isinstance(self.agents, int) or self.agents < 2:
            raise ConfigError(f"agents must be an integer >= 2, got {self.agents!r}")
        if not isinstance(self.rounds, int) or self.rounds < 0:
            raise ConfigError(f"rounds must be an integer >= 0, got {self.rounds!r}")
        if not isinstance(self.seed, int) or not 0 <= self.seed < 2**64:
            raise ConfigError(f"seed must be an unsigned 64-bit integer, got {self.seed!r}")
        for t in self.snapshots:
            if not isinstance(t, int) or not 0 <= t <= self.rounds:
                raise ConfigError(f"snapshot index {t!r} outside [0, {self.rounds}]")
        if list(self.snapshots) != sorted(set(self.snapshots)):
            raise ConfigError("snapshot indices must be strictly increasing")
        if not isinstance(self.params, _PARAMS_CLS[self.model]):
            raise ConfigError(f"params do not match model {self.model!r}")
        p = self.params
        if isinstance(p, AngleParams):
            _check_range("share", p.share, 0.0, 1.0)
            _check_range("poor_win_prob", p.poor_win_prob, 0.0, 1.0)
            if not p.init_wealth > 0:
                raise ConfigError(f"init_wealth must be positive, got {p.init_wealth}")
            _check_matching(p.matching)
        else:
            _check_range("damped_fraction", p.damped_fraction, 0.0, 1.0)
            _check_range("damped_halfwidth", p.damped_halfwidth, 0.0, 0.5)
            if not (p.init_x > 0 and p.init_y > 0):
                raise ConfigError("initial goods endowments must be positive")
            if isinstance(p, PairwiseParams):
                _check_range("monopolist_fraction", p.monopolist_fraction, 0.0, 1.0)
                _check_matching(p.matching)
        return self

    def to_dict(self) -> dict:
        return {
            "model": self.model,
            "agents": self.agents,
            "rounds": self.rounds,
            "seed": self.seed,
            "params": dataclasses.asdict(self.params),
            "snapshots": list(self.snapshots),
            "output": self.output,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "ExperimentConfig":
        if not isinstance(data, dict):
            raise ConfigError(f"experiment config must be an object, got {type(data).__name__}")
        _reject_unknown(data, {"model", "agents", "rounds", "seed", "params", "snapshots", "output"})
        model = _require(data, "model")
        if model not in MODELS:
            raise ConfigError(f"unknown model {model!r}, expected one of {MODELS}")
        rounds = _require(data, "rounds")
        params = _params_from_dict(model, data.get("params", {}))
        snapshots = data.get("snapshots", [rounds])
        if not isinstance(snapshots, list):
            raise ConfigError("snapshots must be a list of round indices")
        cfg = cls(
            model=model,
            agents=_require(data, "agents"),
            rounds=rounds,
            seed=_require(data, "seed"),
            params=params,
            snapshots=tuple(snapshots),
            output=data.get("output", "out"),
        )
        return cfg.validate()

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True) + "\n"

    @classmethod
    def from_json(cls, text: str) -> "ExperimentConfig":
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ConfigError(f"invalid JSON: {exc}") from exc
        return cls.from_dict(data)

    @classmethod
    def load(cls, path) -> "ExperimentConfig":
        with open(path, "r", encoding="utf-8") as fh:
            return cls.from_json(fh.read())

    def save(self, path) -> None:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(self.to_json())


@dataclass(frozen=True)
class SweepSpec:
    """One swept parameter, a value list, and replicas per value."""

    base: ExperimentConfig
    variable: str
    values: tuple[float, ...]
    replicas: int = 1

    def validate(self) -> "SweepSpec":
        self.base.validate()
        fields = {f.name for f in dataclasses.fields(self.base.params)}
        if self.variable not in fields:
            raise ConfigError(
                f"sweep variable {self.variable!r} is not a {self.base.model!r} parameter "
                f"(choose from {sorted(fields)})"
            )
        if not self.values:
            raise ConfigError("sweep values list must be non-empty")
        if not isinstance(self.replicas, int) or self.replicas < 1:
            raise ConfigError(f"replicas must be an integer >= 1, got {self.replicas!r}")
        seeds = [
            derive_seed(self.base.seed, k, self.replicas, r)
            for k in range(len(self.values))
            for r in range(self.replicas)
        ]
        if len(set(seeds)) != len(seeds):
            raise ConfigError("derived replica seeds collide; change base seed or replicas")
        for k, v in enumerate(self.values):
            self.config_for(k, 0)  # validates each swept value
        return self

    def config_for(self, value_index: int, replica: int) -> ExperimentConfig:
        """Materialize the config for one (value, replica) cell."""
        value = self.values[value_index]
        params = dataclasses.replace(self.base.params, **{self.variable: value})
        cfg = dataclasses.replace(
            self.base,
            params=params,
            seed=derive_seed(self.base.seed, value_index, self.replicas, replica),
        )
        return cfg.validate()

    def to_dict(self) -> dict:
        return {
            "base": self.base.to_dict(),
            "variable": self.variable,
            "values": list(self.values),
            "replicas": self.replicas,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "SweepSpec":
        if not isinstance(data, dict):
            raise ConfigError(f"sweep spec must be an object, got {type(data).__name__}")
        _reject_unknown(data, {"base", "variable", "values", "replicas"})
        values = _require(data, "values")
        if not isinstance(values, list):
            raise ConfigError("sweep values must be a list")
        spec = cls(
            base=ExperimentConfig.from_dict(_require(data, "base")),
            variable=_require(data, "variable"),
            values=tuple(values),
            replicas=data.get("replicas", 1),
        )
        return spec.validate()

    @classmethod
    def load(cls, path) -> "SweepSpec":
        with open(path, "r", encoding="utf-8") as fh:
            text = fh.read()
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ConfigError(f"invalid JSON: {exc}") from exc
        return cls.from_dict(data)


def derive_seed(base_seed: int, value_index: int, replicas: int, replica: int) -> int:
    """Replica seed rule: base + value_index * replicas + replica (mod 2**64)."""
    return (base_seed + value_index * replicas + replica) % 2**64


def _params_from_dict(model: str, data: dict):
    if not isinstance(data, dict):
        raise ConfigError(f"params must be an object, got {type(data).__name__}")
    cls = _PARAMS_CLS[model]
    fields = {f.name for f in dataclasses.fields(cls)}
    _reject_unknown(data, fields, where=f"{model} params")
    required = {
        f.name
        for f in dataclasses.fields(cls)
        if f.default is dataclasses.MISSING and f.default_factory is dataclasses.MISSING
    }
    missing = required - data.keys()
    if missing:
        raise ConfigError(f"missing required {model} params: {sorted(missing)}")
    return cls(**data)


def _reject_unknown(data: dict, allowed: set, where: str = "config") -> None:
    unknown = set(data) - allowed
    if unknown:
        raise ConfigError(f"unknown {where} keys: {sorted(unknown)}")


def _require(data: dict, key: str):
    if key not in data:
        raise ConfigError(f"missing required config key {key!r}")
    return data[key]


def _check_range(name: str, value, lo: float, hi: float) -> None:
    if not (isinstance(value, (int, float)) and lo <= value <= hi):
        raise ConfigError(f"{name} must lie in [{lo}, {hi}], got {value!r}")


def _check_matching(mode: str) -> None:
    if mode not in MATCHING_MODES:
        raise ConfigError(f"matching must be one of {MATCHING_MODES}, got {mode!r}")

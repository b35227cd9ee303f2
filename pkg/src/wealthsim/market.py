"""Two-good competitive exchange economy with stochastic preferences.

Every period each agent redraws a Cobb-Douglas preference exponent,
one population-wide price clears both goods markets simultaneously,
and agents move to their utility-maximizing demands at that price.
Goods totals are conserved; wealth (holdings valued at the clearing
price) develops a stationary, Gamma-like distribution.
"""

from dataclasses import dataclass

import numpy as np

from . import _kernels_py
from ._backend import resolve_kernels
from .config import ExperimentConfig, MarketParams
from .errors import ConfigError, ContractError, DegenerateMarketError
from .rng import RandomStream, flag_fraction

# Preference draws clamp to [PREF_CLAMP, 1 - PREF_CLAMP]: an exact 0 or
# 1 (possible in floating point) would zero out one holding forever.
PREF_CLAMP = 1e-12


@dataclass(frozen=True)
class MarketSnapshot:
    """Holdings, clearing price, and valued wealth after one period."""

    period: int
    price: float
    x: np.ndarray
    y: np.ndarray
    wealth: np.ndarray


@dataclass(frozen=True)
class MarketResult:
    """Snapshots of one competitive-market run."""

    config: ExperimentConfig
    snapshots: tuple[MarketSnapshot, ...]
    backend: str
    damped: np.ndarray


def draw_preferences(stream: RandomStream, n_agents: int, damped: np.ndarray | None,
                     halfwidth: float) -> np.ndarray:
    """Draw one period's preference exponents for every agent.

    Normal agents draw uniformly on [0, 1); agents flagged in `damped`
    draw uniformly on [0.5 - halfwidth, 0.5 + halfwidth), modeling less
    volatile preferences.  All draws are clamped away from 0 and 1.
    """
    if not 0.0 <= halfwidth <= 0.5:
        raise ConfigError(f"damped_halfwidth must lie in [0, 0.5], got {halfwidth}")
    u = stream.random(n_agents)
    if damped is None:
        f = u
    else:
        lo = 0.5 - halfwidth
        f = np.where(damped, lo + 2.0 * halfwidth * u, u)
    return np.clip(f, PREF_CLAMP, 1.0 - PREF_CLAMP)


def equilibrium_price(x: np.ndarray, y: np.ndarray, f: np.ndarray) -> float:
    """Price of good y in units of good x that clears both markets.

    Equals aggregate x given up over aggregate y given up; demanding
    and supplying are both implied by the Cobb-Douglas demands.
    """
    x_released = float(np.sum((1.0 - f) * x))
    y_released = float(np.sum(f * y))
    if y_released <= 0.0 or x_released <= 0.0:
        raise DegenerateMarketError(
            "market-clearing price undefined: an aggregate side of the market is empty"
        )
    return x_released / y_released


def execute_demands(x: np.ndarray, y: np.ndarray, f: np.ndarray,
                    price: float) -> tuple[np.ndarray, np.ndarray]:
    """Move every agent to its Cobb-Douglas demands at the given price.

    Returns new holdings arrays; each agent's budget x + price * y is
    unchanged (exactly, in real arithmetic).
    """
    if not price > 0:
        raise ContractError(f"price must be positive, got {price}")
    x = np.ascontiguousarray(x, dtype=np.float64)
    y = np.ascontiguousarray(y, dtype=np.float64)
    f = np.ascontiguousarray(f, dtype=np.float64)
    return _kernels_py.market_demands(x, y, f, float(price))


def wealth_valuation(x: np.ndarray, y: np.ndarray, price: float) -> np.ndarray:
    """Value holdings at a common price: w = x + price * y."""
    if not price > 0:
        raise ContractError(f"price must be positive, got {price}")
    return x + price * y


def endowment_price(x: np.ndarray, y: np.ndarray) -> float:
    """Valuation price before any preferences exist: the goods-total ratio.

    Used only for snapshots at round 0.  Consistent with the clearing
    price under symmetric preferences.
    """
    total_x = float(np.sum(x))
    total_y = float(np.sum(y))
    if total_y <= 0.0 or total_x <= 0.0:
        raise DegenerateMarketError("cannot value an endowment with a zero goods total")
    return total_x / total_y


def run_market(config: ExperimentConfig, backend: str | None = None) -> MarketResult:
    """Run the competitive exchange economy described by `config`.

    Each period: redraw preferences, clear the market, execute demands,
    and (at snapshot periods) value wealth at the clearing price.
    """
    config.validate()
    if config.model != "market":
        raise ConfigError(f"run_market requires model 'market', got {config.model!r}")
    params = config.params
    assert isinstance(params, MarketParams)
    kernels, backend_name = resolve_kernels(backend)

    n = config.agents
    x = np.full(n, float(params.init_x), dtype=np.float64)
    y = np.full(n, float(params.init_y), dtype=np.float64)
    pref_stream = RandomStream(config.seed, "preferences")
    vol_stream = RandomStream(config.seed, "volatility")
    damped = flag_fraction(vol_stream, n, params.damped_fraction)
    want = set(config.snapshots)
    snaps: list[MarketSnapshot] = []
    if 0 in want:
        p0 = endowment_price(x, y)
        snaps.append(MarketSnapshot(0, p0, x.copy(), y.copy(), wealth_valuation(x, y, p0)))

    for t in range(1, config.rounds + 1):
        f = draw_preferences(pref_stream, n, damped, params.damped_halfwidth)
        try:
            price = equilibrium_price(x, y, f)
        except DegenerateMarketError as exc:
            raise DegenerateMarketError(f"period {t}: {exc}", period=t) from exc
        x, y = kernels.market_demands(x, y, f, price)
        if t in want:
            snaps.append(MarketSnapshot(t, price, x.copy(), y.copy(), wealth_valuation(x, y, price)))

    return MarketResult(config, tuple(snaps), backend_name, damped)

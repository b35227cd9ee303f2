"""Pairwise exchange economy with optional monopolist agents.

Agents are matched in pairs each round.  A pair of ordinary agents
trades at the price that clears the two-agent market.  When exactly one
agent of a pair belongs to the fixed monopolist set, that agent quotes
the price maximizing its own utility, knowing the counterpart will
respond with its ordinary price-taking demands; the counterpart's
response is its own optimum at that price, so participation stays
voluntary.  Two matched monopolists cancel each other out and trade
competitively.
"""

import math
from dataclasses import dataclass

import numpy as np

from ._backend import resolve_kernels
from .config import ExperimentConfig, PairwiseParams
from .errors import ConfigError, ContractError, DegenerateMarketError
from .market import draw_preferences, endowment_price, equilibrium_price
from .rng import (
    RandomStream,
    flag_fraction,
    partition_monopolists,
    sample_full_matching,
    sample_single_pairs,
)

REGIMES = ("competitive", "monopoly", "no-trade")


@dataclass(frozen=True)
class PairwiseSnapshot:
    """Holdings, valuation price, wealth, and monopolist flags after one round."""

    round: int
    ref_price: float
    x: np.ndarray
    y: np.ndarray
    wealth: np.ndarray
    is_monopolist: np.ndarray


@dataclass(frozen=True)
class PairwiseResult:
    """Snapshots of one pairwise-exchange run."""

    config: ExperimentConfig
    snapshots: tuple[PairwiseSnapshot, ...]
    backend: str
    is_monopolist: np.ndarray


@dataclass(frozen=True)
class PairTradeOutcome:
    """Record of a single executed (or skipped) pair trade.

    In the monopoly regime `first` is the monopolist.  Utilities are
    (before, after) pairs; prices are quoted as good-y price in units
    of good x.  A no-trade outcome carries price NaN.
    """

    first: int
    second: int
    regime: str
    price: float
    holdings_first: tuple[float, float]
    holdings_second: tuple[float, float]
    utility_first: tuple[float, float]
    utility_second: tuple[float, float]


def cobb_douglas_utility(x: float, y: float, f: float) -> float:
    """Utility x**f * y**(1-f) of holding the two goods."""
    if x < 0 or y < 0:
        raise ContractError(f"holdings must be nonnegative, got ({x}, {y})")
    if not 0.0 <= f <= 1.0:
        raise ContractError(f"preference exponent must lie in [0, 1], got {f}")
    return float(x) ** f * float(y) ** (1.0 - f)


def pairwise_competitive_price(x_a: float, y_a: float, f_a: float,
                               x_b: float, y_b: float, f_b: float) -> float:
    """Clearing price for an isolated two-agent market."""
    num = (1.0 - f_a) * x_a + (1.0 - f_b) * x_b
    den = f_a * y_a + f_b * y_b
    if not (num > 0.0 and den > 0.0):
        raise DegenerateMarketError(
            "pair price undefined: one side of the pair market is empty"
        )
    return num / den


def monopoly_price(x_m: float, y_m: float, f_m: float,
                   x_n: float, y_n: float, f_n: float) -> float:
    """Price the monopolist m quotes to the price-taking counterpart n.

    Maximizes m's utility given that n responds with its Cobb-Douglas
    demands and m absorbs n's net trades.  The optimum is the positive
    root of a quadratic; when the counterpart has nothing to give on
    one side the optimum is unattained and the pair's competitive price
    is used instead.
    """
    give_y = f_n * y_n
    give_x = (1.0 - f_n) * x_n
    if not (give_y > 0.0 and give_x > 0.0):
        return pairwise_competitive_price(x_m, y_m, f_m, x_n, y_n, f_n)
    max_x = x_m + give_x
    max_y = y_m + give_y
    quad_a = f_m * give_y * max_y
    quad_b = give_y * give_x * (1.0 - 2.0 * f_m)
    quad_c = (1.0 - f_m) * max_x * give_x
    return 2.0 * quad_c / (quad_b + math.sqrt(quad_b * quad_b + 4.0 * quad_a * quad_c))


def execute_pair_trade(x: np.ndarray, y: np.ndarray, f: np.ndarray,
                       pair: tuple[int, int], regime: str, price: float) -> PairTradeOutcome:
    """Execute one pair trade at the given regime and price, updating x and y.

    In the monopoly regime pair[0] must be the monopolist.  Both goods'
    pair totals are conserved, and neither agent's utility drops.
    """
    a, b = pair
    if a == b:
        raise ContractError(f"a pair needs two distinct agents, got index {a} twice")
    if regime not in REGIMES:
        raise ContractError(f"unknown trade regime {regime!r}")
    if regime != "no-trade" and not price > 0:
        raise ContractError(f"price must be positive, got {price}")

    fa = float(f[a])
    fb = float(f[b])
    xa = float(x[a])
    ya = float(y[a])
    xb = float(x[b])
    yb = float(y[b])
    util_a_pre = cobb_douglas_utility(xa, ya, fa)
    util_b_pre = cobb_douglas_utility(xb, yb, fb)

    if regime == "competitive":
        p = float(price)
        x[a] = fa * (xa + p * ya)
        y[a] = (1.0 - fa) * (xa / p + ya)
        x[b] = fb * (xb + p * yb)
        y[b] = (1.0 - fb) * (xb / p + yb)
    elif regime == "monopoly":
        p = float(price)
        give_y = fb * yb
        give_x = (1.0 - fb) * xb
        max_x = xa + give_x
        max_y = ya + give_y
        new_xm = max_x - give_y * p
        new_ym = max_y - give_x / p
        if new_xm < 0.0 or new_ym < 0.0:
            raise ContractError("monopoly trade produced negative holdings")
        x[b] = fb * (xb + p * yb)
        y[b] = (1.0 - fb) * (xb / p + yb)
        x[a] = new_xm
        y[a] = new_ym
    else:
        p = float("nan")

    util_a_post = cobb_douglas_utility(float(x[a]), float(y[a]), fa)
    util_b_post = cobb_douglas_utility(float(x[b]), float(y[b]), fb)
    return PairTradeOutcome(
        first=a,
        second=b,
        regime=regime,
        price=p,
        holdings_first=(float(x[a]), float(y[a])),
        holdings_second=(float(x[b]), float(y[b])),
        utility_first=(util_a_pre, util_a_post),
        utility_second=(util_b_pre, util_b_post),
    )


def resolve_pair_trade(x: np.ndarray, y: np.ndarray, f: np.ndarray,
                       is_mono: np.ndarray, a: int, b: int) -> PairTradeOutcome:
    """Classify one matched pair and trade it exactly as the batch kernel does.

    Returns the outcome record; degenerate pair markets become no-trade
    outcomes rather than errors.
    """
    mono_a = bool(is_mono[a])
    mono_b = bool(is_mono[b])
    if mono_a != mono_b:
        m, n = (a, b) if mono_a else (b, a)
        give_y = float(f[n]) * float(y[n])
        give_x = (1.0 - float(f[n])) * float(x[n])
        if give_y > 0.0 and give_x > 0.0:
            price = monopoly_price(float(x[m]), float(y[m]), float(f[m]),
                                   float(x[n]), float(y[n]), float(f[n]))
            return execute_pair_trade(x, y, f, (m, n), "monopoly", price)
        first, second = m, n
    else:
        first, second = a, b
    try:
        price = pairwise_competitive_price(float(x[first]), float(y[first]), float(f[first]),
                                           float(x[second]), float(y[second]), float(f[second]))
    except DegenerateMarketError:
        return execute_pair_trade(x, y, f, (first, second), "no-trade", float("nan"))
    return execute_pair_trade(x, y, f, (first, second), "competitive", price)


def run_pairwise(config: ExperimentConfig, backend: str | None = None) -> PairwiseResult:
    """Run the pairwise exchange economy described by `config`.

    Each round: redraw preferences, sample the matching, trade every
    pair under its regime.  At snapshot rounds wealth is valued at the
    population-clearing reference price for the current holdings and
    preferences (round 0 uses the goods-total ratio).
    """
    config.validate()
    if config.model != "pairwise":
        raise ConfigError(f"run_pairwise requires model 'pairwise', got {config.model!r}")
    params = config.params
    assert isinstance(params, PairwiseParams)
    kernels, backend_name = resolve_kernels(backend)

    n = config.agents
    x = np.full(n, float(params.init_x), dtype=np.float64)
    y = np.full(n, float(params.init_y), dtype=np.float64)
    part_stream = RandomStream(config.seed, "partition")
    vol_stream = RandomStream(config.seed, "volatility")
    pref_stream = RandomStream(config.seed, "preferences")
    match_stream = RandomStream(config.seed, "matching")
    is_mono = partition_monopolists(part_stream, n, params.monopolist_fraction)
    damped = flag_fraction(vol_stream, n, params.damped_fraction)
    mono_u8 = np.ascontiguousarray(is_mono.view(np.uint8))

    want = set(config.snapshots)
    snaps: list[PairwiseSnapshot] = []
    if 0 in want:
        p0 = endowment_price(x, y)
        snaps.append(PairwiseSnapshot(0, p0, x.copy(), y.copy(), x + p0 * y, is_mono.copy()))

    for t in range(1, config.rounds + 1):
        f = draw_preferences(pref_stream, n, damped, params.damped_halfwidth)
        if params.matching == "full":
            pairs = sample_full_matching(match_stream, n)
            first = np.ascontiguousarray(pairs[:, 0])
            second = np.ascontiguousarray(pairs[:, 1])
        else:
            first, second = sample_single_pairs(match_stream, n, 1)
        kernels.pairwise_trade_round(x, y, f, mono_u8, first, second)
        if t in want:
            try:
                ref_price = equilibrium_price(x, y, f)
            except DegenerateMarketError as exc:
                raise DegenerateMarketError(f"round {t}: {exc}", period=t) from exc
            snaps.append(PairwiseSnapshot(t, ref_price, x.copy(), y.copy(),
                                          x + ref_price * y, is_mono.copy()))

    return PairwiseResult(config, tuple(snaps), backend_name, is_mono)

"""Benchmark the compiled kernels against the pure-Python fallback.

Run as ``python -m wealthsim.bench``.  Times representative workloads
for each kernel on both backends and confirms the results agree
bit-for-bit while timing them.
"""

import argparse
import sys
import time

import numpy as np

from ._backend import load_kernels
from .config import AngleParams, ExperimentConfig, MarketParams, PairwiseParams
from .angle import run_angle
from .market import run_market
from .pairwise import run_pairwise


def _time(fn, repeats: int = 3) -> float:
    best = float("inf")
    for _ in range(repeats):
        start = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - start)
    return best


def _bitwise_equal(a, b) -> bool:
    return a.shape == b.shape and bool(np.all(a.view(np.uint64) == b.view(np.uint64)))


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="python -m wealthsim.bench",
        description="Compare compiled and pure-Python kernel backends.",
    )
    parser.add_argument("--encounters", type=int, default=200_000,
                        help="expropriation encounters per timing run")
    parser.add_argument("--rounds", type=int, default=400,
                        help="pairwise trading rounds per timing run")
    parser.add_argument("--agents", type=int, default=2000)
    args = parser.parse_args(argv)

    try:
        load_kernels("compiled")
    except ImportError:
        print("compiled backend not available; build the extension first", file=sys.stderr)
        return 1

    rows = []

    angle_cfg = ExperimentConfig(
        model="angle", agents=args.agents, rounds=args.encounters, seed=7,
        params=AngleParams(share=0.5), snapshots=(args.encounters,),
    )
    results = {name: run_angle(angle_cfg, backend=name) for name in ("compiled", "python")}
    same = _bitwise_equal(results["compiled"].snapshots[-1].wealth,
                          results["python"].snapshots[-1].wealth)
    times = {name: _time(lambda name=name: run_angle(angle_cfg, backend=name))
             for name in ("compiled", "python")}
    rows.append((f"angle, {args.encounters} encounters", times, same))

    pair_cfg = ExperimentConfig(
        model="pairwise", agents=args.agents, rounds=args.rounds, seed=7,
        params=PairwiseParams(monopolist_fraction=0.2), snapshots=(args.rounds,),
    )
    results = {name: run_pairwise(pair_cfg, backend=name) for name in ("compiled", "python")}
    same = _bitwise_equal(results["compiled"].snapshots[-1].wealth,
                          results["python"].snapshots[-1].wealth)
    times = {name: _time(lambda name=name: run_pairwise(pair_cfg, backend=name))
             for name in ("compiled", "python")}
    rows.append((f"pairwise, {args.rounds} rounds x {args.agents} agents", times, same))

    market_cfg = ExperimentConfig(
        model="market", agents=args.agents, rounds=args.rounds, seed=7,
        params=MarketParams(), snapshots=(args.rounds,),
    )
    results = {name: run_market(market_cfg, backend=name) for name in ("compiled", "python")}
    same = _bitwise_equal(results["compiled"].snapshots[-1].wealth,
                          results["python"].snapshots[-1].wealth)
    times = {name: _time(lambda name=name: run_market(market_cfg, backend=name))
             for name in ("compiled", "python")}
    rows.append((f"market, {args.rounds} periods x {args.agents} agents", times, same))

    print(f"{'workload':<42} {'compiled':>10} {'python':>10} {'speedup':>8}  bitwise")
    for label, times, same in rows:
        speedup = times["python"] / times["compiled"]
        print(f"{label:<42} {times['compiled']:>9.3f}s {times['python']:>9.3f}s "
              f"{speedup:>7.1f}x  {'equal' if same else 'DIFFER'}")
    return 0 if all(same for _, _, same in rows) else 1


if __name__ == "__main__":
    sys.exit(main())

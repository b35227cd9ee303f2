"""Shared test oracles and utilities.

The golden-section maximizer is an independent numeric oracle used to
cross-check closed-form results; it deliberately avoids the code paths
under test.
"""

import math

import numpy as np

INVPHI = (math.sqrt(5.0) - 1.0) / 2.0
INVPHI2 = (3.0 - math.sqrt(5.0)) / 2.0


def golden_section_max(func, lo: float, hi: float, tol: float = 1e-12, iters: int = 200):
    """Maximize a unimodal function on [lo, hi] by golden-section search.

    Returns (argmax, value).  tol is the absolute bracket width at which
    the search stops.
    """
    a, b = float(lo), float(hi)
    h = b - a
    if h <= tol:
        mid = 0.5 * (a + b)
        return mid, func(mid)
    c = a + INVPHI2 * h
    d = a + INVPHI * h
    yc = func(c)
    yd = func(d)
    for _ in range(iters):
        if h <= tol:
            break
        if yc > yd:
            b, d, yd = d, c, yc
            h = b - a
            c = a + INVPHI2 * h
            yc = func(c)
        else:
            a, c, yc = c, d, yd
            h = b - a
            d = a + INVPHI * h
            yd = func(d)
    x = c if yc > yd else d
    return x, max(yc, yd)


def monopolist_utility_curve(xm, ym, fm, xn, yn, fn):
    """Monopolist's utility as a function of the posted price.

    The counterpart answers a posted price p with its Cobb-Douglas
    demands, the monopolist absorbs the counterpart's net trade, and
    consumes the resulting bundle.  Returns (U(p) callable, feasible
    open interval (p_lo, p_hi) outside which a holding goes negative).
    """
    max_x = xm + (1.0 - fn) * xn
    give_y = fn * yn
    max_y = ym + fn * yn
    give_x = (1.0 - fn) * xn

    def utility(p: float) -> float:
        new_x = max_x - give_y * p
        new_y = max_y - give_x / p
        if new_x <= 0.0 or new_y <= 0.0:
            return -math.inf
        return new_x**fm * new_y ** (1.0 - fm)

    p_lo = give_x / max_y if give_x > 0.0 else 0.0
    p_hi = max_x / give_y if give_y > 0.0 else math.inf
    return utility, (p_lo, p_hi)


def random_pair_population(rng: np.random.Generator, count: int):
    """Random holdings/preferences for pair-level oracle checks."""
    x = rng.uniform(0.05, 5.0, size=(count, 2))
    y = rng.uniform(0.05, 5.0, size=(count, 2))
    f = rng.uniform(0.01, 0.99, size=(count, 2))
    return x, y, f

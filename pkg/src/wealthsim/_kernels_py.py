"""Pure-Python fallback for the hot simulation kernels.

This module mirrors the compiled extension (``wealthsim._kernels``)
operation for operation.  Both backends must stay bit-identical: every
floating-point expression here is written with the exact shape (same
operations, same association order) as its compiled twin, and the
extension is built without FMA contraction so the hardware cannot fuse
what Python would round twice.  All random numbers are drawn by the
callers and passed in; kernels only consume them.

Arrays are updated in place where documented.  Callers guarantee
float64 C-contiguous inputs.
"""

import math

from .errors import ContractError


def angle_encounters(wealth, first, second, tosses, share, poor_win_prob):
    """Run sequential coin-toss expropriation encounters in place.

    For encounter k between agents i=first[k] and j=second[k], the first
    agent wins when tosses[k] < P(first wins), where the poorer agent
    wins with probability poor_win_prob (fair coin on exact ties).  The
    winner seizes `share` of the loser's wealth.
    """
    w = wealth.tolist()
    ii = first.tolist()
    jj = second.tolist()
    uu = tosses.tolist()
    for k in range(len(ii)):
        i = ii[k]
        j = jj[k]
        wi = w[i]
        wj = w[j]
        if wi < wj:
            p_first = poor_win_prob
        elif wi > wj:
            p_first = 1.0 - poor_win_prob
        else:
            p_first = 0.5
        if uu[k] < p_first:
            delta = share * wj
            w[i] = wi + delta
            w[j] = wj - delta
        else:
            delta = share * wi
            w[i] = wi - delta
            w[j] = wj + delta
    wealth[:] = w


def market_demands(x, y, f, price):
    """Evaluate Cobb-Douglas demands for every agent at the given price.

    Returns the pair (new_x, new_y); inputs are untouched.
    """
    new_x = f * (x + price * y)
    new_y = (1.0 - f) * (x / price + y)
    return new_x, new_y


def pairwise_trade_round(x, y, f, is_mono, first, second):
    """Trade every matched pair of one round, updating x and y in place.

    Pairs with exactly one monopolist trade at that agent's optimal
    price; all other pairs (including two monopolists, whose leverage
    cancels) trade at the pair-clearing price.  Pairs whose clearing
    price would be degenerate, and monopoly pairs where the counterpart
    has nothing to offer on one side, fall back as documented in the
    pairwise module.
    """
    xs = x.tolist()
    ys = y.tolist()
    fs = f.tolist()
    mono = is_mono.tolist()
    aa = first.tolist()
    bb = second.tolist()

    def competitive(a, b):
        fa = fs[a]
        fb = fs[b]
        xa = xs[a]
        ya = ys[a]
        xb = xs[b]
        yb = ys[b]
        num = (1.0 - fa) * xa + (1.0 - fb) * xb
        den = fa * ya + fb * yb
        if num > 0.0 and den > 0.0:
            p = num / den
            xs[a] = fa * (xa + p * ya)
            ys[a] = (1.0 - fa) * (xa / p + ya)
            xs[b] = fb * (xb + p * yb)
            ys[b] = (1.0 - fb) * (xb / p + yb)

    for k in range(len(aa)):
        a = aa[k]
        b = bb[k]
        if mono[a] != mono[b]:
            if mono[a]:
                m = a
                n = b
            else:
                m = b
                n = a
            fm = fs[m]
            fn = fs[n]
            xm = xs[m]
            ym = ys[m]
            xn = xs[n]
            yn = ys[n]
            give_y = fn * yn
            give_x = (1.0 - fn) * xn
            if give_y > 0.0 and give_x > 0.0:
                max_x = xm + give_x
                max_y = ym + give_y
                # Positive root of quad_a*p^2 + quad_b*p - quad_c = 0 in
                # the subtraction-free form (quad_a, quad_c > 0 here).
                quad_a = fm * give_y * max_y
                quad_b = give_y * give_x * (1.0 - 2.0 * fm)
                quad_c = (1.0 - fm) * max_x * give_x
                p = 2.0 * quad_c / (quad_b + math.sqrt(quad_b * quad_b + 4.0 * quad_a * quad_c))
                new_xm = max_x - give_y * p
                new_ym = max_y - give_x / p
                if new_xm < 0.0 or new_ym < 0.0:
                    raise ContractError("monopoly trade produced negative holdings")
                xs[n] = fn * (xn + p * yn)
                ys[n] = (1.0 - fn) * (xn / p + yn)
                xs[m] = new_xm
                ys[m] = new_ym
            else:
                competitive(m, n)
        else:
            competitive(a, b)
    x[:] = xs
    y[:] = ys

# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled simulation kernels.

Twin of ``wealthsim._kernels_py``: every floating-point expression here
has the exact shape of the fallback's, and the extension is compiled
with FMA contraction disabled, so both backends produce bit-identical
states.  Callers draw all random numbers and pass float64/int64/uint8
C-contiguous arrays.
"""

from libc.math cimport sqrt
from libc.stdint cimport int64_t

import numpy as np

from wealthsim.errors import ContractError


def angle_encounters(double[::1] wealth, int64_t[::1] first, int64_t[::1] second,
                     double[::1] tosses, double share, double poor_win_prob):
    """Run sequential coin-toss expropriation encounters in place."""
    cdef Py_ssize_t k, i, j
    cdef double wi, wj, p_first, delta
    for k in range(first.shape[0]):
        i = first[k]
        j = second[k]
        wi = wealth[i]
        wj = wealth[j]
        if wi < wj:
            p_first = poor_win_prob
        elif wi > wj:
            p_first = 1.0 - poor_win_prob
        else:
            p_first = 0.5
        if tosses[k] < p_first:
            delta = share * wj
            wealth[i] = wi + delta
            wealth[j] = wj - delta
        else:
            delta = share * wi
            wealth[i] = wi - delta
            wealth[j] = wj + delta


def market_demands(double[::1] x, double[::1] y, double[::1] f, double price):
    """Evaluate Cobb-Douglas demands for every agent at the given price."""
    cdef Py_ssize_t n = x.shape[0]
    new_x_arr = np.empty(n, dtype=np.float64)
    new_y_arr = np.empty(n, dtype=np.float64)
    cdef double[::1] new_x = new_x_arr
    cdef double[::1] new_y = new_y_arr
    cdef Py_ssize_t i
    for i in range(n):
        new_x[i] = f[i] * (x[i] + price * y[i])
        new_y[i] = (1.0 - f[i]) * (x[i] / price + y[i])
    return new_x_arr, new_y_arr


cdef inline void _competitive(double[::1] x, double[::1] y, double[::1] f,
                              Py_ssize_t a, Py_ssize_t b) noexcept:
    cdef double fa = f[a]
    cdef double fb = f[b]
    cdef double xa = x[a]
    cdef double ya = y[a]
    cdef double xb = x[b]
    cdef double yb = y[b]
    cdef double num = (1.0 - fa) * xa + (1.0 - fb) * xb
    cdef double den = fa * ya + fb * yb
    cdef double p
    if num > 0.0 and den > 0.0:
        p = num / den
        x[a] = fa * (xa + p * ya)
        y[a] = (1.0 - fa) * (xa / p + ya)
        x[b] = fb * (xb + p * yb)
        y[b] = (1.0 - fb) * (xb / p + yb)


def pairwise_trade_round(double[::1] x, double[::1] y, double[::1] f,
                         unsigned char[::1] is_mono,
                         int64_t[::1] first, int64_t[::1] second):
    """Trade every matched pair of one round, updating x and y in place."""
    cdef Py_ssize_t k, a, b, m, n
    cdef double fm, fn, xm, ym, xn, yn
    cdef double give_y, give_x, max_x, max_y
    cdef double quad_a, quad_b, quad_c, p, new_xm, new_ym
    for k in range(first.shape[0]):
        a = first[k]
        b = second[k]
        if is_mono[a] != is_mono[b]:
            if is_mono[a]:
                m = a
                n = b
            else:
                m = b
                n = a
            fm = f[m]
            fn = f[n]
            xm = x[m]
            ym = y[m]
            xn = x[n]
            yn = y[n]
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
                p = 2.0 * quad_c / (quad_b + sqrt(quad_b * quad_b + 4.0 * quad_a * quad_c))
                new_xm = max_x - give_y * p
                new_ym = max_y - give_x / p
                if new_xm < 0.0 or new_ym < 0.0:
                    raise ContractError("monopoly trade produced negative holdings")
                x[n] = fn * (xn + p * yn)
                y[n] = (1.0 - fn) * (xn / p + yn)
                x[m] = new_xm
                y[m] = new_ym
            else:
                _competitive(x, y, f, m, n)
        else:
            _competitive(x, y, f, a, b)

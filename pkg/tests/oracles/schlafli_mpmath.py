"""Reference values for the simplex-density bound at phi = pi/3, n = 4, 5, 6.

Independent of the package: nested tanh-sinh quadrature in mpmath at 30
digits, with beta taken straight from ``sec 2b = sec 2t - 2``. The printed
values are frozen in tests/test_bounds.py. Needs mpmath (not a package
dependency); runs in about a minute.
"""

import mpmath as mp

mp.mp.dps = 30


def lo(n):
    return mp.acos(mp.mpf(1) / (n - 1)) / 2


def beta(t):
    return mp.acos(min(mp.mpf(1), 1 / (1 / mp.cos(2 * t) - 2))) / 2


def F(n, a):
    if n <= 1:
        return mp.mpf(1)
    if a <= lo(n):
        return mp.mpf(0)
    return 2 / mp.pi * mp.quad(lambda t: F(n - 2, beta(t)), [lo(n), a])


def alpha(n, phi):
    return mp.acos(1 / (1 / mp.cos(phi) + n - 2)) / 2


if __name__ == "__main__":
    for n in (4, 5, 6):
        a = alpha(n, mp.pi / 3)
        print(n, mp.nstr(2 * F(n - 1, a) / F(n, a), 22))

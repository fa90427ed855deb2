"""Regenerates the frozen chi_n / |lambda_n| values in test_pswf.cpp.

Builds the even/odd Legendre-coefficient matrix in mpmath, seeds the shift
from a float dense eigensolve, then runs Rayleigh quotient and fixed-shift
inverse iteration at high precision.

    python3 mp_reference.py            # the table used by the tests
    python3 mp_reference.py 100 86     # one (c, n)
"""
import sys

import mpmath as mp
import numpy as np

mp.mp.dps = 120


def matrix(c, parity, m):
    c2 = mp.mpf(c) ** 2
    d, e = [], []
    for i in range(m):
        k = mp.mpf(i)
        if parity == 0:
            d.append(2 * k * (2 * k + 1) + (4 * k * (2 * k + 1) - 1) / ((4 * k + 3) * (4 * k - 1)) * c2)
            e.append((2 * k + 2) * (2 * k + 1) / ((4 * k + 3) * mp.sqrt((4 * k + 1) * (4 * k + 5))) * c2)
        else:
            d.append((2 * k + 1) * (2 * k + 2) + ((4 * k + 2) * (2 * k + 2) - 1) / ((4 * k + 5) * (4 * k + 1)) * c2)
            e.append((2 * k + 3) * (2 * k + 2) / ((4 * k + 5) * mp.sqrt((4 * k + 3) * (4 * k + 7))) * c2)
    return d, e[: m - 1]


def solve(d, e, s, b):
    n = len(d)
    a = [x - s for x in d]
    b = list(b)
    for i in range(n - 1):
        f = e[i] / a[i]
        a[i + 1] -= f * e[i]
        b[i + 1] -= f * b[i]
    x = [0] * n
    x[-1] = b[-1] / a[-1]
    for i in range(n - 2, -1, -1):
        x[i] = (b[i] - e[i] * x[i + 1]) / a[i]
    return x


def eigenpair(d, e, shift):
    n = len(d)
    v = [mp.mpf(1) / mp.sqrt(n)] * n
    lam = mp.mpf(shift)
    for _ in range(60):
        x = solve(d, e, lam, v)
        nr = mp.sqrt(sum(t * t for t in x))
        v = [t / nr for t in x]
        tv = [d[i] * v[i] + (e[i - 1] * v[i - 1] if i > 0 else 0) + (e[i] * v[i + 1] if i < n - 1 else 0)
              for i in range(n)]
        new = sum(a * b for a, b in zip(v, tv))
        done = abs(new - lam) < mp.mpf(10) ** (-100) * abs(new)
        lam = new
        if done:
            break
    for _ in range(12):  # sharpen the geometrically small leading entries
        x = solve(d, e, lam * (1 + mp.mpf(10) ** -110), v)
        nr = mp.sqrt(sum(t * t for t in x))
        v = [t / nr for t in x]
    return lam, v


def reference(c, n):
    parity = n % 2
    m = max(2 * n + 4, int(mp.ceil((1.1 * c + n) / 2)) + 40)
    d, e = matrix(c, parity, m)
    dense = np.diag([float(x) for x in d]) + np.diag([float(x) for x in e], 1) + np.diag([float(x) for x in e], -1)
    shift = np.linalg.eigvalsh(dense)[n // 2]
    lam, v = eigenpair(d, e, shift)
    alpha = [mp.mpf(0)] * (2 * m + parity)
    for i, b in enumerate(v):
        k = 2 * i + parity
        alpha[k] = b * mp.sqrt(k + mp.mpf(1) / 2)
    # psi(0) and psi'(0) from the Legendre values at 0
    if parity == 0:
        p0 = sum(alpha[k] * mp.legendre(k, 0) for k in range(0, len(alpha), 2))
        mag = abs(2 * alpha[0] / p0)
    else:
        dp0 = sum(alpha[k] * mp.diff(lambda t: mp.legendre(k, t), 0) for k in range(1, len(alpha), 2))
        mag = abs(2 * c * alpha[1] / (3 * dp0))
    return lam, mag


if __name__ == "__main__":
    cases = [(100, 86), (100, 200), (20, 60), (1000, 900)]
    if len(sys.argv) == 3:
        cases = [(float(sys.argv[1]), int(sys.argv[2]))]
    for c, n in cases:
        lam, mag = reference(c, n)
        print(f"{{{c}, {n}, {mp.nstr(lam, 20)}, {mp.nstr(mag, 12)}}},")

#!/usr/bin/env python3
"""Generate Taylor tables for the Riemann-Siegel correction terms C0..C4.

The tables are power series in x = p - 1/2, where p is the fractional part of
sqrt(t / 2pi). Psi(p) = cos(2pi(p^2 - p - 1/16)) / cos(2pi p) is expanded by
formal power-series division at 120 digits, then the standard derivative
combinations give C0..C4. Output is Rust source on stdout.

Also emits B_{2k}/(2k)! for the Euler-Maclaurin tail.
"""
import mpmath as mp

mp.mp.dps = 120
ORDER = 90
CUT = mp.mpf("1e-22")


def cos_series(a, b, n):
    """Coefficients of cos(a*x^2 + b) up to x^n (only even powers)."""
    c = [mp.mpf(0)] * (n + 1)
    for j in range(0, n // 2 + 1):
        # d^j/du^j cos(a u + b) at u = 0 is a^j cos(b + j pi/2)
        c[2 * j] = a ** j * mp.cos(b + j * mp.pi / 2) / mp.factorial(j)
    return c


def psi_series(n):
    num = cos_series(2 * mp.pi, -5 * mp.pi / 8, n)
    # cos(2 pi x) as a series in x
    den = [mp.mpf(0)] * (n + 1)
    for j in range(0, n // 2 + 1):
        den[2 * j] = -((-1) ** j) * (2 * mp.pi) ** (2 * j) / mp.factorial(2 * j)
    out = [mp.mpf(0)] * (n + 1)
    for k in range(n + 1):
        s = num[k] - sum(den[i] * out[k - i] for i in range(1, k + 1))
        out[k] = s / den[0]
    return out


def deriv(c, m):
    return [c[j] * mp.factorial(j) / mp.factorial(j - m) for j in range(m, len(c))]


def add(*terms):
    n = min(len(t[1]) for t in terms)
    return [sum(w * t[i] for w, t in terms) for i in range(n)]


psi = psi_series(ORDER)
pi = mp.pi
D = lambda m: deriv(psi, m)
c0 = psi
c1 = add((-1 / (96 * pi**2), D(3)))
c2 = add((1 / (64 * pi**2), D(2)), (1 / (18432 * pi**4), D(6)))
c3 = add((-1 / (64 * pi**2), D(1)), (-1 / (3840 * pi**4), D(5)),
         (-1 / (5308416 * pi**6), D(9)))
c4 = add((1 / (128 * pi**2), psi), (19 / (24576 * pi**4), D(4)),
         (11 / (5898240 * pi**6), D(8)), (1 / (2038431744 * pi**8), D(12)))


def trim(c):
    # keep terms that can matter for |x| <= 1/2
    last = 0
    for j, v in enumerate(c):
        if abs(v) * mp.mpf(0.5) ** j > CUT:
            last = j
    return c[: last + 1]


def emit(name, c):
    c = trim(c)
    print(f"pub(crate) const {name}: [f64; {len(c)}] = [")
    for v in c:
        print(f"    {mp.nstr(v, 20, min_fixed=0, max_fixed=0)},")
    print("];")


print("// Generated by tools/gen_rs_coeffs.py; do not edit by hand.")
print("// Taylor coefficients in x = p - 1/2 of the Riemann-Siegel corrections C0..C4.")
print()
for i, c in enumerate([c0, c1, c2, c3, c4]):
    emit(f"C{i}", c)
    print()

print("/// `B_{2k} / (2k)!` for k = 1..=40.")
print("pub(crate) const BERNOULLI_OVER_FACTORIAL: [f64; 40] = [")
for k in range(1, 41):
    print(f"    {mp.nstr(mp.bernoulli(2 * k) / mp.factorial(2 * k), 20, min_fixed=0, max_fixed=0)},")
print("];")

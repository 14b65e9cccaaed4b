"""Regenerates tests/oracles/oracle_values.hpp.

Everything here is computed from the defining formulas with mpmath (30 digits)
or, for nested optimisation, scipy in double precision. None of it calls the
C++ library. Run once and commit the header; the tests read the frozen values.
"""

import math
from pathlib import Path

import mpmath as mp
import numpy as np
from scipy import optimize

mp.mp.dps = 30
OUT = Path(__file__).with_name("oracle_values.hpp")


def sigma(n):
    return 2 * mp.pi ** (mp.mpf(n) / 2) / mp.gamma(mp.mpf(n) / 2)


# ---------------------------------------------------------------- bounds


def sobolev(p, n, R=1):
    p, n = mp.mpf(p), mp.mpf(n)
    g = mp.gamma(n / 2) * mp.gamma(n + 1 - n / p) / mp.gamma(n)
    return n / R**p * ((n - p) / (p - 1)) ** (p - 1) * g ** (p / n)


def double_singular(p, n, R=1):
    p, n = mp.mpf(p), mp.mpf(n)
    if p == n:
        return ((n - 1) / (n * R)) ** n * mp.e**n
    return (1 / (p * R)) ** p * ((n - 1) ** (n - 1) / (p - 1) ** (p - 1)) ** (p / (n - p))


def log_improved(p, n, R=1):
    p, n = mp.mpf(p), mp.mpf(n)
    m = (p - n) / (p - 1)
    sq = mp.sqrt((5 * p - 7) / (3 * (p - 1)))
    tau = 1 - 4 * (1 - m) / (p * (1 + sq - 2 * mp.log(m)) - 4 * m)
    base = (1 / (p * R)) ** p * ((p - 1) ** (p - 1) / (n - 1) ** (n - 1)) ** (p / (p - n))
    mult = 1 + p / (4 * (p - 1)) * (1 + sq - 2 * mp.log(m) - 2 * mp.log(tau)) ** -2
    return tau, base * mult, base


def picone(p, n, R=1):
    p = mp.mpf(p)
    if p < 2:
        return n / R**p * (p / (p - 1)) ** (p - 1)
    return n * p / R**p


# G(r) minimum gives H(p, n, delta) without any quadratic root
def G(t, p, n, d):
    """G at r = exp(-t)."""
    if abs(d - p) < 1e-300:
        L = t  # ln(1/r)
        c = ((p - 1) / p) ** (p - 1)
        return c * ((p - 1) / p * mp.e ** (p * t) * L**-p + (n - p) * mp.e ** (p * t) * L ** (1 - p))
    if d < p:
        q = (p - d) / (p - 1)
        om = -mp.expm1(-q * t)
        c = ((p - d) / p) ** (p - 1)
        return c * ((p - d) / p * mp.e ** ((d - 1) * p / (p - 1) * t) * om**-p + (n - d) * mp.e ** (d * t) * om ** (1 - p))
    q = (d - p) / (p - 1)
    om = -mp.expm1(-q * t)
    c = ((d - p) / p) ** (p - 1)
    return c * ((d - p) / p * mp.e ** (p * t) * om**-p + (n - d) * mp.e ** (p * t) * om ** (1 - p))


def H_by_min(p, n, d):
    p, n, d = mp.mpf(p), mp.mpf(n), mp.mpf(d)
    # coarse scan in s = ln t, then golden section
    ss = [mp.mpf(-12) + i * mp.mpf(16) / 800 for i in range(801)]
    vals = [G(mp.e**s, p, n, d) for s in ss]
    i = min(range(len(vals)), key=lambda k: vals[k])
    g = lambda s: G(mp.e**s, p, n, d)
    a, b = ss[max(i - 1, 0)], ss[min(i + 1, 800)]
    phi = (mp.sqrt(5) - 1) / 2
    c, e = b - phi * (b - a), a + phi * (b - a)
    gc, ge = g(c), g(e)
    for _ in range(200):
        if gc < ge:
            b, e, ge = e, c, gc
            c = b - phi * (b - a)
            gc = g(c)
        else:
            a, c, gc = c, e, ge
            e = a + phi * (b - a)
            ge = g(e)
    return min(gc, ge)


# double precision version for nested sup / root searches
def G_float(s, p, n, d):
    t = math.exp(s)
    if d < p:
        q = (p - d) / (p - 1)
        om = -math.expm1(-q * t)
        c = ((p - d) / p) ** (p - 1)
        return c * ((p - d) / p * math.exp((d - 1) * p / (p - 1) * t) * om**-p + (n - d) * math.exp(d * t) * om ** (1 - p))
    if d > p:
        q = (d - p) / (p - 1)
        om = -math.expm1(-q * t)
        c = ((d - p) / p) ** (p - 1)
        return c * ((d - p) / p * math.exp(p * t) * om**-p + (n - d) * math.exp(p * t) * om ** (1 - p))
    c = ((p - 1) / p) ** (p - 1)
    return c * ((p - 1) / p * math.exp(p * t) * t**-p + (n - p) * math.exp(p * t) * t ** (1 - p))


def H_float(p, n, d):
    ss = np.linspace(-14, 4, 721)
    with np.errstate(all="ignore"):
        vals = []
        for s in ss:
            try:
                vals.append(G_float(s, p, n, d))
            except OverflowError:
                vals.append(math.inf)
    i = int(np.nanargmin(vals))
    lo, hi = ss[max(i - 1, 0)], ss[min(i + 1, len(ss) - 1)]
    res = optimize.minimize_scalar(lambda s: G_float(s, p, n, d), bounds=(lo, hi), method="bounded",
                                   options={"xatol": 1e-12})
    return res.fun


def lambda3_float(p, n):
    edge = 1e-6
    ds = np.linspace(edge, n - edge, 401)
    vals = [H_float(p, n, d) for d in ds]
    i = int(np.argmax(vals))
    lo, hi = ds[max(i - 1, 0)], ds[min(i + 1, len(ds) - 1)]
    res = optimize.minimize_scalar(lambda d: -H_float(p, n, d), bounds=(lo, hi), method="bounded",
                                   options={"xatol": 1e-11})
    return max(-res.fun, float(n), float(double_singular(p, n)))


def table1_crossover(n):
    gap = lambda p: lambda3_float(p, n) - float(picone(p, n))
    ps = np.arange(1.3, 60.0 + 1e-9, 0.05)
    prev = gap(ps[0])
    for a, b in zip(ps[:-1], ps[1:]):
        cur = gap(b)
        if prev < 0 <= cur:
            return optimize.brentq(gap, a, b, xtol=1e-12)
        prev = cur
    return math.nan


# ------------------------------------------------------------- crossovers


def p0n(n):
    # where double_singular meets cheeger, straight from the two formulas
    f = lambda p: mp.log(double_singular(p, n)) - p * mp.log(mp.mpf(n) / p)
    return mp.findroot(f, (mp.mpf("1.000001"), mp.mpf(2)), solver="anderson")


def p1n(n):
    # picone (p < 2 branch) against cheeger, logs rearranged
    return mp.findroot(lambda p: (p - 1) * mp.log(n) - (2 * p - 1) * mp.log(p) + (p - 1) * mp.log(p - 1),
                       (mp.mpf("1.0001"), mp.mpf("1.9999")), solver="anderson")


def p3n(n, lo, hi):
    return mp.findroot(lambda p: (p - 1) * mp.log(n) - (p + 1) * mp.log(p), (mp.mpf(lo), mp.mpf(hi)),
                       solver="anderson")


# ------------------------------------------------------ radial integrals


def q(f, a, b):
    return mp.quad(f, [a, b])


def annulus_uk(p, n, R, r, k):
    p, R, r, k = map(mp.mpf, (p, R, r, k))
    m = (p - n) / (p - 1)
    pc = p / (p - 1)
    s = sigma(n)
    E = lambda x: abs(R**m - x**m)
    u = lambda x: (E(x) / abs(m)) ** k
    du = lambda x: k * (E(x) / abs(m)) ** (k - 1) * x ** (m - 1)
    L = s * q(lambda x: x ** (n - 1) * du(x) ** p, r, R)
    J = s * q(lambda x: x ** (n - 1) * u(x) ** p * x ** (-(n - 1) * pc) * E(x) ** -p, r, R)
    rhs = abs(n - p) / p * J ** (1 / p) + s / p * E(r) ** (1 - p) * u(r) ** p * J ** (-1 / pc)
    return L ** (1 / p), rhs


def annulus_us(n, R, r, s_):
    n_, R, r, s_ = mp.mpf(n), mp.mpf(R), mp.mpf(r), mp.mpf(s_)
    sg = sigma(n)
    L = sg * q(lambda x: x ** (n - 1) * (s_ * mp.log(R / x) ** (s_ - 1) / x) ** n_, r, R)
    J = sg * q(lambda x: x ** (n - 1) * mp.log(R / x) ** (s_ * n_) * x**-n_ * mp.log(R / x) ** -n_, r, R)
    ur = mp.log(R / r) ** (s_ * n_)
    rhs = (n_ - 1) / n_ * J ** (1 / n_) + sg / n_ * mp.log(R / r) ** (1 - n_) * ur * J ** (-(n_ - 1) / n_)
    return L ** (1 / n_), rhs


def ball_uk(p, n, R, k):
    p, R, k = map(mp.mpf, (p, R, k))
    m = (p - n) / (p - 1)
    pc = p / (p - 1)
    s = sigma(n)
    E = lambda x: R**m - x**m
    u = lambda x: (E(x) / m) ** k
    du = lambda x: k * (E(x) / m) ** (k - 1) * x ** (m - 1)
    L = s * q(lambda x: x ** (n - 1) * du(x) ** p, 0, R)
    J = s * q(lambda x: x ** (n - 1) * u(x) ** p * x ** (-(n - 1) * pc) * E(x) ** -p, 0, R)
    u0 = (R**m / m) ** k
    rhs = (p - n) / p * J ** (1 / p) + R ** (n - p) / p * s * u0**p * J ** (-1 / pc)
    return L ** (1 / p), rhs


def eigenweight():
    u = lambda x: mp.sin(mp.pi * x) / (mp.pi * x)
    du = lambda x: (mp.pi * x * mp.cos(mp.pi * x) - mp.sin(mp.pi * x)) / (mp.pi * x**2)
    kap = lambda x: mp.pi * mp.cot(mp.pi * x) - 1 / x
    s = 4 * mp.pi
    L = s * q(lambda x: x**2 * du(x) ** 2, 0, 1)
    K = s * q(lambda x: x**2 * (kap(x) * u(x)) ** 2, 0, 1)
    M = s * q(lambda x: x**2 * u(x) ** 2, 0, 1)
    return L, K, M


def test_fn(name, R):
    R = mp.mpf(R)
    if name == "linear_sq":
        return (lambda x: (1 - x / R) ** 2, lambda x: -2 * (1 - x / R) / R)
    if name == "radial_sq":
        return (lambda x: (1 - (x / R) ** 2) ** 2, lambda x: -4 * x / R**2 * (1 - (x / R) ** 2))
    return (lambda x: mp.cos(mp.pi * x / (2 * R)), lambda x: -mp.pi / (2 * R) * mp.sin(mp.pi * x / (2 * R)))


def oneparam(p, n, R, d, name):
    p, R, d = map(mp.mpf, (p, R, d))
    s = sigma(n)
    u, du = test_fn(name, R)
    L = s * q(lambda x: x ** (n - 1) * abs(du(x)) ** p, 0, R)
    if d == p:
        lg = lambda x: mp.log(R / x)
        I1 = s * q(lambda x: x ** (n - 1) * abs(u(x)) ** p * x**-p * lg(x) ** -p, 0, R)
        I2 = s * q(lambda x: x ** (n - 1) * abs(u(x)) ** p * x**-p * lg(x) ** (1 - p), 0, R)
        rhs = ((p - 1) / p) ** p * I1 + ((p - 1) / p) ** (p - 1) * abs(n - p) * I2
    else:
        qq = (p - d) / (p - 1)
        D = lambda x: abs(R**qq - x**qq)
        I1 = s * q(lambda x: x ** (n - 1) * abs(u(x)) ** p * x ** (-(d - 1) * p / (p - 1)) * D(x) ** -p, 0, R)
        I2 = s * q(lambda x: x ** (n - 1) * abs(u(x)) ** p * x**-d * D(x) ** (1 - p), 0, R)
        rhs = abs((p - d) / p) ** p * I1 + (n - d) * abs((p - d) / p) ** (p - 1) * I2
    return L, rhs


def log_term(p, n, R, name):
    p, R = mp.mpf(p), mp.mpf(R)
    m = (p - n) / (p - 1)
    pc = p / (p - 1)
    s = sigma(n)
    a = -(p - 2) / (6 * (p - 1))
    y0 = 2 / (1 + mp.sqrt(1 + 4 * abs(a)))
    tau0 = mp.e ** (1 / y0 - 1)
    u, du = test_fn(name, R)
    L = s * q(lambda x: x ** (n - 1) * abs(du(x)) ** p, 0, R)
    E = lambda x: R**m - x**m
    w = lambda x: (1 + p / (2 * (p - 1)) / mp.log(E(x) / (mp.e * tau0 * R**m)) ** 2) * x ** (-(n - 1) * pc) * E(x) ** -p
    rhs = ((p - n) / p) ** p * s * q(lambda x: x ** (n - 1) * abs(u(x)) ** p * w(x), 0, R)
    return L, rhs, a, y0, tau0


# ------------------------------------------------------------------ emit


def main():
    lines = ["// Generated by gen_oracles.py. Do not edit by hand.", "#pragma once", "", "namespace oracle {", ""]

    def const(name, v):
        lines.append(f"constexpr double {name} = {mp.nstr(mp.mpf(v), 20)};")

    const("gamma_half", mp.gamma(0.5))
    const("gamma_three_halves", mp.gamma(1.5))
    lines.append("constexpr double sigma_n[13] = {0, 0, " + ", ".join(mp.nstr(sigma(n), 20) for n in range(2, 13)) + "};")

    const("sobolev_2_3", sobolev(2, 3))
    const("sobolev_15_2", sobolev(1.5, 2))
    const("picone_15_2", picone(mp.mpf("1.5"), 2))
    tau, val, base = log_improved(4, 2)
    const("log_improved_4_2_tau", tau)
    const("log_improved_4_2_value", val)
    const("log_improved_4_2_base", base)

    lines.append("")
    lines.append("struct Table2Cell { double p; int n; double double_singular; };")
    cells = []
    for i in range(15):
        p = mp.mpf("1.2") + mp.mpf("0.2") * i
        for n in (2, 3, 4):
            cells.append(f"    {{{mp.nstr(p, 3)}, {n}, {mp.nstr(double_singular(p, n), 17)}}}")
    lines.append("constexpr Table2Cell table2[45] = {\n" + ",\n".join(cells) + "};")

    lines.append("")
    lines.append("struct HCase { double p; int n; double delta; double H; };")
    hc = [(2, 3, 1), (2, 3, 2), (2, 3, 2.5), (4, 3, 2), (1.5, 3, 2.5), (1.8, 4, 3), (2.5, 4, 2.5), (3, 2, 1.5), (2, 4, 3.5)]
    lines.append("constexpr HCase H_cases[] = {\n" + ",\n".join(
        f"    {{{p}, {n}, {d}, {mp.nstr(H_by_min(p, n, d), 17)}}}" for p, n, d in hc) + "};")

    lines.append("")
    lines.append("// sup over delta of H, closure of (0, n), double precision nested optimisation")
    lc = [(2, 3), (4, 3), (1.5, 2), (3, 5)]
    lines.append("struct Lambda3Case { double p; int n; double value; };")
    lines.append("constexpr Lambda3Case lambda3_cases[] = {\n" + ",\n".join(
        f"    {{{p}, {n}, {float(lambda3_float(p, n))!r}}}" for p, n in lc) + "};")

    lines.append("")
    lines.append("constexpr double p0n[13] = {0, 0, " + ", ".join(mp.nstr(p0n(n), 17) for n in range(2, 13)) + "};")
    const("p0n_100", p0n(100))
    const("p1n_9", p1n(9))
    const("p1n_100", p1n(100))
    const("p3n_9", p3n(9, "2.5", "3.5"))
    const("p3n_100", p3n(100, 80, 100))

    lines.append("")
    lines.append("// where sup H overtakes the piecewise Picone bound, R = 1, n = 2..9")
    lines.append("constexpr double table1_crossover[10] = {0, 0, " + ", ".join(repr(float(table1_crossover(n))) for n in range(2, 10)) + "};")

    lines.append("")
    lines.append("struct SidePair { double lhs; double rhs; };")
    for name, (lhs, rhs) in [
        ("annulus_3_2_1_03_08", annulus_uk(3, 2, 1, "0.3", "0.8")),
        ("annulus_4_3_2_05_10", annulus_uk(4, 3, 2, "0.5", 1)),
        ("annulus_us_3_1_03_08", annulus_us(3, 1, "0.3", "0.8")),
        ("ball_3_2_1_08", ball_uk(3, 2, 1, "0.8")),
        ("ball_4_3_2_10", ball_uk(4, 3, 2, 1)),
        ("oneparam_2_3_1_linear", oneparam(2, 3, 1, 1, "linear_sq")),
        ("oneparam_2_3_2_radial", oneparam(2, 3, 1, 2, "radial_sq")),
        ("oneparam_2_4_3_cosine", oneparam(2, 4, 1, 3, "cosine")),
    ]:
        lines.append(f"constexpr SidePair {name} = {{{mp.nstr(lhs, 17)}, {mp.nstr(rhs, 17)}}};")
    for fn in ("linear_sq", "radial_sq", "cosine"):
        L, rhs, a, y0, tau0 = log_term(4, 2, 1, fn)
        lines.append(f"constexpr SidePair logterm_4_2_{fn} = {{{mp.nstr(L, 17)}, {mp.nstr(rhs, 17)}}};")
    const("logterm_a_4", a)
    const("logterm_y0_4", y0)
    const("logterm_tau0_4", tau0)

    L, K, M = eigenweight()
    const("eigenweight_L", L)
    const("eigenweight_K", K)
    const("eigenweight_M", M)
    const("bessel_j01", mp.besseljzero(0, 1))

    lines += ["", "}  // namespace oracle", ""]
    OUT.write_text("\n".join(lines))
    print(OUT.read_text())


if __name__ == "__main__":
    main()

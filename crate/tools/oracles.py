"""Arbitrary-precision reference values frozen into the Rust test suites.

Run with `python3 tools/oracles.py`; every number printed here is pasted
verbatim into the corresponding test. Requires mpmath.
"""
from mpmath import mp, mpf, mpc, loggamma, besselk, sqrt, exp, quad, pi, gamma, meijerg, inf

mp.dps = 40


def show(label, v):
    if isinstance(v, mpc):
        print(f"{label}: {mp.nstr(v.real, 20)} {mp.nstr(v.imag, 20)}")
    else:
        print(f"{label}: {mp.nstr(v, 20)}")


show("loggamma(3+4i)", loggamma(mpc(3, 4)))
show("loggamma(-2.5+0.3i)", loggamma(mpc(-2.5, 0.3)))
show("loggamma(0.1-20i)", loggamma(mpc(0.1, -20)))
show("loggamma(1e5+1e5i)", loggamma(mpc(1e5, 1e5)))

x = mpf(10) ** 4
a2 = mpc(2.5, 0.5)
show("ratio x=1e4 a1=1 a2=2.5+0.5i", gamma(x + 1) * x ** (a2 - 1) / gamma(x + a2))

show("2K1(2)", 2 * besselk(1, 2))
print("bessel anchors (a, b, 2 sqrt(b/a) K1(2 sqrt(ab))):")
PAIRS = [(0.5, 0.5), (1.0, 1.0), (2.0, 0.25), (0.25, 2.0), (1.5, 0.7),
         (0.8, 3.0), (3.0, 0.9), (0.3, 0.3), (1.2, 2.5), (2.2, 1.7)]
for a, b in PAIRS:
    a, b = mpf(a), mpf(b)
    print(f"    ({mp.nstr(a, 6)}, {mp.nstr(b, 6)}, {mp.nstr(2 * sqrt(b / a) * besselk(1, 2 * sqrt(a * b)), 20)}),")

show("int_0^1 (1-x) e^{-1/x}", quad(lambda t: (1 - t) * exp(-1 / t), [0, 0.5, 1]))
show("sqrt(pi) e^-2", sqrt(pi) * exp(-2))

def i1beta(alpha, a, b, delta, rho, beta):
    f = lambda t: t ** (alpha - 1) * (1 + a * (beta - 1) * t ** delta) ** (-1 / (beta - 1)) * exp(-b * t ** (-rho))
    return quad(f, [0, 0.5, 1, 2, 10, inf])

show("I1beta(1,1,1,1,1,1.5)", i1beta(1, 1, 1, 1, 1, mpf(1.5)))

def i1(alpha, a, b, delta, rho):
    f = lambda t: t ** (alpha - 1) * exp(-a * t ** delta - b * t ** (-rho))
    return quad(f, [0, 0.5, 1, 2, 10, inf])

show("I1(alpha=1,a=1,b=1,delta=1,rho=0.5)", i1(1, 1, 1, 1, mpf(0.5)))
show("I1(alpha=2.5,a=0.7,b=1.3,delta=1.5,rho=0.5)", i1(mpf(2.5), mpf(0.7), mpf(1.3), mpf(1.5), mpf(0.5)))

def i2beta(alpha, a, b, delta, rho, beta):
    d = (1 / (a * (1 - beta))) ** (1 / delta)
    f = lambda t: t ** (alpha - 1) * (1 - a * (1 - beta) * t ** delta) ** (1 / (1 - beta)) * exp(-b * t ** (-rho))
    return quad(f, [0, d / 4, d / 2, d])

show("I2beta(1,1,1,1,1,0.5)", i2beta(1, 1, 1, 1, 1, mpf(0.5)))
show("I2beta(1.3,0.8,0.6,2,1,0.25)", i2beta(mpf(1.3), mpf(0.8), mpf(0.6), 2, 1, mpf(0.25)))

show("G30_03(0.7|0,1/3,2/3)", meijerg([[], []], [[0, mpf(1) / 3, mpf(2) / 3], []], mpf(0.7)))
show("G21_12(1.3|0.4;0,0.7)", meijerg([[0.4], []], [[0, 0.7], []], mpf(1.3)))
show("G20_12(0.9|3.5;0,0.3)", meijerg([[], [3.5]], [[0, 0.3], []], mpf(0.9)))
show("G30_03(2|0,1/2,1)", meijerg([[], []], [[0, 0.5, 1], []], mpf(2)))
show("G20_02(15|0,0.45)", meijerg([[], []], [[0, 0.45], []], mpf(15)))

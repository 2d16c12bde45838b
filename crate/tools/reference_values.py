"""High-precision reference values for the kernel-transform tests.

Everything here is recomputed from first principles with mpmath so the
Rust implementations are checked against an independent stack:

  * the Bessel-type kernel attached to a spectral parameter nu,
      u > 0:  pi sqrt(u)/sin(pi nu) (J_{-2nu} - J_{2nu})(4 pi sqrt(u))
      u < 0:  4 sqrt(|u|) cos(pi nu) K_{2nu}(4 pi sqrt(|u|))
      discrete ell: 0 for u<0, (-1)^ell 2 pi sqrt(u) J_{2ell-1}(4 pi sqrt(u))
  * its closed two-sided transform Xi(r; nu) against a direct quadrature;
  * the weighted r-integral transforms Lambda / Theta.
"""

import math

import mpmath as mp

mp.mp.dps = 25


def jker(nu, u):
    u = mp.mpf(u)
    if u > 0:
        a = 4 * mp.pi * mp.sqrt(u)
        return mp.pi * mp.sqrt(u) / mp.sin(mp.pi * nu) * (
            mp.besselj(-2 * nu, a) - mp.besselj(2 * nu, a)
        )
    a = 4 * mp.pi * mp.sqrt(-u)
    return 4 * mp.sqrt(-u) * mp.cos(mp.pi * nu) * mp.besselk(2 * nu, a)


def jker0(u):
    # nu -> 0 limit: -2 pi sqrt(u) Y_0(4 pi sqrt(u)) on u > 0
    u = mp.mpf(u)
    if u > 0:
        return -2 * mp.pi * mp.sqrt(u) * mp.bessely(0, 4 * mp.pi * mp.sqrt(u))
    return 4 * mp.sqrt(-u) * mp.besselk(0, 4 * mp.pi * mp.sqrt(-u))


def jker_disc(ell, u):
    if u <= 0:
        return mp.mpf(0)
    u = mp.mpf(u)
    return (-1) ** ell * 2 * mp.pi * mp.sqrt(u) * mp.besselj(2 * ell - 1, 4 * mp.pi * mp.sqrt(u))


def S(nu, r):
    r = mp.mpf(r)
    return (
        r ** (-mp.mpf(1) / 2 - nu)
        * mp.gamma(mp.mpf(1) / 2 + nu) ** 2
        / mp.gamma(1 + 2 * nu)
        * mp.hyp2f1(mp.mpf(1) / 2 + nu, mp.mpf(1) / 2 + nu, 1 + 2 * nu, -1 / r)
    )


def lam_integrand(nu, r):
    return mp.re(S(nu, r) * (1 - 1 / mp.sin(mp.pi * nu)))


def xi_closed(nu, r):
    return S(nu, r) * (1 - 1 / mp.sin(mp.pi * nu)) + S(-nu, r) * (1 + 1 / mp.sin(mp.pi * nu))


def xi_direct(nu, r):
    # int over R^x of j_0(-u) j_nu(u/r) du/|u|^{3/2}, split at 0
    def neg(w):  # u = -w^2, du/u^{3/2} -> 2 dw / w^2
        return jker0(w * w) * jker(nu, -w * w / r) * 2 / (w * w)

    def pos(w):  # u = +w^2
        return jker0(-w * w) * jker(nu, w * w / r) * 2 / (w * w)

    pts = [mp.mpf(k) / 4 for k in range(1, 33)]
    a = mp.quad(neg, [mp.mpf("1e-14")] + pts)
    b = mp.quad(pos, [mp.mpf("1e-14")] + pts[:20])
    return a + b


class GaussPair:
    def __init__(self, T, G):
        self.T, self.G = mp.mpf(T), mp.mpf(G)

    def gc(self, x):
        return (
            2
            * mp.sqrt(mp.pi)
            * self.G
            * mp.e ** (-((mp.pi * self.G * x) ** 2))
            * mp.cos(2 * mp.pi * self.T * x)
        )


def lam(nu, w, xlo=None, xhi=None, width=None):
    # r = e^x;  dr / sqrt(r(r+1)) = dx / sqrt(1 + e^{-x})
    kap = abs(mp.im(nu))
    if xlo is None:
        xlo = -float(14 / w.G) - 2.0
    if xhi is None:
        xhi = 70.0
    if width is None:
        width = min(0.5, float(mp.pi) / (4 * (float(kap) + 1)))
    n = int((xhi - xlo) / width) + 1
    pts = [xlo + (xhi - xlo) * i / n for i in range(n + 1)]

    def f(x):
        ex = mp.e ** (-x)
        r = mp.e**x
        arg = mp.log(1 + ex) / (2 * mp.pi)
        return w.gc(arg) * lam_integrand(nu, r) / mp.sqrt(1 + ex)

    return mp.quad(f, pts)


print("--- kernel spot values ---")
print("4*K0(4pi)      =", mp.nstr(4 * mp.besselk(0, 4 * mp.pi), 17))
print("j(i, 0.5)      =", mp.nstr(jker(1j, 0.5), 17))
print("j(i, 10)       =", mp.nstr(jker(1j, 10), 17))
print("j(i, -0.5)     =", mp.nstr(jker(1j, -0.5), 17))
print("j(3i, 2)       =", mp.nstr(jker(3j, 2), 17))
print("j(0.25, 1)     =", mp.nstr(jker(mp.mpf("0.25"), 1), 17))
print("j(0.25, -1)    =", mp.nstr(jker(mp.mpf("0.25"), -1), 17))
print("jdisc(2, 2)    =", mp.nstr(jker_disc(2, 2), 17))
print("j0(1)          =", mp.nstr(jker0(1), 17))
print("j0 limit check =", mp.nstr(jker(mp.mpf("1e-9"), 1) - jker0(1), 5))

print("--- Xi ---")
print("xi_closed(i,1)   =", mp.nstr(xi_closed(1j, 1), 17))
print("xi_direct(i,1)   =", mp.nstr(xi_direct(1j, 1), 12))
print("xi_closed(2i,2)  =", mp.nstr(xi_closed(2j, 2), 17))
print("xi_closed(i,0.3) =", mp.nstr(xi_closed(1j, mp.mpf("0.3")), 17))
# discrete: 2 (-1)^ell S(ell - 1/2)
for ell, r in [(1, 1), (2, 1), (2, 2.5)]:
    v = 2 * (-1) ** ell * S(mp.mpf(ell) - mp.mpf(1) / 2, r)
    print(f"xi_disc(ell={ell}, r={r}) =", mp.nstr(v, 17))
print("-2 ln 2          =", mp.nstr(-2 * mp.log(2), 17))

print("--- Lambda (weight: Gaussian pair T=4, G=2) ---")
w = GaussPair(4, 2)
for nu in [2j, 3j, 8j]:
    v = lam(nu, w)
    print(f"Lam({nu}) =", mp.nstr(v, 15))
# discrete ell = 2  (ell odd vanishes via the 1 - 1/sin factor)
v = lam(mp.mpf(3) / 2, w, width=0.5)
print("Lam(3/2)  =", mp.nstr(v, 15))
v = lam(mp.mpf(1) / 2, w, width=0.5)
print("Lam(1/2)  =", mp.nstr(v, 15))

print("--- decay-bound calibration: |j_nu(u)|/u^{1/4} on [1, 1e4] ---")
best = {}
for name, nu in [("0", mp.mpf("1e-8")), ("i", 1j), ("3i", 3j), ("0.25", mp.mpf("0.25"))]:
    m = 0.0
    for k in range(41):
        u = mp.mpf(10) ** (4 * k / mp.mpf(40))
        val = abs(jker(nu, u)) / u ** mp.mpf("0.25")
        m = max(m, float(val))
    best[name] = m
    print(f"nu={name}: max ratio = {m:.6f}")
print("discrete ell=1..3, sup |j|/min(u^{1/4}, u^ell):")
for ell in [1, 2, 3]:
    m = 0.0
    for k in range(61):
        u = mp.mpf(10) ** (-2 + 6 * k / mp.mpf(60))
        val = abs(jker_disc(ell, u)) / min(u ** mp.mpf("0.25"), u**ell)
        m = max(m, float(val))
    print(f"ell={ell}: {m:.6f}")

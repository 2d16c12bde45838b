"""Reference values for the Whittaker-model (Kirillov) module.

Everything here is recomputed from scratch with mpmath at high
precision; the printed constants are frozen into the Rust tests.

Conventions used throughout:
  phi(p, delta, nu, y) = (-1)^p pi^{1/2+nu} W_{delta p, nu}(4 pi y)
                           / Gamma(delta p + 1/2 + nu)
  Gamma_p(s)           = int_0^inf phi(p, +1, nu, y) y^{s-3/2} dy
  d_p(nu)              = (-1)^p pi Gamma(2nu) zeta(2nu)
                           / (2^{2nu-1} zeta(2nu+1)
                              Gamma(1/2+nu+p) Gamma(1/2+nu-p))
"""

import mpmath as mp

mp.mp.dps = 30


def phi(p, delta, nu, y):
    return (
        (-1) ** p
        * mp.pi ** (mp.mpf(1) / 2 + nu)
        * mp.whitw(delta * p, nu, 4 * mp.pi * y)
        / mp.gamma(delta * p + mp.mpf(1) / 2 + nu)
    )


def show(tag, v):
    print(f"{tag}: {mp.nstr(v, 17)}")


# --- closed-form spot values -------------------------------------------------
show("phi(0,+1,i,1)      ", phi(0, 1, 1j, 1))
show("phi(0,+1,i,1) via K", 2 * mp.pi ** (0.5 + 1j) / mp.gamma(0.5 + 1j) * mp.besselk(1j, 2 * mp.pi))
show("phi(1,+1,0.7i,1)   ", phi(1, 1, 0.7j, 1))
show("phi(1,-1,0.7i,1)   ", phi(1, -1, 0.7j, 1))
show("phi(2,+1,0.25,0.5) ", phi(2, 1, mp.mpf("0.25"), mp.mpf("0.5")))
show("phi(3,+1,3/2,0.8)  ", phi(3, 1, mp.mpf(3) / 2, mp.mpf("0.8")))
# degenerate Whittaker check at p = ell
l = 2
lhs = phi(l, 1, l - mp.mpf(1) / 2, mp.mpf("0.8"))
rhs = (
    (-1) ** l
    * mp.pi ** (l)
    * (4 * mp.pi * mp.mpf("0.8")) ** l
    * mp.exp(-2 * mp.pi * mp.mpf("0.8"))
    / mp.gamma(2 * l)
)
show("phi(2,+1,3/2,0.8) deg dev", lhs - rhs)

# --- oscillatory-contour cross-check of phi(1,+1,0.7i,1) ---------------------
# y^{1/2-nu} int exp(2 pi i y xi) (xi^2+1)^{-1/2-nu} ((xi+i)/(xi-i))^{p} dxi,
# real segment [-X, X] closed with vertical rays where exp(2 pi i y xi) decays.
def contour_phi(p, nu, y, X=40, H=9):
    f = lambda xi: mp.e ** (2j * mp.pi * y * xi) * (xi * xi + 1) ** (
        -mp.mpf(1) / 2 - nu
    ) * ((xi + 1j) / (xi - 1j)) ** p
    base = mp.quad(f, [-X, -5, 0, 5, X], maxdegree=10)
    up_r = mp.quad(lambda t: 1j * f(X + 1j * t), [0, 1, H], maxdegree=8)
    up_l = mp.quad(lambda t: 1j * f(-X + 1j * t), [0, 1, H], maxdegree=8)
    return y ** (mp.mpf(1) / 2 - nu) * (base + up_r - up_l)

show("contour phi(1,0.7i,1)", contour_phi(1, 0.7j, 1))

# --- Mellin transform of the p = 0 row ---------------------------------------
def gamma_p_quad(p, nu, s):
    f = lambda y: phi(p, 1, nu, y) * y ** (s - mp.mpf(3) / 2)
    return mp.quad(f, [0, mp.mpf("0.05"), mp.mpf("0.5"), 2, 8, 30], maxdegree=12)


def gamma0_closed(nu, s):
    return (
        mp.pi ** (mp.mpf(1) / 2 + nu - s)
        * mp.gamma((s + nu) / 2)
        * mp.gamma((s - nu) / 2)
        / (2 * mp.gamma(mp.mpf(1) / 2 + nu))
    )

s = mp.mpf("0.5") + mp.mpf("0.2") * 1j
show("Gamma_0(0.5+0.2i), nu=i closed", gamma0_closed(1j, s))
show("Gamma_0(0.5+0.2i), nu=i quad  ", gamma_p_quad(0, 1j, s))

nu = mp.mpf("1.2") * 1j
s = mp.mpf("0.5") + mp.mpf("0.3") * 1j
g1 = gamma_p_quad(1, nu, s)
g1m = gamma_p_quad(1, nu, 1 - s)
gm1m = gamma_p_quad(-1, nu, 1 - s)
show("Gamma_1(s),  nu=1.2i", g1)
show("Gamma_1(1-s)        ", g1m)
show("Gamma_-1(1-s)       ", gm1m)
rhs = (
    2 ** (1 - 2 * s)
    * mp.pi ** (-2 * s)
    * mp.gamma(s + nu)
    * mp.gamma(s - nu)
    * (mp.cos(mp.pi * s) * g1m + mp.cos(mp.pi * nu) * gm1m)
)
show("loc-FE residual (p=1)", -g1 - rhs)

# --- Whittaker product integral ----------------------------------------------
def wprod_closed(a, b, nu):
    br = 1 / (
        mp.gamma(mp.mpf(1) / 2 - a + nu) * mp.gamma(mp.mpf(1) / 2 - b - nu)
    ) - 1 / (mp.gamma(mp.mpf(1) / 2 - a - nu) * mp.gamma(mp.mpf(1) / 2 - b + nu))
    return mp.pi / ((a - b) * mp.sin(2 * mp.pi * nu)) * br


def wprod_quad(a, b, nu, lo=mp.mpf("1e-12")):
    f = lambda u: mp.whitw(a, nu, u) * mp.whitw(b, nu, u) / u
    return mp.quad(f, [lo, mp.mpf("0.01"), mp.mpf("0.5"), 3, 12, 60], maxdegree=12)

show("wprod closed (1,0,0.7i)", wprod_closed(1, 0, 0.7j))
show("wprod quad   (1,0,0.7i)", wprod_quad(1, 0, 0.7j))
show("wprod quad lo=1e-8     ", wprod_quad(1, 0, 0.7j, lo=mp.mpf("1e-8")))

# discrete limit: nu -> l - 1/2 with integer alpha, beta >= l
for eps in [mp.mpf("1e-6"), mp.mpf("1e-8")]:
    show(f"wprod closed (1,2,1/2+{eps})", wprod_closed(1, 2, mp.mpf(1) / 2 + eps))
show("wprod quad   (1,2,1/2)", wprod_quad(1, 2, mp.mpf(1) / 2))

# --- Parseval sanity: single phi_0, nu = i -----------------------------------
def kphi0_sq(nu):
    c = 2 * mp.pi ** (mp.mpf(1) / 2 + nu) / mp.gamma(mp.mpf(1) / 2 + nu)
    f = lambda y: abs(c) ** 2 * y * abs(mp.besselk(nu, 2 * mp.pi * y)) ** 2 / y
    # both signs of u contribute identically for p = 0
    return 2 / mp.pi * mp.quad(f, [0, mp.mpf("0.2"), 1, 5], maxdegree=10)

show("parseval phi_0, nu=i   ", kphi0_sq(1j))

# --- Eisenstein d_p ----------------------------------------------------------
def d_p(p, nu):
    return (
        (-1) ** p
        * mp.pi
        * mp.gamma(2 * nu)
        * mp.zeta(2 * nu)
        / (
            2 ** (2 * nu - 1)
            * mp.zeta(2 * nu + 1)
            * mp.gamma(mp.mpf(1) / 2 + nu + p)
            * mp.gamma(mp.mpf(1) / 2 + nu - p)
        )
    )

nu = mp.mpf("0.3") + mp.mpf("0.2") * 1j
show("d_0(0.3+0.2i)", d_p(0, nu))
show("d_1(0.3+0.2i)", d_p(1, nu))
show("d_3(0.3+0.2i)", d_p(3, nu))
show("d_1(nu) d_1(-nu) - 1", d_p(1, nu) * d_p(1, -nu) - 1)
show("|d_2(1.1i)| - 1", abs(d_p(2, mp.mpf("1.1") * 1j)) - 1)

"""Reference values for the Hecke-series evaluator.

Two independent routes are compared:

  * a high-precision mpmath evaluation using a smoothed functional
    equation with the contour shifted to Re(s+z) = -5.7 (kernel poles at
    z = 0, -2, -4 picked up explicitly), and
  * a float implementation of the production scheme: Gaussian cutoff
    exp(-(n/X)^2), Mellin kernel (1/2)Gamma(z/2)X^z, contour shifted to
    Re(s+z) = -2.7 with the z = -2 pole routed through the functional
    equation and a direct series at 3-s.

For the weight-12 form the Hecke eigenvalues are recomputed from the
exact integer q-expansion of q prod(1-q^n)^24, which makes that row a
from-scratch oracle.  The reflection factor for nu = l - 1/2 uses the
reduced removable form (-1)^l (2 pi)^{2w-1} G(l+1/2-w)/G(l-1/2+w); the
generic product hits a Gamma pole cancelled by a cosine zero there.
"""

import json
import math

import numpy as np
import mpmath as mp
import scipy.special as sp

mp.mp.dps = 25

snap = json.load(open("data/snapshot.json"))
DEPTH = snap["metadata"]["hecke_depth"]


def chi_mp(w, nu, eps):
    if eps is None:
        l = int(mp.re(nu) + mp.mpf(1) / 2)
        return (
            (-1) ** l
            * (2 * mp.pi) ** (2 * w - 1)
            * mp.gamma(l + mp.mpf(1) / 2 - w)
            / mp.gamma(l - mp.mpf(1) / 2 + w)
        )
    g = mp.gamma(1 - w + nu) * mp.gamma(1 - w - nu)
    return 2 ** (2 * w - 1) * mp.pi ** (2 * w - 2) * g * (
        eps * mp.cos(mp.pi * nu) - mp.cos(mp.pi * w)
    )


def hdir_mp(t, s, N=None):
    N = len(t) if N is None else min(N, len(t))
    return mp.fsum(t[n - 1] * mp.power(n, -s) for n in range(1, N + 1))


def afe_ref(t, nu, eps, s, X):
    N = len(t)
    lead = mp.fsum(
        t[n - 1] * mp.power(n, -s) * mp.e ** (-mp.mpf(n) ** 2 / X**2)
        for n in range(1, N + 1)
    )
    pole1 = -(X**-2) * chi_mp(s - 2, nu, eps) * hdir_mp(t, 3 - s)
    pole2 = mp.mpf(1) / 2 * X**-4 * chi_mp(s - 4, nu, eps) * hdir_mp(t, 5 - s)
    x0 = -mp.mpf("5.7") - mp.re(s)
    vmax = 55 + 1.3 * abs(mp.im(nu))

    def f(v):
        z = x0 + 1j * v
        return 0.5 * mp.gamma(z / 2) * X**z * chi_mp(s + z, nu, eps) * hdir_mp(t, 1 - s - z, 128)

    I = mp.quad(f, mp.linspace(-vmax, vmax, int(2 * vmax / 6) + 2), maxdegree=5) / (2 * mp.pi)
    return lead - pole1 - pole2 - I


def chi_f(w, nu, eps):
    if eps is None:
        l = int(nu.real + 0.5)
        lg = sp.loggamma(l + 0.5 - w) - sp.loggamma(l - 0.5 + w) + (2 * w - 1) * math.log(2 * math.pi)
        return (-1) ** l * np.exp(lg)
    lg = (
        sp.loggamma(1 - w + nu)
        + sp.loggamma(1 - w - nu)
        + (2 * w - 1) * math.log(2.0)
        + (2 * w - 2) * math.log(math.pi)
    )
    return np.exp(lg) * (eps * np.cos(math.pi * nu) - np.cos(math.pi * w))


GLX, GLW = np.polynomial.legendre.leggauss(12)


def afe_float(t, nu, eps, s, X=None):
    t = np.asarray(t, dtype=float)
    N = len(t)
    n = np.arange(1, N + 1)
    logn = np.log(n)
    if X is None:
        X = min(2 * max(1.0, abs(nu)), N / 3.7)
    lead = np.sum(t * np.exp(-s * logn) * np.exp(-((n / X) ** 2)))
    pole = -(X**-2) * chi_f(s - 2, nu, eps) * np.sum(t * np.exp(-(3 - s) * logn))
    vmax = 50 + 1.3 * abs(nu.imag)
    edges = np.linspace(-vmax, vmax, int(2 * vmax / 0.5) + 1)
    v = (0.5 * (edges[:-1] + edges[1:])[:, None] + 0.5 * np.diff(edges)[:, None] * GLX[None, :]).ravel()
    w = (0.5 * np.diff(edges)[:, None] * GLW[None, :]).ravel()
    z = (-2.7 - s.real) + 1j * v
    kern = 0.5 * np.exp(sp.loggamma(z / 2) + z * math.log(X)) * chi_f(s + z, nu, eps)
    refl = np.exp(np.outer(z, logn) + (s - 1) * logn[None, :]) @ t
    return lead - pole - np.sum(w * kern * refl) / (2 * math.pi)


# --- weight-12 eigenvalues from the q-expansion ------------------------------
e = [0] * (DEPTH + 2)
k = 0
while k * (3 * k - 1) // 2 <= DEPTH + 1:
    for kk in (k, -k) if k else (0,):
        ex = kk * (3 * kk - 1) // 2
        if ex <= DEPTH + 1:
            e[ex] += (-1) ** (kk % 2)
    k += 1


def pmul(a, b, n):
    r = [0] * (n + 1)
    for i, ai in enumerate(a):
        if ai:
            for j in range(0, n + 1 - i):
                if b[j]:
                    r[i + j] += ai * b[j]
    return r


e1 = e[: DEPTH + 1]
e2 = pmul(e1, e1, DEPTH)
e8 = pmul(pmul(e2, e2, DEPTH), pmul(e2, e2, DEPTH), DEPTH)
tau = pmul(pmul(e8, e8, DEPTH), e8, DEPTH)
assert tau[:3] == [1, -24, 252]
t12 = [mp.mpf(tau[n - 1]) / mp.power(n, mp.mpf(11) / 2) for n in range(1, DEPTH + 1)]
t12_f = [float(x) for x in t12]
print("t12(2) =", mp.nstr(t12[1], 17))

nu12 = mp.mpf(11) / 2
X12 = min(11.0, DEPTH / 3.7)
for s_mp, s_f, tag in [
    (mp.mpf("0.5"), 0.5 + 0j, "1/2"),
    (mp.mpf("0.6"), 0.6 + 0j, "0.6"),
    (mp.mpf("0.6") + mp.mpf("0.4") * 1j, 0.6 + 0.4j, "0.6+0.4i"),
]:
    ref = afe_ref(t12, nu12, None, s_mp, mp.mpf(X12))
    flt = afe_float(t12_f, 5.5 + 0j, None, s_f, X12)
    print(f"H_12({tag}): ref = {mp.nstr(ref, 17)}   float dev = {abs(complex(ref) - flt):.2e}")

row12 = [r for r in snap["holomorphic"] if r["ell"] == 6][0]
ref_half = afe_ref(t12, nu12, None, mp.mpf("0.5"), mp.mpf(X12))
print("snapshot central (ell=6) dev:", mp.nstr(abs(ref_half - row12["central_value"]), 3))
print("snapshot t(2) dev:", abs(row12["hecke"][1] - t12_f[1]))

# --- survey over the snapshot ------------------------------------------------
worst_even = worst_odd = worst_fe = worst_holo = 0.0
for row in snap["maass"]:
    kap, epsv, t = row["kappa"], row["epsilon"], row["hecke"]
    h = afe_float(t, 1j * kap, epsv, 0.5 + 0j)
    if epsv == 1:
        worst_even = max(worst_even, abs(h - row["central_value"]))
    else:
        worst_odd = max(worst_odd, abs(h))
for row in snap["maass"][:5]:
    kap, epsv, t = row["kappa"], row["epsilon"], row["hecke"]
    s2 = 0.5 + 0.2j
    lhs = afe_float(t, 1j * kap, epsv, s2)
    rhs = chi_f(s2, 1j * kap, epsv) * afe_float(t, 1j * kap, epsv, 1 - s2)
    worst_fe = max(worst_fe, abs(lhs - rhs))
for row in snap["holomorphic"]:
    h = afe_float(row["hecke"], row["ell"] - 0.5 + 0j, None, 0.5 + 0j)
    worst_holo = max(worst_holo, abs(h - row["central_value"]))
print(f"worst even-Maass central dev : {worst_even:.2e}")
print(f"worst odd-Maass |H(1/2)|     : {worst_odd:.2e}")
print(f"worst FE residual, first 5   : {worst_fe:.2e}")
print(f"worst holomorphic central dev: {worst_holo:.2e}")

S = lambda N: sum(r["alpha"] for r in snap["maass"] if r["kappa"] <= N) / 4
for N in (15, 20):
    print(f"S(2N)/S(N) at N={N}: {S(2 * N) / S(N):.4f}")

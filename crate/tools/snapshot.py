"""Assemble the bundled spectral snapshot from the generator outputs.

Merges the Maass rows (both parities) and the holomorphic rows into a
single self-describing JSON document with flat Hecke eigenvalue lists
t(1)..t(N), expanded from the stored prime values by multiplicativity
and the level-1 recursion t(p^{k+1}) = t(p)t(p^k) - t(p^{k-1}).

Every row is re-validated before it is written: t(1) = 1, pairwise
multiplicativity, the soft Ramanujan bound |t(n)| <= 2 d(n) n^{0.26},
and eigenvalue ordering without near-duplicates.
"""

import datetime
import json
import math
import sys

DEPTH = 290


def sieve_factor(n):
    f = {}
    m = n
    p = 2
    while p * p <= m:
        while m % p == 0:
            f[p] = f.get(p, 0) + 1
            m //= p
        p += 1
    if m > 1:
        f[m] = f.get(m, 0) + 1
    return f


def expand_hecke(tprimes, depth):
    """t(n) for n = 1..depth from prime eigenvalues."""
    t = [0.0] * (depth + 1)
    t[1] = 1.0
    for n in range(2, depth + 1):
        fac = sieve_factor(n)
        val = 1.0
        for p, k in fac.items():
            tp = tprimes[p]
            # t(p^k) by the recursion
            a, b = 1.0, tp
            for _ in range(k - 1):
                a, b = b, tp * b - a
            val *= b
        t[n] = val
    return t[1:]


def divisors_count(n):
    c = 1
    for _, k in sieve_factor(n).items():
        c *= k + 1
    return c


def validate(t, depth, tag, tol):
    assert t[0] == 1.0, f"{tag}: t(1) != 1"
    worst = 0.0
    for m in range(2, 18):
        for n in range(2, depth // m + 1):
            g = math.gcd(m, n)
            acc = 0.0
            d = 1
            while d * d <= g:
                if g % d == 0:
                    acc += t[m * n // (d * d) - 1]
                    if d * d != g and (m * n) % ((g // d) ** 2) == 0:
                        acc += t[m * n // ((g // d) ** 2) - 1]
                d += 1
            worst = max(worst, abs(t[m - 1] * t[n - 1] - acc))
    assert worst < max(tol * 100, 1e-8), f"{tag}: multiplicativity dev {worst}"
    for n in range(1, depth + 1):
        bound = 2.0 * divisors_count(n) * n**0.26
        assert abs(t[n - 1]) <= bound, f"{tag}: |t({n})| = {abs(t[n-1])} > {bound}"
    return worst


def main(out_path):
    with open("data/maass_odd.json") as fh:
        odd = json.load(fh)
    with open("data/maass_even.json") as fh:
        even = json.load(fh)
    with open("data/holo.json") as fh:
        holo = json.load(fh)

    maass = []
    for row in odd + even:
        tprimes = {int(p): v for p, v in row["hecke_primes"].items()}
        t = expand_hecke(tprimes, DEPTH)
        dev = validate(t, DEPTH, f"kappa={row['kappa']}", row["source_precision"])
        eps = 1 if row["parity"] == "even" else -1
        maass.append(
            {
                "kappa": row["kappa"],
                "epsilon": eps,
                "hecke": t,
                "alpha": row["alpha"],
                "central_value": 0.0 if eps < 0 else row["central_value"],
                "source_precision": max(row["source_precision"], dev),
            }
        )
    maass.sort(key=lambda r: r["kappa"])
    for a, b in zip(maass, maass[1:]):
        assert b["kappa"] - a["kappa"] > 1e-9, "duplicate kappa"

    holos = []
    for row in holo:
        tprimes = {int(p): v for p, v in row["hecke_primes"].items()}
        t = expand_hecke(tprimes, DEPTH)
        dev = validate(t, DEPTH, f"ell={row['ell']}", row["source_precision"])
        if row["ell"] % 2 == 1:
            assert abs(row["central_value"]) <= 1e-8, "odd ell needs H(1/2) = 0"
        holos.append(
            {
                "ell": row["ell"],
                "hecke": t,
                "alpha": row["alpha"],
                "central_value": row["central_value"],
                "source_precision": max(row["source_precision"], dev),
            }
        )
    holos.sort(key=lambda r: r["ell"])

    doc = {
        "schema_version": 1,
        "metadata": {
            "source": "bundled-local-generators",
            "retrieved": datetime.date.today().isoformat(),
            "hecke_depth": DEPTH,
            "kappa_max": maass[-1]["kappa"],
        },
        "maass": maass,
        "holomorphic": holos,
    }
    with open(out_path, "w") as fh:
        json.dump(doc, fh)
    print(
        f"{len(maass)} maass + {len(holos)} holomorphic rows, "
        f"kappa_max={doc['metadata']['kappa_max']:.6f} -> {out_path}"
    )


if __name__ == "__main__":
    main(sys.argv[1] if len(sys.argv) > 1 else "data/snapshot.json")

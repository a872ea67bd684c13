#!/usr/bin/env python3
"""Independent high-precision reference values for the C++ test suites.

Everything here is computed with mpmath at 40 significant digits, directly
from the explicit Bergman kernel of E_{p,lambda} in nu = (|x|^2, |y|^2, |z|^2).
Derivatives in nu come from mpmath.diff; Wirtinger derivatives follow from

    d^a dbar^b F(z zbar) = sum_k k! C(a,k) C(b,k) zbar^(a-k) z^(b-k) F^(a+b-k)(nu).

None of the C++ code paths (finite-difference stencils, Richardson tables,
closed-form metric) is used here.  Output: tests/golden/oracle_values.json.
"""
import itertools
import json
import math
import pathlib

import mpmath as mp

mp.mp.dps = 40


def log_kernel(n1, n2, n3, p, lam):
    a = 1 - n3
    b = a**lam - n2
    c = b ** (1 / p) - n1
    num = (a ** (2 * lam) * b ** (1 / p - 3) * n1**2 * (p - 1) * (lam * (p - 1) + p)
           + a**lam * b ** (1 / p - 3) * n1**2 * (p - 1) * (lam - 1) * n2 * p
           + a**lam * b ** (3 / p - 3) * (p + 1) * (a**lam * (lam + lam * p + p) + (lam - 1) * n2 * p)
           - a**lam * b ** (2 / p - 3) * 2 * n1 * (a**lam * (lam * (p**2 - 2) + p**2) + (lam - 1) * n2 * p**2))
    den = a**2 * c**4
    return mp.log(num / (mp.pi**3 * p**2 * den))


def wirtinger(p, lam, zs, alpha, beta):
    nu = tuple(abs(z) ** 2 for z in zs)
    f = lambda u, v, w: log_kernel(u, v, w, p, lam)
    total = mp.mpc(0)
    for ks in itertools.product(*[range(min(alpha[i], beta[i]) + 1) for i in range(3)]):
        coef = mp.mpc(1)
        order = []
        for i in range(3):
            k = ks[i]
            coef *= (math.factorial(k) * math.comb(alpha[i], k) * math.comb(beta[i], k)
                     * mp.conj(zs[i]) ** (alpha[i] - k) * zs[i] ** (beta[i] - k))
            order.append(alpha[i] + beta[i] - k)
        if coef == 0:
            continue
        total += coef * mp.diff(f, nu, tuple(order))
    return total


def e(i):
    return tuple(1 if j == i else 0 for j in range(3))


def add(*vs):
    return tuple(sum(x) for x in zip(*vs))


def u_constants(p, lam):
    return ((p - 1) * (lam * (p - 1) + p), p * (p - 1) * (lam - 1), (p + 1) * (lam + lam * p + p),
            p * (p + 1) * (lam - 1), -2 * (lam * (p**2 - 2) + p**2), -2 * (lam - 1) * p**2)


def jet(p, lam, zs):
    out = {}
    for al in itertools.product(range(3), repeat=3):
        for be in itertools.product(range(3), repeat=3):
            if 1 <= sum(al) <= 2 and 1 <= sum(be) <= 2:
                out[(al, be)] = wirtinger(p, lam, zs, al, be)
    return out


def tensor(p, lam, zs):
    J = jet(p, lam, zs)
    g = mp.matrix(3, 3)
    for i in range(3):
        for j in range(3):
            g[i, j] = J[(e(i), e(j))]
    gi = g**-1
    R = {}
    for i, j, k, l in itertools.product(range(3), repeat=4):
        s = -J[(add(e(k), e(i)), add(e(l), e(j)))]
        for P in range(3):
            for Q in range(3):
                s += gi[P, Q] * J[(add(e(k), e(i)), e(P))] * J[(e(Q), add(e(l), e(j)))]
        R[(i, j, k, l)] = s
    return g, gi, R, J


def ricci(g, gi, R):
    ric = mp.matrix(3, 3)
    for k in range(3):
        for l in range(3):
            ric[k, l] = sum(gi[j, i] * R[(i, j, k, l)] for i in range(3) for j in range(3))
    return ric


def slice_factors(p, lam, y, z):
    zs = (mp.mpc(0), mp.mpc(y), mp.mpc(z))
    g, gi, R, J = tensor(p, lam, zs)
    a = 1 - z * z
    b = a**lam - y * y
    c = b ** (1 / p)
    d = y * y / a**lam
    u1, u2, u3, u4, u5, u6 = u_constants(p, lam)
    A1 = (u5 + u6 * d) / (u3 + u4 * d) + 4
    A2 = 1 / p + 3 + u3 * u4 * (1 - d) ** 2 / (u3 + u4 * d) ** 2
    A3 = ((1 + d * (lam * z * z - 1)) * lam / p + d * d * (2 - 2 * lam) + d * (2 * lam**2 * z * z - 4) + lam + 2
          + lam * d * (u3 * u4 * (1 + d * d) * (1 + lam * z * z) + u4**2 * d * (1 + (lam * z * z - 1) * d + d * d)
                       + u3**2 * (1 + lam * z * z)) / (u3 + u4 * d) ** 2)
    A4 = (A3 - lam**2 * d * z * z * A2) / (1 - d)
    dg = lambda k, i, j: mp.re(J[(add(e(k), e(i)), e(j))])
    ddg = lambda k, l, i, j: mp.re(J[(add(e(k), e(i)), add(e(l), e(j)))])
    G = [None,
         dg(1, 0, 0) * b * c / y,
         dg(2, 0, 0) * a ** (1 - lam) * b * c / z,
         dg(1, 1, 1) * b**3 / (y * a**lam),
         dg(1, 1, 2) * a ** (1 - lam) * b**3 / (y * y * z),
         dg(1, 2, 1) * a ** (1 - lam) * b**3 / (y * y * z),
         dg(1, 2, 2) * a ** (2 - 2 * lam) * b**3 / (y * z * z),
         dg(2, 2, 1) * a ** (2 - 2 * lam) * b**3 / (y * z * z),
         dg(2, 2, 2) * a ** (3 - 3 * lam) * b**3 / z]
    H = [None,
         ddg(0, 0, 0, 0) * c * c,
         ddg(0, 0, 1, 1) * b * b * c / a**lam,
         ddg(0, 0, 1, 2) * a ** (1 - lam) * b * b * c / (y * z),
         ddg(0, 0, 2, 2) * a ** (2 - 2 * lam) * b * b * c,
         ddg(1, 1, 1, 1) * b**4 / a ** (2 * lam),
         ddg(1, 1, 1, 2) * a ** (1 - 2 * lam) * b**4 / (y * z),
         ddg(1, 1, 2, 2) * a ** (2 - 3 * lam) * b**4,
         ddg(1, 2, 1, 2) * a ** (2 - 2 * lam) * b**4 / (y * y * z * z),
         ddg(1, 2, 2, 2) * a ** (3 - 3 * lam) * b**4 / (y * z),
         ddg(2, 2, 2, 2) * a ** (4 - 4 * lam) * b**4]
    # Orthonormal frame at a slice point: X = k1 d1, Y = t2 d2, Z = s2 d2 + s3 d3.
    k1 = 1 / mp.sqrt(mp.re(g[0, 0]))
    t2 = 1 / mp.sqrt(mp.re(g[1, 1]))
    p2 = -t2 * t2 * mp.re(g[2, 1]) / mp.sqrt(mp.re(g[2, 2]))
    p3 = 1 / mp.sqrt(mp.re(g[2, 2]))
    nz = mp.sqrt(p2 * p2 * g[1, 1] + 2 * p2 * p3 * g[1, 2] + p3 * p3 * g[2, 2])
    X = [k1, 0, 0]
    Y = [0, t2, 0]
    Z = [0, p2 / nz, p3 / nz]

    def contract(u, v, w, x):
        return mp.re(sum(u[i] * v[j] * w[k] * x[l] * R[(i, j, k, l)]
                         for i, j, k, l in itertools.product(range(3), repeat=4)))

    hsc = {"HX": contract(X, X, X, X), "HY": contract(Y, Y, Y, Y), "HZ": contract(Z, Z, Z, Z),
           "BXY": contract(X, X, Y, Y), "BXZ": contract(X, X, Z, Z), "BYZ": contract(Y, Y, Z, Z)}
    return {"G": [float(v) for v in G[1:]], "H": [float(v) for v in H[1:]],
            "A": [float(A1), float(A2), float(A3), float(A4)], "delta": float(d),
            "hsc": {k: float(v) for k, v in hsc.items()}}


def ke_residual(p, lam, points):
    mats = []
    for y, z in points:
        zs = (mp.mpc(0), mp.mpc(y), mp.mpc(z))
        g, gi, R, _ = tensor(p, lam, zs)
        ric = ricci(g, gi, R)
        scale = mp.sqrt(sum(abs(g[i, j]) ** 2 for i in range(3) for j in range(3)))
        mats.append((g / scale, ric / scale))
    num = sum(mp.re(mp.conj(gn[i, j]) * rn[i, j]) for gn, rn in mats for i in range(3) for j in range(3))
    den = sum(abs(gn[i, j]) ** 2 for gn, _ in mats for i in range(3) for j in range(3))
    c = num / den
    res = max(abs(rn[i, j] - c * gn[i, j]) for gn, rn in mats for i in range(3) for j in range(3))
    return float(c), float(res)


def heat(n, b, t, r):
    return ((2 * mp.pi * t) ** (-n) * mp.exp(-r * r / (2 * t) - (2 * n - 1) ** 2 * b * b * t / 8 - (2 * n - 1) * b * r / 2)
            * (1 + b * r + b * b * t / 2) ** (mp.mpf(2 * n - 1) / 2 - 1) * (1 + b * r))


def phi_reduction(R):
    f = lambda r: -r * (1 - r * r) ** 2 * max(mp.log(r), mp.log(R))
    return mp.quad(f, [0, R, 1])


def main():
    out = {"comment": "generated by tests/oracles/generate_golden.py (mpmath, 40 digits)"}

    jets = []
    cases = [(2, mp.mpf(1) / 2, (mp.mpc(0), mp.mpc("0.3"), mp.mpc("0.4"))),
             (mp.mpf("0.5"), 3, (mp.mpc("0.05", "0.02"), mp.mpc("0.2", "-0.1"), mp.mpc("0.1", "0.3"))),
             (mp.mpf("0.2"), 1, (mp.mpc(0), mp.mpc("0.5"), mp.mpc("0.2")))]
    for p, lam, zs in cases:
        entries = []
        for al in itertools.product(range(5), repeat=3):
            for be in itertools.product(range(5), repeat=3):
                if 1 <= sum(al) + sum(be) <= 4 and sum(al) <= 2 and sum(be) <= 2:
                    v = wirtinger(p, lam, zs, al, be)
                    entries.append({"holo": list(al), "anti": list(be), "re": float(mp.re(v)), "im": float(mp.im(v))})
        jets.append({"p": float(p), "lambda": float(lam),
                     "point": [[float(mp.re(z)), float(mp.im(z))] for z in zs], "entries": entries})
    out["jets"] = jets

    factor_cases = []
    for p, lam, y, z in [(2, mp.mpf("0.5"), mp.mpf("0.3"), mp.mpf("0.4")),
                         (mp.mpf("0.2"), 1, mp.mpf("0.45"), mp.mpf("0.35")),
                         (5, 2, mp.mpf("0.25"), mp.mpf("0.55")),
                         (mp.mpf("0.5"), 5, mp.mpf("0.15"), mp.mpf("0.25"))]:
        rec = slice_factors(mp.mpf(p), mp.mpf(lam), y, z)
        rec.update({"p": float(p), "lambda": float(lam), "y": float(y), "z": float(z)})
        factor_cases.append(rec)
    out["factors"] = factor_cases

    ke_points = [(mp.mpf("0.1"), mp.mpf("0.1")), (mp.mpf("0.2"), mp.mpf("0.5")), (mp.mpf("0.5"), mp.mpf("0.2")),
                 (mp.mpf("0.4"), mp.mpf("0.4")), (mp.mpf("0.3"), mp.mpf("0.7"))]
    ke = []
    for p, lam in [(1, 1), (2, 1), (1, 2)]:
        c, res = ke_residual(mp.mpf(p), mp.mpf(lam), ke_points)
        ke.append({"p": p, "lambda": lam, "c_best": c, "residual": res,
                   # pre-registered threshold: half of the oracle residual
                   "threshold": res / 2 if (p, lam) != (1, 1) else None})
    out["ke"] = {"points": [[float(y), float(z)] for y, z in ke_points], "cases": ke}

    out["heat"] = [{"n": n, "b": float(b), "t": float(t), "r": float(r), "value": float(heat(n, mp.mpf(b), mp.mpf(t), mp.mpf(r)))}
                   for n, b, t, r in [(1, 1, 1, 1), (2, mp.mpf("0.5"), 2, 3), (3, 2, mp.mpf("0.25"), 0)]]
    out["phi"] = [{"R": float(R), "value": float(phi_reduction(mp.mpf(R)))} for R in ["0.1", "0.5", "0.75", "0.9"]]

    path = pathlib.Path(__file__).resolve().parent.parent / "golden" / "oracle_values.json"
    path.write_text(json.dumps(out, indent=1) + "\n")
    print("wrote", path)
    for k in ke:
        print("ke", k)


if __name__ == "__main__":
    main()

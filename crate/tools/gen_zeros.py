#!/usr/bin/env python3
"""Generate a table of Riemann zeta zero ordinates, one per line.

The first HEAD zeros come straight from mpmath.zetazero. Beyond that, sign
changes of the Riemann-Siegel Z function are located on a fine grid using the
Riemann-Siegel formula with the C0..C2 correction terms (vectorized in numpy),
then refined by bisection/secant on the same formula. A sample of indices is
cross-checked against mpmath.zetazero at the end.

usage: gen_zeros.py COUNT OUT [--head H | --head-file F] [--check K]
"""
import argparse
import math
import sys

import mpmath
import numpy as np
from scipy.interpolate import CubicSpline

TWO_PI = 2.0 * math.pi


def correction_tables(points=4001):
    mpmath.mp.dps = 40

    def psi(p):
        return mpmath.cos(2 * mpmath.pi * (p * p - p - mpmath.mpf(1) / 16)) / mpmath.cos(2 * mpmath.pi * p)

    ps = np.linspace(0.0, 1.0, points)
    c0 = np.empty(points)
    c1 = np.empty(points)
    c2 = np.empty(points)
    pi = mpmath.pi
    for i, p in enumerate(ps):
        pm = mpmath.mpf(p)
        # removable singularities at 1/4 and 3/4: nudge off them
        if abs(pm - mpmath.mpf(1) / 4) < 1e-12 or abs(pm - mpmath.mpf(3) / 4) < 1e-12:
            pm += mpmath.mpf(10) ** -20
        d = mpmath.taylor(psi, pm, 6)
        fact = [mpmath.factorial(k) for k in range(7)]
        der = [d[k] * fact[k] for k in range(7)]
        c0[i] = float(der[0])
        c1[i] = float(-der[3] / (96 * pi**2))
        c2[i] = float(der[2] / (64 * pi**2) + der[6] / (18432 * pi**4))
    mpmath.mp.dps = 15
    return CubicSpline(ps, c0), CubicSpline(ps, c1), CubicSpline(ps, c2)


def theta(t):
    return (t / 2.0) * np.log(t / TWO_PI) - t / 2.0 - math.pi / 8.0 + 1.0 / (48.0 * t) + 7.0 / (5760.0 * t**3)


class RiemannSiegel:
    def __init__(self):
        self.c0, self.c1, self.c2 = correction_tables()

    def z(self, t):
        t = np.asarray(t, dtype=np.float64)
        out = np.empty_like(t)
        chunk = 20000
        for s in range(0, t.size, chunk):
            out.flat[s:s + chunk] = self._z(t.flat[s:s + chunk])
        return out

    def _z(self, t):
        a = np.sqrt(t / TWO_PI)
        n_max = np.floor(a).astype(np.int64)
        p = a - n_max
        th = theta(t)
        top = int(n_max.max())
        n = np.arange(1, top + 1, dtype=np.float64)
        mask = n[None, :] <= n_max[:, None]
        terms = np.cos(th[:, None] - t[:, None] * np.log(n)[None, :]) / np.sqrt(n)[None, :]
        main = 2.0 * np.sum(np.where(mask, terms, 0.0), axis=1)
        u = np.sqrt(TWO_PI / t)
        sign = np.where(n_max % 2 == 1, 1.0, -1.0)
        rem = sign * np.sqrt(u) * (self.c0(p) + self.c1(p) * u + self.c2(p) * u * u)
        return main + rem


def refine(rs, lo, hi, zlo, zhi, iters=60):
    lo = lo.copy(); hi = hi.copy(); zlo = zlo.copy(); zhi = zhi.copy()
    for _ in range(iters):
        # Illinois-free safeguarded secant: take secant point, fall back to bisection
        mid = lo - zlo * (hi - lo) / (zhi - zlo)
        bad = ~np.isfinite(mid) | (mid <= lo) | (mid >= hi)
        mid = np.where(bad, 0.5 * (lo + hi), mid)
        # alternate with bisection to guarantee shrinkage
        if _ % 2 == 1:
            mid = 0.5 * (lo + hi)
        zm = rs.z(mid)
        left = np.sign(zm) == np.sign(zlo)
        lo = np.where(left, mid, lo); zlo = np.where(left, zm, zlo)
        hi = np.where(left, hi, mid); zhi = np.where(left, zhi, zm)
        if np.max(hi - lo) < 1e-11:
            break
    return lo - zlo * (hi - lo) / (zhi - zlo)


def scan(rs, start, stop, step):
    roots = []
    block = 200000
    x0 = start
    while x0 < stop:
        x1 = min(stop, x0 + block * step)
        grid = np.arange(x0, x1 + step / 2, step)
        zs = rs.z(grid)
        # plain sign changes
        idx = np.nonzero(np.sign(zs[:-1]) != np.sign(zs[1:]))[0]
        lo, hi, zlo, zhi = grid[idx], grid[idx + 1], zs[idx], zs[idx + 1]
        # |Z| local minima without a sign change may hide a close pair
        az = np.abs(zs)
        cand = np.nonzero((az[1:-1] < az[:-2]) & (az[1:-1] < az[2:]) & (np.sign(zs[:-2]) == np.sign(zs[2:]))
                          & (np.sign(zs[1:-1]) == np.sign(zs[:-2])) & (az[1:-1] < 0.05))[0] + 1
        extra_lo, extra_hi = [], []
        for c in cand:
            fine = np.linspace(grid[c - 1], grid[c + 1], 2001)
            zf = rs.z(fine)
            ch = np.nonzero(np.sign(zf[:-1]) != np.sign(zf[1:]))[0]
            for k in ch:
                extra_lo.append(fine[k]); extra_hi.append(fine[k + 1])
        if extra_lo:
            elo = np.array(extra_lo); ehi = np.array(extra_hi)
            lo = np.concatenate([lo, elo]); hi = np.concatenate([hi, ehi])
            zlo = np.concatenate([zlo, rs.z(elo)]); zhi = np.concatenate([zhi, rs.z(ehi)])
            print(f"  close pair(s) near {elo}", file=sys.stderr)
        roots.append(refine(rs, lo, hi, zlo, zhi))
        x0 = x1
        print(f"  scanned to {x1:.1f}", file=sys.stderr)
    r = np.sort(np.concatenate(roots))
    return r


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("count", type=int)
    ap.add_argument("out")
    ap.add_argument("--head", type=int, default=2000)
    ap.add_argument("--check", type=int, default=60)
    ap.add_argument("--step", type=float, default=0.02)
    ap.add_argument("--head-file", help="reuse an existing table for the head zeros")
    args = ap.parse_args()

    mpmath.mp.dps = 25
    if args.head_file:
        with open(args.head_file) as f:
            head = [float(line) for line in f if line.strip()]
        head_n = min(len(head), args.count)
        start = head[head_n - 1] + 1e-3
    else:
        head_n = min(args.head, args.count)
        head = [float(mpmath.im(mpmath.zetazero(n))) for n in range(1, head_n + 2)]
        start = 0.5 * (head[head_n - 1] + head[head_n]) if len(head) > head_n else None
    print(f"head: {head_n} zeros", file=sys.stderr)
    zeros = head[:head_n]
    if args.count > head_n:
        rs = RiemannSiegel()
        # overshoot so the last requested zero is inside the scan
        need = args.count
        stop = start + 10.0
        while True:
            T = stop
            est = T / TWO_PI * (math.log(T / TWO_PI) - 1) + 7.0 / 8.0
            if est > need + 50:
                break
            stop *= 1.01
        tail = scan(rs, start, stop, args.step)
        zeros = zeros + list(tail[: need - head_n])
    zeros = np.array(zeros[: args.count])
    assert np.all(np.diff(zeros) > 0)

    mpmath.mp.dps = 20
    rng = np.random.default_rng(12345)
    idxs = sorted(set([args.count] + list(rng.integers(head_n + 1, args.count + 1, size=args.check)))) if args.count > head_n else []
    worst = 0.0
    for i in idxs:
        ref = float(mpmath.im(mpmath.zetazero(int(i))))
        err = abs(ref - zeros[i - 1])
        worst = max(worst, err)
        if err > 1e-6:
            print(f"MISMATCH at index {i}: {zeros[i-1]} vs {ref}", file=sys.stderr)
            sys.exit(1)
    print(f"checked {len(idxs)} indices against mpmath, worst abs err {worst:.3e}", file=sys.stderr)

    with open(args.out, "w") as f:
        for z in zeros:
            f.write(f"{z:.9f}\n")


if __name__ == "__main__":
    main()

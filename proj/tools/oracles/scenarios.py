# Copyright 2026 The ghk-lab Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Brute-force oracles for the scenario thresholds.

The skew system is T(x1, x2) = (x1 + a, x2 + 2 x1 + a). A character
chi_(k1, k2) pulls back to e((k1 n + k2 n^2) a) chi_(k1 + 2 n k2, k2) under
T^n; products of characters stay characters, so every average below is a
vectorized sum over a parameter grid, grouped by frequency at the end.

Usage: python3 scenarios.py <check>   (prints one JSON object)
"""

import json
import math
import sys
from fractions import Fraction
from itertools import product

import numpy as np

from common import ALPHA, SCALE, SplitMix64

A = math.sqrt(2) - 1
B = math.sqrt(3) - 1


def e(t):
    return np.exp(2j * np.pi * np.mod(t, 1.0))


# --- skew-system characters over a grid ------------------------------------


class Char:
    """Arrays k1, k2, phase over a common grid: e(phase) chi_(k1, k2)."""

    def __init__(self, k1, k2, phase):
        self.k1, self.k2, self.phase = k1, k2, phase

    @staticmethod
    def const(k1, k2, shape):
        z = np.zeros(shape, dtype=np.int64)
        return Char(z + k1, z + k2, np.zeros(shape))

    def iterate(self, n):
        return Char(self.k1 + 2 * n * self.k2, self.k2, self.phase + (self.k1 * n + self.k2 * n * n) * A)

    def conj(self):
        return Char(-self.k1, -self.k2, -self.phase)

    def __mul__(self, o):
        return Char(self.k1 + o.k1, self.k2 + o.k2, self.phase + o.phase)


def average(c):
    """Grid average as a dict frequency -> amplitude."""
    keys = np.stack([c.k1.ravel(), c.k2.ravel()], axis=1)
    uniq, inv = np.unique(keys, axis=0, return_inverse=True)
    vals = e(c.phase.ravel())
    re = np.bincount(inv.ravel(), weights=vals.real, minlength=len(uniq))
    im = np.bincount(inv.ravel(), weights=vals.imag, minlength=len(uniq))
    n = keys.shape[0]
    return {tuple(int(x) for x in k): complex(r / n, i / n) for k, r, i in zip(uniq, re, im)}


def l2_gap(avg, exact):
    keys = set(avg) | set(exact)
    return math.sqrt(sum(abs(avg.get(k, 0) - exact.get(k, 0)) ** 2 for k in keys))


def grid(H, s):
    axes = np.meshgrid(*[np.arange(1, H + 1, dtype=np.int64)] * s, indexing="ij")
    return [a.ravel() for a in axes]


def derivative(k, hs):
    shape = hs[0].shape if hs else (1,)
    f = Char.const(k[0], k[1], shape)
    for h in hs:
        f = f * f.iterate(h).conj()
    return f


def seminorm_power(k, s, H):
    hs = grid(H, s)
    d = derivative(k, hs)
    mask = (d.k1 == 0) & (d.k2 == 0)
    return complex(np.sum(e(d.phase) * mask) / d.phase.size)


def dual(k, s, M):
    ms = grid(M, s)
    out = None
    for eps in range(1, 1 << s):
        n = sum(ms[j] for j in range(s) if eps >> j & 1)
        g = Char.const(k[0], k[1], ms[0].shape).iterate(n)
        if bin(eps).count("1") % 2:
            g = g.conj()
        out = g if out is None else out * g
    return average(out)


def multiple_average(ks, seqs, N):
    n = np.arange(1, N + 1, dtype=np.int64)
    out = Char.const(0, 0, n.shape)
    for k, coeffs in zip(ks, seqs):
        a = sum(c * n**i for i, c in enumerate(coeffs))
        out = out * Char.const(k[0], k[1], n.shape).iterate(a)
    return average(out)


# (kind, frequencies, degree or sequences, closed form)
BATTERY = {
    "seminorm_x1_s1": ("seminorm", (1, 0), 1, 0.0),
    "seminorm_x1_s2": ("seminorm", (1, 0), 2, 1.0),
    "seminorm_x1_s3": ("seminorm", (1, 0), 3, 1.0),
    "seminorm_x2_s1": ("seminorm", (0, 1), 1, 0.0),
    "seminorm_x2_s2": ("seminorm", (0, 1), 2, 0.0),
    "seminorm_2x2_s2": ("seminorm", (0, 2), 2, 0.0),
    "seminorm_x1x2_s2": ("seminorm", (1, 1), 2, 0.0),
    "dual_x1_s1": ("dual", (1, 0), 1, {}),
    "dual_x1_s2": ("dual", (1, 0), 2, {(-1, 0): 1}),
    "dual_x2_s2": ("dual", (0, 1), 2, {}),
    "dual_x2_s3": ("dual", (0, 1), 3, {(0, -1): 1}),
    "average_x1_x1bar_n_n": ("average", [(1, 0), (-1, 0)], [[0, 1], [0, 1]], {(0, 0): 1}),
    "average_x1_x1bar_n_2n": ("average", [(1, 0), (-1, 0)], [[0, 1], [0, 2]], {}),
    "average_x1_x1_n_2n": ("average", [(1, 0), (1, 0)], [[0, 1], [0, 2]], {}),
    "average_2x1_n": ("average", [(2, 0)], [[0, 1]], {}),
    "average_x1_x1bar_2n_3n": ("average", [(1, 0), (-1, 0)], [[0, 2], [0, 3]], {}),
}


def closed_form_string(exact):
    """The library's serialization of a closed form: a power, or a character sum."""
    if not isinstance(exact, dict):
        return str(int(exact)) if float(exact).is_integer() else str(exact)
    terms = [f"({amp})*chi({k1},{k2})" for (k1, k2), amp in sorted(exact.items()) if amp]
    return " + ".join(terms) or "0"


def consistency(name, H=128):
    kind, k, arg, exact = BATTERY[name]
    if kind == "seminorm":
        value = seminorm_power(k, arg, H)
        gap = abs(value - exact)
    else:
        avg = dual(k, arg, H) if kind == "dual" else multiple_average(k, arg, H)
        gap = l2_gap(avg, exact)
    return {"symbolic": closed_form_string(exact), "gap": gap}


# --- removing low-complexity weights ------------------------------------------


def lower_lemma(s, H=128):
    hs = grid(H, s)
    if s == 2:
        h1, h2 = hs
        F = derivative((0, 1), hs)
        c1 = Char(h2, 0 * h2, B * h2 * h2)
        c2 = Char(h1, 0 * h1, B * h1)
        F = F * c1 * c2
    else:
        F = derivative((1, 0), hs) * Char.const(1, 0, hs[0].shape)
    return math.sqrt(sum(abs(v) ** 2 for v in average(F).values()))


# --- key estimate on Z_N --------------------------------------------------------


def unit(t):
    a = 2.0 * math.pi * (t - math.floor(t))
    return complex(math.cos(a), math.sin(a))


def key_estimate_truncated(N=32, H=32, seed=1):
    rng = SplitMix64(seed)
    f = np.array([unit(rng.uniform()) for _ in range(N)])
    f = f - f.mean()

    def T(g, n):
        return np.roll(g, -n)  # (T^n g)(x) = g(x + n)

    def dual2(g):
        acc = np.zeros(N, dtype=complex)
        for m1 in range(N):
            for m2 in range(N):
                acc += np.conj(T(g, m1)) * np.conj(T(g, m2)) * T(g, m1 + m2)
        return acc / (N * N)

    gs = {h: dual2(f * np.conj(T(f, h))) for h in range(1, H + 1)}
    total = 0.0
    for h in range(1, H + 1):
        for hp in range(1, H + 1):
            total += abs(np.mean(gs[h] * np.conj(gs[hp])))
    return total / (H * H)


# --- Weyl battery ----------------------------------------------------------------

BIVARIATE = [(1, 0), (0, 1), (1, 1), (2, 0), (0, 2), (2, 1), (1, 2), (3, 0), (0, 3)]
FIXED = {"alpha": ALPHA["sqrt(2) - 1"], "beta": ALPHA["sqrt(3) - 1"]}


def battery_phases(count=24, seed=1):
    """Same generator as the library: list of (constant, {(a, b): (rational, {symbol: coef})})."""
    rng = SplitMix64(seed)
    below = lambda n: rng.next() % n
    out = []
    for i in range(count):
        bivariate = i % 2 == 1
        const = Fraction(below(12), 12)
        terms = {}
        for _ in range(1 + below(3)):
            mono = BIVARIATE[below(9)] if bivariate else (1 + below(3), 0)
            q = 1 + below(6)
            rat = Fraction(below(q), q)
            irr = {}
            kind = below(8)
            if kind >= 6:
                a = 1 + below(3)
                b = 1 + below(3)
                irr["alpha" if kind == 6 else "beta"] = Fraction(a, b)
            r0, i0 = terms.get(mono, (Fraction(0), {}))
            merged = dict(i0)
            for k, v in irr.items():
                merged[k] = merged.get(k, 0) + v
            terms[mono] = (r0 + rat, {k: v for k, v in merged.items() if v})
        out.append((bivariate, const, terms))
    return out


def weyl_limit(bivariate, const, terms):
    live = {m: c for m, c in terms.items() if c[0] or c[1]}
    if any(irr for _, irr in live.values()):
        return 0j
    q = math.lcm(1, *(c[0].denominator for c in live.values()))
    dims = 2 if bivariate else 1
    total = 0j
    for v in product(range(q), repeat=dims):
        n, m = v[0], v[1] if dims == 2 else 0
        t = const + sum(c[0] * n**a * m**b for (a, b), c in live.items())
        total += unit(float(t % 1))
    return total / q**dims


def truncated(bivariate, const, terms, N):
    axes = np.meshgrid(*[np.arange(1, N + 1, dtype=np.int64)] * (2 if bivariate else 1), indexing="ij")
    n = axes[0].ravel()
    m = axes[1].ravel() if bivariate else np.zeros_like(n)
    phase = np.full(n.shape, float(const))
    for (a, b), (rat, irr) in terms.items():
        mono = n**a * m**b
        if rat:
            phase += ((rat.numerator * (mono % rat.denominator)) % rat.denominator) / rat.denominator
        for sym, c in irr.items():
            # {c sym mono} from a 64-bit binary expansion of c*sym, wrapping mod 2^64.
            bits = (c.numerator * FIXED[sym] * 2**64 // (c.denominator * SCALE)) % 2**64
            prod = mono.astype(np.uint64) * np.uint64(bits)
            phase += prod.astype(np.float64) / 2.0**64
    return complex(np.mean(e(phase)))


def weyl_battery(count=24, seed=1, N1=100_000, N2=1_000):
    gaps = []
    for bivariate, const, terms in battery_phases(count, seed):
        exact = weyl_limit(bivariate, const, terms)
        gaps.append(abs(exact - truncated(bivariate, const, terms, N2 if bivariate else N1)))
    return {"max_deviation": max(gaps), "deviations": gaps}


CHECKS = {
    "key_estimate_truncated": key_estimate_truncated,
    "lower_lemma_s1": lambda: lower_lemma(1),
    "lower_lemma_s2": lambda: lower_lemma(2),
    "weyl_battery": weyl_battery,
}
CHECKS.update({f"consistency_{name}": (lambda name=name: consistency(name)) for name in BATTERY})

if __name__ == "__main__":
    names = sys.argv[1:] or list(CHECKS)
    print(json.dumps({name: CHECKS[name]() for name in names}, indent=1))

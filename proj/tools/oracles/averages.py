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

"""Brute-force oracles for finite multiple averages on Z_N.

Functions are numpy arrays indexed by x in Z_N; (T^n f)(x) = f(x + n r).
Random functions follow the C++ random_bounded: rho = uniform(), then
theta = uniform(), value rho * e(theta).

Usage: python3 averages.py <check>   (prints one JSON object)
"""

import json
import math
import sys

import numpy as np

from common import SplitMix64


def e(t):
    t -= math.floor(t)
    a = 2.0 * math.pi * t
    return complex(math.cos(a), math.sin(a))


def random_bounded(size, rng):
    out = np.empty(size, dtype=complex)
    for i in range(size):
        rho = rng.uniform()
        out[i] = rho * e(rng.uniform())
    return out


def shift(f, n, r=1):
    N = len(f)
    return np.array([f[(x + n * r) % N] for x in range(N)])


def l2(f):
    return float(np.sqrt(np.mean(np.abs(f) ** 2)))


def cubic_z8():
    N = 8
    chi = np.array([e(x / N) for x in range(N)])
    acc = np.zeros(N, dtype=complex)
    for n1 in range(1, 9):
        for n2 in range(1, 9):
            acc += shift(chi, n1) * shift(chi, n2) * shift(chi, n1 + n2)
    return l2(acc / 64)


def square_distance(N_mod=16, seed=5, N=64):
    rng = SplitMix64(seed)
    f1, f2, f3 = (random_bounded(N_mod, rng) for _ in range(3))
    lhs = np.zeros(N_mod, dtype=complex)
    for n in range(1, N + 1):
        a, b = n, n * n
        lhs += shift(f1, a) * shift(f2, b) * shift(f3, a + b)
    lhs /= N
    rhs = np.zeros(N_mod, dtype=complex)
    for r in range(1, N + 1):
        for s in range(1, N + 1):
            rhs += shift(f1, r) * shift(f2, s) * shift(f3, r + s)
    rhs /= N * N
    return l2(lhs - rhs)


def recurrence_z12():
    N = 12
    A = {0, 1}
    total = 0.0
    for n in range(1, 13):
        total += sum(1 for x in range(N) if x in A and (x + n) % N in A) / N
    return total / 12


CHECKS = {
    "cubic_z8": cubic_z8,
    "square_distance": square_distance,
    "recurrence_z12": recurrence_z12,
}

if __name__ == "__main__":
    names = sys.argv[1:] or list(CHECKS)
    print(json.dumps({name: CHECKS[name]() for name in names}, indent=1))

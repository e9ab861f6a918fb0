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

"""Shared helpers for the brute-force oracles.

Irrationals are handled in decimal fixed point with PREC digits, built from
integer square roots, so {n^k alpha} is exact to far more digits than any
check needs. The generator is SplitMix64, bit-compatible with the C++ one.
"""

from math import isqrt

PREC = 80
SCALE = 10**PREC
MASK64 = (1 << 64) - 1


def sqrt_minus_one(k):
    """sqrt(k) - 1 in fixed point."""
    return isqrt(k * SCALE * SCALE) - SCALE


ALPHA = {"sqrt(2) - 1": sqrt_minus_one(2), "sqrt(3) - 1": sqrt_minus_one(3)}


def frac(m, a):
    """{m * a / SCALE} as a float."""
    return ((m * a) % SCALE) / SCALE


def frac_fixed(m, a):
    return (m * a) % SCALE


def star_discrepancy(points):
    xs = sorted(points)
    n = len(xs)
    if n == 0:
        return 0.0
    return min(1.0, max(max((i + 1) / n - x, x - i / n) for i, x in enumerate(xs)))


class SplitMix64:
    def __init__(self, seed):
        self.state = seed & MASK64

    def next(self):
        self.state = (self.state + 0x9E3779B97F4A7C15) & MASK64
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
        return z ^ (z >> 31)

    def uniform(self):
        return (self.next() >> 11) * 2.0**-53

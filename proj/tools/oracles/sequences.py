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

"""Direct-count oracles for the sequence statistics.

Usage: python3 sequences.py <check>   (prints one JSON object)
"""

import json
import sys
from math import isqrt

from common import ALPHA, SCALE, frac, frac_fixed, star_discrepancy

A2 = ALPHA["sqrt(2) - 1"]


def indicator_prefix(count=30):
    # {n^3 alpha} < 1/3 in fixed point; 1/3 is not representable, so compare
    # 3 * frac < SCALE instead.
    return [n if 3 * frac_fixed(n**3, A2) < SCALE else 0 for n in range(1, count + 1)]


def star_nalpha(N=100_000):
    return star_discrepancy([frac(n, A2) for n in range(1, N + 1)])


def floor_three_halves_even(N=100_000):
    return sum(1 for n in range(1, N + 1) if isqrt(n**3) % 2 == 0) / N


def bohr_squares(N=100_000, eps=0.05):
    hits = 0
    for n in range(1, N + 1):
        x = frac(n * n, A2)
        hits += min(x, 1 - x) <= eps
    return hits / N


def enumeration(ell=2, count=10_000):
    out, n = [], 0
    while len(out) < count:
        n += 1
        x = frac_fixed(n**ell, A2)
        if 4 * x >= SCALE and 4 * x <= 3 * SCALE:
            out.append(n)
    return out


def enumeration_linear_star(ell=2, count=10_000):
    return star_discrepancy([frac(a, A2) for a in enumeration(ell, count)])


CHECKS = {
    "indicator_prefix": indicator_prefix,
    "star_nalpha": star_nalpha,
    "floor_three_halves_even": floor_three_halves_even,
    "bohr_squares": bohr_squares,
    "enumeration_prefix": lambda: enumeration(2, 20),
    "enumeration_linear_star": enumeration_linear_star,
}

if __name__ == "__main__":
    names = sys.argv[1:] or list(CHECKS)
    print(json.dumps({name: CHECKS[name]() for name in names}, indent=1))

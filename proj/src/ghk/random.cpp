/*
 * Copyright 2026 The ghk-lab Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */
#include "ghk/random.hpp"

#include "ghk/numeric.hpp"

namespace ghk {

CyclicFunction random_unimodular(std::int64_t size, SplitMix64& rng) {
  CyclicFunction f(static_cast<std::size_t>(size));
  for (auto& v : f) v = unit(rng.uniform());
  return f;
}

CyclicFunction random_bounded(std::int64_t size, SplitMix64& rng) {
  CyclicFunction f(static_cast<std::size_t>(size));
  for (auto& v : f) {
    const double rho = rng.uniform();
    v = rho * unit(rng.uniform());
  }
  return f;
}

}  // namespace ghk

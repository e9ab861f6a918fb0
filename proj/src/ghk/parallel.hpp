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
#pragma once

// Deterministic data-parallel loops.
//
// An index range is cut into chunks of a fixed size that does not depend on
// the worker count. Each chunk is reduced sequentially, and the per-chunk
// partials are combined by a pairwise tree in chunk order. Results are
// therefore bit-identical for any GHK_THREADS value.

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>
#include <utility>
#include <vector>

namespace ghk::parallel {

inline constexpr std::int64_t kChunk = 256;

/// Worker count: explicit override, else GHK_THREADS, else hardware threads.
unsigned thread_count();
/// 0 restores the environment/default behaviour.
void set_thread_count(unsigned n);
/// The current explicit override, 0 if none.
unsigned thread_override();

/// Runs body(chunk_index) for chunk indices [0, chunks) on the worker pool.
void run_chunks(std::int64_t chunks, const std::function<void(std::int64_t)>& body);

template <class T, class Combine>
T tree_reduce(std::vector<T> parts, Combine combine) {
  if (parts.empty()) return T{};
  while (parts.size() > 1) {
    std::vector<T> next;
    next.reserve((parts.size() + 1) / 2);
    for (std::size_t i = 0; i + 1 < parts.size(); i += 2) next.push_back(combine(std::move(parts[i]), std::move(parts[i + 1])));
    if (parts.size() % 2) next.push_back(std::move(parts.back()));
    parts = std::move(next);
  }
  return std::move(parts.front());
}

/// Reduces f(begin, end) over chunks of [0, n).
template <class T, class ChunkFn, class Combine>
T reduce(std::int64_t n, ChunkFn chunk_fn, Combine combine, std::int64_t chunk = kChunk) {
  if (n <= 0) return T{};
  const std::int64_t chunks = (n + chunk - 1) / chunk;
  std::vector<T> parts(static_cast<std::size_t>(chunks));
  run_chunks(chunks, [&](std::int64_t c) {
    const std::int64_t b = c * chunk;
    parts[static_cast<std::size_t>(c)] = chunk_fn(b, std::min(n, b + chunk));
  });
  return tree_reduce(std::move(parts), combine);
}

/// Calls body(i) for every i in [0, n); bodies must write disjoint outputs.
template <class Body>
void for_each(std::int64_t n, Body body, std::int64_t chunk = kChunk) {
  if (n <= 0) return;
  const std::int64_t chunks = (n + chunk - 1) / chunk;
  run_chunks(chunks, [&](std::int64_t c) {
    const std::int64_t b = c * chunk;
    const std::int64_t e = std::min(n, b + chunk);
    for (std::int64_t i = b; i < e; ++i) body(i);
  });
}

}  // namespace ghk::parallel

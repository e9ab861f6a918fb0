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
#include "ghk/parallel.hpp"

#include <cstdlib>
#include <string>

namespace ghk::parallel {

namespace {

std::atomic<unsigned> g_override{0};
thread_local bool t_inside_worker = false;

unsigned env_threads() {
  if (const char* env = std::getenv("GHK_THREADS")) {
    try {
      long v = std::stol(env);
      if (v >= 1) return static_cast<unsigned>(std::min<long>(v, 1024));
    } catch (const std::exception&) {
    }
  }
  unsigned hw = std::thread::hardware_concurrency();
  return hw ? hw : 1;
}

}  // namespace

unsigned thread_count() {
  unsigned o = g_override.load();
  return o ? o : env_threads();
}

void set_thread_count(unsigned n) { g_override.store(n); }

unsigned thread_override() { return g_override.load(); }

void run_chunks(std::int64_t chunks, const std::function<void(std::int64_t)>& body) {
  if (chunks <= 0) return;
  const unsigned workers = static_cast<unsigned>(std::min<std::int64_t>(thread_count(), chunks));
  if (workers <= 1 || t_inside_worker) {
    for (std::int64_t c = 0; c < chunks; ++c) body(c);
    return;
  }
  std::atomic<std::int64_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto work = [&] {
    const bool was_inside = t_inside_worker;
    t_inside_worker = true;
    struct Restore {
      bool v;
      ~Restore() { t_inside_worker = v; }
    } restore{was_inside};
    for (;;) {
      std::int64_t c = next.fetch_add(1);
      if (c >= chunks) return;
      try {
        body(c);
      } catch (...) {
        std::lock_guard<std::mutex> lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next.store(chunks);
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(workers - 1);
  for (unsigned w = 1; w < workers; ++w) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

}  // namespace ghk::parallel

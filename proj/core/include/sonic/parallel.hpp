#pragma once

#include <cstddef>
#include <functional>
#include <vector>

namespace sonic {

/// Worker count: SONIC_THREADS if set and positive, else hardware concurrency.
unsigned thread_count();

/// Evaluates fn(0..n-1) on up to thread_count() threads. Results are stored by
/// index, so the output does not depend on scheduling. The first exception
/// thrown by any task is rethrown after all workers join.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

template <class T>
std::vector<T> parallel_map(std::size_t n, const std::function<T(std::size_t)>& fn) {
  std::vector<T> out(n);
  parallel_for(n, [&](std::size_t i) { out[i] = fn(i); });
  return out;
}

}  // namespace sonic

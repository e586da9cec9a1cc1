#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace threadlens {

struct ShardRange {
  std::size_t begin = 0;
  std::size_t end = 0;
};

// Contiguous, nearly equal split of [0, n) into `shards` ranges. Empty ranges
// are kept so that shard indices stay stable.
inline std::vector<ShardRange> split_range(std::size_t n, unsigned shards) {
  shards = std::max(1u, shards);
  std::vector<ShardRange> out(shards);
  const std::size_t base = n / shards;
  const std::size_t extra = n % shards;
  std::size_t at = 0;
  for (unsigned i = 0; i < shards; ++i) {
    const std::size_t len = base + (i < extra ? 1 : 0);
    out[i] = {at, at + len};
    at += len;
  }
  return out;
}

// Runs fn(range) for every shard, one thread per shard, and returns the
// partial results in shard order. The first exception thrown by any shard is
// rethrown after all threads join.
template <class Partial, class Fn>
std::vector<Partial> map_shards(std::size_t n, unsigned shards, Fn&& fn) {
  const auto ranges = split_range(n, shards);
  std::vector<Partial> partials(ranges.size());
  if (ranges.size() == 1) {
    partials[0] = fn(ranges[0]);
    return partials;
  }
  std::vector<std::exception_ptr> errors(ranges.size());
  std::vector<std::thread> workers;
  workers.reserve(ranges.size());
  for (std::size_t i = 0; i < ranges.size(); ++i) {
    workers.emplace_back([&, i] {
      try {
        partials[i] = fn(ranges[i]);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    });
  }
  for (auto& w : workers) w.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return partials;
}

}  // namespace threadlens

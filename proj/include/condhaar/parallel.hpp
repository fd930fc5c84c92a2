#pragma once

#include <atomic>
#include <cstdint>
#include <functional>
#include <thread>
#include <vector>

#include "condhaar/rng.hpp"

namespace condhaar {

//! Fixed shard count for Monte Carlo fan-out. Each shard owns the stream
//! (seed, stream_base + shard), so results are independent of the worker
//! count: any number of threads consumes the same shards with the same
//! streams and the merge order is by shard index.
inline constexpr int kMcShards = 64;

//! Runs body(shard, begin, end, rng) over a fixed partition of [0, total)
//! into kMcShards contiguous shards, using up to `threads` workers. The body
//! must only write to state owned by its shard (e.g. disjoint slices).
inline void for_each_shard(long total, std::uint64_t seed, std::uint64_t stream_base,
                           unsigned threads,
                           const std::function<void(int, long, long, RngStream&)>& body) {
  if (threads == 0) threads = 1;
  std::atomic<int> next{0};
  auto worker = [&] {
    for (;;) {
      const int shard = next.fetch_add(1);
      if (shard >= kMcShards) return;
      const long begin = total * shard / kMcShards;
      const long end = total * (shard + 1) / kMcShards;
      RngStream rng(seed, stream_base + static_cast<std::uint64_t>(shard));
      body(shard, begin, end, rng);
    }
  };
  if (threads == 1) {
    worker();
    return;
  }
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
}

//! Fills out[i] for i in [0, total) with a per-index draw; deterministic for
//! any thread count.
template <typename T, typename Fn>
void sample_into(std::vector<T>& out, long total, std::uint64_t seed, std::uint64_t stream_base,
                 unsigned threads, Fn&& draw) {
  out.resize(total);
  for_each_shard(total, seed, stream_base, threads,
                 [&](int, long begin, long end, RngStream& rng) {
                   for (long i = begin; i < end; ++i) out[i] = draw(rng);
                 });
}

}  // namespace condhaar

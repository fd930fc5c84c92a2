#pragma once

// Internal helpers shared by the experiment translation units.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "condhaar/experiments.hpp"
#include "condhaar/measures.hpp"
#include "condhaar/parallel.hpp"
#include "condhaar/stats.hpp"

namespace condhaar::detail {

template <typename Body>
Experiment make_experiment(std::string id, std::string anchor, Body body) {
  Experiment e;
  e.id = id;
  e.anchor = std::move(anchor);
  e.run = [id, body](const nlohmann::ordered_json& params, std::uint64_t seed,
                     unsigned threads) -> ExperimentReport {
    const auto start = std::chrono::steady_clock::now();
    ExperimentReport rep;
    rep.experiment_id = id;
    rep.seed = seed;
    body(rep, params, seed, threads);
    rep.finalize();
    rep.runtime_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                         std::chrono::steady_clock::now() - start)
                         .count();
    return rep;
  };
  return e;
}

//! Deviation-from-target statistic gated at k standard errors.
inline void add_dev(ExperimentReport& rep, std::string name, const MomentEstimate& est,
                    double target, double k = 4.0) {
  rep.add(std::move(name), est.value - target, est.std_error, k * est.std_error);
}

//! Significance gate: passes when p >= alpha.
inline void add_pvalue(ExperimentReport& rep, std::string name, double p, double alpha = 0.01) {
  rep.add("p_" + name, p, 0.0, alpha);
}

inline long param_count(const nlohmann::ordered_json& params, long fallback) {
  if (params.contains("count")) return params.at("count").get<long>();
  return fallback;
}

//! Compact %g formatting for statistic names.
inline std::string short_num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%g", x);
  return buf;
}

//! Draws `count` doubles from `draw`, deterministically for any thread count.
inline std::vector<double> draw_doubles(long count, std::uint64_t seed, std::uint64_t base,
                                        unsigned threads,
                                        const std::function<double(RngStream&)>& draw) {
  std::vector<double> out;
  sample_into(out, count, seed, base, threads, draw);
  return out;
}

//! {Re Tr u, Im Tr u, Re Tr u^2, p-th smallest |angle|} from the eigenangles.
struct SpectralStats {
  double re_tr = 0.0, im_tr = 0.0, re_tr2 = 0.0, min_nontrivial = 0.0;
};

inline SpectralStats spectral_stats(const EigenangleSet& set, int deflate_p) {
  SpectralStats s;
  std::vector<double> mags;
  mags.reserve(set.angles.size());
  for (double a : set.angles) {
    s.re_tr += std::cos(a);
    s.im_tr += std::sin(a);
    s.re_tr2 += std::cos(2.0 * a);
    mags.push_back(std::abs(a));
  }
  std::sort(mags.begin(), mags.end());
  s.min_nontrivial = mags[std::min<std::size_t>(deflate_p, mags.size() - 1)];
  return s;
}

//! Fixed-seed KS suite on {Re Tr, Im Tr, Re Tr u^2, min nontrivial |angle|}
//! between two matrix samplers; one significance gate per statistic.
inline void ks_suite(ExperimentReport& rep, const std::string& suffix, long count,
                     std::uint64_t seed, std::uint64_t base, unsigned threads, int deflate_p,
                     const std::function<UnitaryMatrix(RngStream&)>& first,
                     const std::function<UnitaryMatrix(RngStream&)>& second) {
  auto draw_stats = [&](const std::function<UnitaryMatrix(RngStream&)>& sampler,
                        std::uint64_t slot) {
    std::vector<SpectralStats> out;
    sample_into(out, count, seed, base + slot * kMcShards, threads,
                [&](RngStream& rng) { return spectral_stats(eigenangles(sampler(rng)), deflate_p); });
    return out;
  };
  const auto a = draw_stats(first, 0);
  const auto b = draw_stats(second, 1);
  auto component = [&](const char* name, auto proj) {
    std::vector<double> xa(count), xb(count);
    for (long i = 0; i < count; ++i) {
      xa[i] = proj(a[i]);
      xb[i] = proj(b[i]);
    }
    add_pvalue(rep, std::string(name) + suffix, ks_two_sample(xa, xb).p_value);
  };
  component("ks_re_tr", [](const SpectralStats& s) { return s.re_tr; });
  component("ks_im_tr", [](const SpectralStats& s) { return s.im_tr; });
  component("ks_re_tr2", [](const SpectralStats& s) { return s.re_tr2; });
  component("ks_min_angle", [](const SpectralStats& s) { return s.min_nontrivial; });
}

//! Maximum of a per-sample scalar over `count` draws, shard-deterministic.
inline double sharded_max(long count, std::uint64_t seed, std::uint64_t base, unsigned threads,
                          const std::function<double(long, RngStream&)>& value) {
  std::vector<double> slot(kMcShards, -std::numeric_limits<double>::infinity());
  for_each_shard(count, seed, base, threads, [&](int shard, long begin, long end, RngStream& rng) {
    for (long i = begin; i < end; ++i) slot[shard] = std::max(slot[shard], value(i, rng));
  });
  return *std::max_element(slot.begin(), slot.end());
}

//! Normalized CDF tabulated from an unnormalized density on [lo, hi].
inline std::function<double(double)> tabulated_cdf(const std::function<double(double)>& density,
                                                   double lo, double hi, int cells = 4096) {
  auto grid = std::make_shared<std::vector<double>>(cells + 1, 0.0);
  const double h = (hi - lo) / cells;
  double acc = 0.0;
  double prev = density(lo);
  for (int i = 1; i <= cells; ++i) {
    const double cur = density(lo + i * h);
    acc += 0.5 * (prev + cur) * h;
    (*grid)[i] = acc;
    prev = cur;
  }
  const double total = acc;
  return [grid, lo, hi, h, total, cells](double x) {
    if (x <= lo) return 0.0;
    if (x >= hi) return 1.0;
    const double pos = (x - lo) / h;
    const int i = std::min(static_cast<int>(pos), cells - 1);
    const double frac = pos - i;
    return ((*grid)[i] * (1.0 - frac) + (*grid)[i + 1] * frac) / total;
  };
}

}  // namespace condhaar::detail

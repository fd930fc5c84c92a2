#include "condhaar/experiments.hpp"

#include <stdexcept>

namespace condhaar {

const std::vector<Experiment>& experiment_registry() {
  static const std::vector<Experiment> registry = [] {
    std::vector<Experiment> all = detail::core_experiments();
    for (auto& e : detail::limit_experiments()) all.push_back(std::move(e));
    return all;
  }();
  return registry;
}

const Experiment* find_experiment(const std::string& id) {
  for (const auto& e : experiment_registry())
    if (e.id == id) return &e;
  return nullptr;
}

ExperimentReport run_experiment(const std::string& id, const nlohmann::ordered_json& params,
                                std::uint64_t seed, unsigned threads) {
  const Experiment* e = find_experiment(id);
  if (!e) throw std::invalid_argument("unknown experiment id: " + id);
  return e->run(params, seed, threads);
}

std::uint64_t experiment_stream_base(const std::string& id) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : id) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

int count_significance_gates(const std::vector<ExperimentReport>& reports) {
  int count = 0;
  for (const auto& r : reports)
    for (const auto& s : r.statistics)
      if (s.gated() && s.name.rfind("p_", 0) == 0) ++count;
  return count;
}

}  // namespace condhaar

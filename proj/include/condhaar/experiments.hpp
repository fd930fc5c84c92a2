#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "condhaar/report.hpp"

namespace condhaar {

//! A named verification experiment binding one identity, law, or limit
//! theorem to a concrete statistical test with pinned thresholds.
struct Experiment {
  std::string id;
  std::string anchor;  //!< the theorem / equation the experiment verifies
  std::function<ExperimentReport(const nlohmann::ordered_json& params, std::uint64_t seed,
                                 unsigned threads)>
      run;
};

//! All registered experiments, in a fixed order.
const std::vector<Experiment>& experiment_registry();

//! Lookup by id; nullptr when unknown.
const Experiment* find_experiment(const std::string& id);

//! Runs one experiment; throws std::invalid_argument on an unknown id.
ExperimentReport run_experiment(const std::string& id, const nlohmann::ordered_json& params,
                                std::uint64_t seed, unsigned threads);

//! FNV-1a of the experiment id; used as the stream base so distinct
//! experiments never share random streams under one seed.
std::uint64_t experiment_stream_base(const std::string& id);

//! Number of significance-gated statistics across the whole registry with
//! default parameters; `verify --all` reports #gates x 0.01 as the
//! false-failure budget.
int count_significance_gates(const std::vector<ExperimentReport>& reports);

namespace detail {
std::vector<Experiment> core_experiments();
std::vector<Experiment> limit_experiments();
}  // namespace detail

}  // namespace condhaar

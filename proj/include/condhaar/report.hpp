#pragma once

#include <json.hpp>
#include <optional>
#include <string>
#include <vector>

namespace condhaar {

//! One verified statistic. The gate convention: names starting with "p_" pass
//! when value >= threshold (significance gates); all other names pass when
//! |value| <= threshold. A missing threshold marks an informational line that
//! does not enter the experiment verdict.
struct StatisticLine {
  std::string name;
  double value = 0.0;
  double std_error = 0.0;
  std::optional<double> threshold;

  bool gated() const { return threshold.has_value(); }
  bool passed() const;
};

//! Result of one named experiment; serializes losslessly to/from JSON.
struct ExperimentReport {
  int schema = 1;
  std::string experiment_id;
  nlohmann::ordered_json params = nlohmann::ordered_json::object();
  std::vector<StatisticLine> statistics;
  bool pass = false;
  std::uint64_t seed = 0;
  std::int64_t runtime_ms = 0;

  void add(std::string name, double value, double std_error,
           std::optional<double> threshold = std::nullopt);
  //! Recompute pass as the conjunction of the gated statistic checks.
  void finalize();

  nlohmann::ordered_json to_json() const;
  static ExperimentReport from_json(const nlohmann::ordered_json& j);
};

}  // namespace condhaar

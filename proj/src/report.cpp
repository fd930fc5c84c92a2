#include "condhaar/report.hpp"

#include <cmath>

namespace condhaar {

bool StatisticLine::passed() const {
  if (!threshold) return true;
  if (name.rfind("p_", 0) == 0) return value >= *threshold;
  return std::abs(value) <= *threshold;
}

void ExperimentReport::add(std::string name, double value, double std_error,
                           std::optional<double> threshold) {
  statistics.push_back(StatisticLine{std::move(name), value, std_error, threshold});
}

void ExperimentReport::finalize() {
  pass = true;
  for (const auto& s : statistics)
    if (s.gated() && !s.passed()) pass = false;
}

nlohmann::ordered_json ExperimentReport::to_json() const {
  nlohmann::ordered_json j;
  j["schema"] = schema;
  j["experiment_id"] = experiment_id;
  j["params"] = params;
  auto stats = nlohmann::ordered_json::array();
  for (const auto& s : statistics) {
    nlohmann::ordered_json line;
    line["name"] = s.name;
    line["value"] = s.value;
    line["stderr"] = s.std_error;
    if (s.threshold)
      line["threshold"] = *s.threshold;
    else
      line["threshold"] = nullptr;
    stats.push_back(std::move(line));
  }
  j["statistics"] = std::move(stats);
  j["pass"] = pass;
  j["seed"] = seed;
  j["runtime_ms"] = runtime_ms;
  return j;
}

ExperimentReport ExperimentReport::from_json(const nlohmann::ordered_json& j) {
  ExperimentReport r;
  r.schema = j.at("schema").get<int>();
  r.experiment_id = j.at("experiment_id").get<std::string>();
  r.params = j.at("params");
  for (const auto& line : j.at("statistics")) {
    StatisticLine s;
    s.name = line.at("name").get<std::string>();
    s.value = line.at("value").get<double>();
    s.std_error = line.at("stderr").get<double>();
    if (!line.at("threshold").is_null()) s.threshold = line.at("threshold").get<double>();
    r.statistics.push_back(std::move(s));
  }
  r.pass = j.at("pass").get<bool>();
  r.seed = j.at("seed").get<std::uint64_t>();
  r.runtime_ms = j.at("runtime_ms").get<std::int64_t>();
  return r;
}

}  // namespace condhaar

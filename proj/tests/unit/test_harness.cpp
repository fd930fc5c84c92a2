#include <doctest.h>

#include "condhaar/experiments.hpp"

using namespace condhaar;

namespace {

nlohmann::ordered_json strip_runtime(nlohmann::ordered_json j) {
  j["runtime_ms"] = 0;
  return j;
}

}  // namespace

TEST_SUITE("harness") {
  TEST_CASE("statistic gate conventions") {
    ExperimentReport rep;
    rep.add("dev_x", 0.5, 0.1, 1.0);
    rep.add("p_ks_y", 0.2, 0.0, 0.01);
    rep.add("informational", 123.0, 0.0, std::nullopt);
    rep.finalize();
    CHECK(rep.pass);

    rep.statistics.clear();
    rep.add("p_ks_y", 0.005, 0.0, 0.01);  // significance gate fails below alpha
    rep.finalize();
    CHECK_FALSE(rep.pass);

    rep.statistics.clear();
    rep.add("dev_x", -2.0, 0.1, 1.0);  // deviation gate is two-sided
    rep.finalize();
    CHECK_FALSE(rep.pass);
  }

  TEST_CASE("report JSON serialization round-trips losslessly") {
    ExperimentReport rep;
    rep.experiment_id = "thm2_3_identity";
    rep.seed = 99;
    rep.runtime_ms = 17;
    rep.params["count"] = 12;
    rep.add("dev", 1.25e-13, 3.0e-14, 1e-9);
    rep.add("note", 0.125, 0.0, std::nullopt);
    rep.finalize();
    const auto j = rep.to_json();
    CHECK(j.at("schema") == 1);
    const ExperimentReport back = ExperimentReport::from_json(j);
    CHECK(back.to_json() == j);
    CHECK(back.statistics[0].value == rep.statistics[0].value);
    CHECK_FALSE(back.statistics[1].threshold.has_value());
  }

  TEST_CASE("unknown experiment id throws") {
    CHECK_THROWS_AS(run_experiment("no_such_experiment", {}, 1, 1),
                    std::invalid_argument);
    CHECK(find_experiment("no_such_experiment") == nullptr);
    CHECK(find_experiment("thm2_3_identity") != nullptr);
  }

  TEST_CASE("every experiment id is unique and carries an anchor") {
    const auto& reg = experiment_registry();
    for (std::size_t i = 0; i < reg.size(); ++i) {
      CHECK_FALSE(reg[i].anchor.empty());
      for (std::size_t j = i + 1; j < reg.size(); ++j) CHECK(reg[i].id != reg[j].id);
    }
  }

  TEST_CASE("reports are identical for any thread count") {
    nlohmann::ordered_json params;
    params["count"] = 3000;
    for (const char* id : {"thm2_3_identity", "eq4_2_killip_nenciu", "lemma3_3_slip"}) {
      const auto one = strip_runtime(run_experiment(id, params, 123, 1).to_json());
      const auto two = strip_runtime(run_experiment(id, params, 123, 2).to_json());
      const auto three = strip_runtime(run_experiment(id, params, 123, 3).to_json());
      CHECK(one.dump() == two.dump());
      CHECK(one.dump() == three.dump());
    }
  }

  TEST_CASE("significance gate counting") {
    std::vector<ExperimentReport> reps(1);
    reps[0].add("p_ks_a", 0.5, 0.0, 0.01);
    reps[0].add("dev_b", 0.0, 0.1, 0.4);
    reps[0].add("p_info", 0.5, 0.0, std::nullopt);
    CHECK(count_significance_gates(reps) == 1);
  }
}

// Command-line front end: sampling dumps, verification experiments, density
// and CLT suites, all reproducible under (--seed, any --threads).

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "condhaar/charpoly.hpp"
#include "condhaar/experiments.hpp"
#include "condhaar/measures.hpp"
#include "condhaar/parallel.hpp"

namespace {

using namespace condhaar;

struct CommonOpts {
  std::string group = "unitary";
  int n = 4;
  int p = 0;
  int p_plus = 0;
  int p_minus = 0;
  double beta = 2.0;
  double a = 0.0;
  double b = 0.0;
  long count = 1000;
  std::uint64_t seed = 42;
  unsigned threads = 0;
  std::string format = "csv";
  std::string out;
};

std::ostream& open_output(const std::string& path, std::ofstream& file) {
  if (path.empty()) return std::cout;
  file.open(path);
  if (!file) throw std::runtime_error("cannot open output file: " + path);
  return file;
}

unsigned resolve_threads(unsigned requested) {
  if (requested != 0) return requested;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

int run_sample(const CommonOpts& o) {
  std::ofstream file;
  std::ostream& os = open_output(o.out, file);
  const unsigned threads = resolve_threads(o.threads);

  const bool pair_output = o.group == "so" || o.group == "usp" || o.group == "jacobi";
  std::vector<std::pair<double, double>> pairs;
  std::vector<Complex> zs;

  if (o.group == "unitary" || o.group == "unitary-conditional") {
    const int p = o.group == "unitary" ? 0 : o.p;
    if (p < 0 || p > o.n - 1) {
      std::cerr << "sample: requires 0 <= p <= n-1\n";
      return 2;
    }
    sample_into(zs, o.count, o.seed, 0, threads,
                [&](RngStream& rng) { return sample_z_product_unitary(o.n, p, rng); });
  } else if (o.group == "orthogonal-conditional") {
    if (o.p < 0 || o.p > o.n - 1) {
      std::cerr << "sample: requires 0 <= p <= n-1\n";
      return 2;
    }
    sample_into(zs, o.count, o.seed, 0, threads, [&](RngStream& rng) {
      const Eigen::MatrixXd u = sample_conditional_orthogonal(o.n, o.p, rng);
      return z_derivative(eigenangles(UnitaryMatrix{u.cast<Complex>()}), o.p);
    });
  } else if (pair_output) {
    AlphaSchedule sched;
    if (o.group == "jacobi") {
      sched = alpha_schedule_general(o.beta, o.a, o.b, o.n);
    } else {
      sched = alpha_schedule_group(o.group == "so" ? CompactGroup::SO : CompactGroup::USp, o.n,
                                   o.p_plus, o.p_minus);
    }
    std::vector<DerivativePair> draws;
    sample_into(draws, o.count, o.seed, 0, threads,
                [&](RngStream& rng) { return sample_jacobi_det_pair(sched, rng); });
    pairs.reserve(draws.size());
    for (const auto& d : draws) pairs.emplace_back(d.z_plus, d.z_minus);
  } else {
    std::cerr << "sample: unknown group '" << o.group << "'\n";
    return 2;
  }

  if (o.format == "csv") {
    os.precision(17);
    if (pair_output) {
      os << "det_plus,det_minus\n";
      for (const auto& [p, m] : pairs) os << p << "," << m << "\n";
    } else {
      os << "re_z,im_z\n";
      for (const Complex& z : zs) os << z.real() << "," << z.imag() << "\n";
    }
  } else {
    nlohmann::ordered_json j = nlohmann::ordered_json::array();
    if (pair_output) {
      for (const auto& [p, m] : pairs) j.push_back({{"det_plus", p}, {"det_minus", m}});
    } else {
      for (const Complex& z : zs) j.push_back({{"re_z", z.real()}, {"im_z", z.imag()}});
    }
    os << j.dump(2) << "\n";
  }
  return 0;
}

int run_reports(const std::vector<std::string>& ids, const nlohmann::ordered_json& params,
                const CommonOpts& o) {
  const unsigned threads = resolve_threads(o.threads);
  std::vector<ExperimentReport> reports;
  bool all_pass = true;
  for (const auto& id : ids) {
    ExperimentReport rep = run_experiment(id, params, o.seed, threads);
    all_pass = all_pass && rep.pass;
    std::cerr << (rep.pass ? "[PASS] " : "[FAIL] ") << id << " (" << rep.runtime_ms << " ms)\n";
    for (const auto& s : rep.statistics)
      if (s.gated() && !s.passed())
        std::cerr << "       failed statistic: " << s.name << " = " << s.value
                  << " (threshold " << *s.threshold << ")\n";
    reports.push_back(std::move(rep));
  }
  const int gates = count_significance_gates(reports);
  std::cerr << "significance gates at 0.01/0.001: " << gates
            << "; expected false failures across suite ~= " << gates * 0.01 << "\n";

  nlohmann::ordered_json out = nlohmann::ordered_json::array();
  for (const auto& r : reports) out.push_back(r.to_json());
  std::ofstream file;
  std::ostream& os = open_output(o.out, file);
  os << out.dump(2) << "\n";
  return all_pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Haar and conditional Haar measures on compact groups via reflection products, "
               "with characteristic-polynomial statistics and a verification harness"};
  app.require_subcommand(1);

  CommonOpts o;

  auto add_common = [&](CLI::App* cmd, bool with_group) {
    if (with_group)
      cmd->add_option("--group", o.group,
                      "unitary | unitary-conditional | orthogonal-conditional | so | usp | jacobi");
    cmd->add_option("--n", o.n, "matrix dimension / schedule size");
    cmd->add_option("--p", o.p, "pinned multiplicity (unitary/orthogonal conditional)");
    cmd->add_option("--p-plus", o.p_plus, "eigenvalue-1 multiplicity (SO/USp, as 2p+)");
    cmd->add_option("--p-minus", o.p_minus, "eigenvalue--1 multiplicity (SO/USp, as 2p-)");
    cmd->add_option("--beta", o.beta, "Jacobi beta parameter");
    cmd->add_option("--a", o.a, "Jacobi edge exponent at +2");
    cmd->add_option("--b", o.b, "Jacobi edge exponent at -2");
    cmd->add_option("--count", o.count, "number of samples");
    cmd->add_option("--seed", o.seed, "random seed");
    cmd->add_option("--threads", o.threads, "worker threads (0 = auto); results are identical for any value");
    cmd->add_option("--format", o.format, "json | csv")->check(CLI::IsMember({"json", "csv"}));
    cmd->add_option("--out", o.out, "output path (default stdout)");
  };

  auto* sample = app.add_subcommand("sample", "dump draws of the derivative statistics");
  add_common(sample, true);

  auto* verify = app.add_subcommand("verify", "run verification experiments");
  bool verify_all = false;
  std::string experiment_id;
  verify->add_flag("--all", verify_all, "run every registered experiment");
  verify->add_option("--experiment", experiment_id, "run a single experiment by id");
  add_common(verify, false);

  auto* density = app.add_subcommand("density", "tail-exponent experiments for the density near 0");
  add_common(density, true);

  auto* clt = app.add_subcommand("clt", "central limit theorem suites");
  add_common(clt, false);

  auto* list = app.add_subcommand("list", "print experiment ids with their anchors");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_name() == "CallForHelp" || e.get_name() == "CallForAllHelp")
      return app.exit(e);
    app.exit(e);
    return 2;
  }

  try {
    if (list->parsed()) {
      for (const auto& e : experiment_registry())
        std::cout << e.id << "  --  " << e.anchor << "\n";
      return 0;
    }
    if (sample->parsed()) return run_sample(o);
    if (density->parsed()) {
      nlohmann::ordered_json params;
      params["count"] = o.count;
      std::vector<std::string> ids;
      if (o.group == "unitary") {
        ids = {"cor5_2_density_unitary"};
        if (density->count("--p")) params["p"] = o.p;
      } else if (o.group == "so") {
        ids = {"cor5_1_density_so"};
      } else if (o.group == "usp") {
        ids = {"cor5_1_density_usp"};
      } else {
        std::cerr << "density: group must be unitary, so, or usp\n";
        return 2;
      }
      return run_reports(ids, params, o);
    }
    if (clt->parsed()) {
      nlohmann::ordered_json params;
      if (clt->count("--count")) params["count"] = o.count;
      if (clt->count("--n")) params["n"] = o.n;
      return run_reports({"thm5_3_clt_jacobi", "cor5_4_clt_usp", "cor5_5_clt_unitary"}, params, o);
    }
    if (verify->parsed()) {
      nlohmann::ordered_json params;
      if (verify->count("--count")) params["count"] = o.count;
      std::vector<std::string> ids;
      if (verify_all) {
        for (const auto& e : experiment_registry()) ids.push_back(e.id);
      } else if (!experiment_id.empty()) {
        if (!find_experiment(experiment_id)) {
          std::cerr << "unknown experiment id: " << experiment_id << "\n";
          return 2;
        }
        ids = {experiment_id};
      } else {
        std::cerr << "verify: pass --all or --experiment <id>\n";
        return 2;
      }
      return run_reports(ids, params, o);
    }
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}

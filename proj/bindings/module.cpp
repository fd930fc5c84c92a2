#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "condhaar/charpoly.hpp"
#include "condhaar/experiments.hpp"
#include "condhaar/measures.hpp"
#include "condhaar/stats.hpp"

namespace py = pybind11;
using namespace condhaar;

namespace {

CompactGroup parse_group(const std::string& g) {
  if (g == "so" || g == "SO") return CompactGroup::SO;
  if (g == "usp" || g == "USp") return CompactGroup::USp;
  throw std::invalid_argument("group must be 'so' or 'usp'");
}

AlphaSchedule schedule_from_pairs(const std::vector<std::pair<double, double>>& pairs) {
  return AlphaSchedule{pairs};
}

}  // namespace

PYBIND11_MODULE(_condhaar, m) {
  m.doc() = "Haar and conditional Haar measures on compact groups as reflection products, "
            "with characteristic-polynomial derivative statistics";

  py::class_<RngStream>(m, "RngStream")
      .def(py::init<std::uint64_t, std::uint64_t>(), py::arg("seed"), py::arg("stream_index") = 0)
      .def_property_readonly("seed", &RngStream::seed)
      .def_property_readonly("stream_index", &RngStream::stream_index)
      .def("uniform", [](RngStream& r) { return r.uniform(); })
      .def("normal", &RngStream::normal)
      .def("gamma", &RngStream::gamma, py::arg("shape"));

  // scalar samplers
  m.def("sample_complex_sphere", &sample_complex_sphere, py::arg("dim"), py::arg("rng"));
  m.def("sample_real_sphere", &sample_real_sphere, py::arg("dim"), py::arg("rng"));
  m.def("sample_beta", &sample_beta, py::arg("a"), py::arg("b"), py::arg("rng"));
  m.def("sample_fst", &sample_fst, py::arg("s"), py::arg("t"), py::arg("rng"));
  m.def("sample_cospower_angle", &sample_cospower_angle, py::arg("m"), py::arg("d"),
        py::arg("rng"));
  m.def(
      "sample_tilted_coord",
      [](double lambda, Complex delta, RngStream& rng) {
        return sample_tilted_coord(TiltedLaw(lambda, delta), rng);
      },
      py::arg("lambda_"), py::arg("delta"), py::arg("rng"));

  // matrix-level samplers
  m.def("sample_haar_unitary",
        [](int n, RngStream& rng) { return sample_haar_unitary(n, rng).entries; }, py::arg("n"),
        py::arg("rng"));
  m.def("sample_conditional_haar",
        [](int n, int p, RngStream& rng) { return sample_conditional_haar(n, p, rng).entries; },
        py::arg("n"), py::arg("p"), py::arg("rng"));
  m.def("sample_conditional_slipped",
        [](int n, int p, RngStream& rng) {
          return sample_conditional_slipped(n, p, rng).entries;
        },
        py::arg("n"), py::arg("p"), py::arg("rng"));
  m.def("sample_rotated_conditional",
        [](int n, RngStream& rng) { return sample_rotated_conditional(n, rng).entries; },
        py::arg("n"), py::arg("rng"));
  m.def("sample_conditional_orthogonal", &sample_conditional_orthogonal, py::arg("n"),
        py::arg("p"), py::arg("rng"));
  m.def("sample_conditioned_on_abs_z",
        [](int n, double x, RngStream& rng) {
          const auto s = sample_conditioned_on_abs_z(n, x, rng);
          return py::make_tuple(s.u.entries, s.attempts);
        },
        py::arg("n"), py::arg("x"), py::arg("rng"));
  m.def("eigenangles",
        [](const Eigen::MatrixXcd& u) { return eigenangles(UnitaryMatrix{u}).angles; },
        py::arg("u"));

  // characteristic-polynomial statistics
  m.def("z_derivative",
        [](const std::vector<double>& angles, int p) {
          return z_derivative(EigenangleSet{angles}, p);
        },
        py::arg("angles"), py::arg("p"));
  m.def("log_z",
        [](const std::vector<double>& angles, int p) { return log_z(EigenangleSet{angles}, p); },
        py::arg("angles"), py::arg("p"));
  m.def("sample_z_product_unitary", &sample_z_product_unitary, py::arg("n"), py::arg("p"),
        py::arg("rng"));
  m.def("sample_log_z_product_unitary", &sample_log_z_product_unitary, py::arg("n"), py::arg("p"),
        py::arg("rng"));
  m.def("alpha_schedule_general",
        [](double beta, double a, double b, int n) {
          return alpha_schedule_general(beta, a, b, n).pairs;
        },
        py::arg("beta"), py::arg("a"), py::arg("b"), py::arg("n"));
  m.def("alpha_schedule_group",
        [](const std::string& group, int n, int p_plus, int p_minus) {
          return alpha_schedule_group(parse_group(group), n, p_plus, p_minus).pairs;
        },
        py::arg("group"), py::arg("n"), py::arg("p_plus"), py::arg("p_minus"));
  m.def("sample_jacobi_det_pair",
        [](const std::vector<std::pair<double, double>>& pairs, RngStream& rng) {
          const auto d = sample_jacobi_det_pair(schedule_from_pairs(pairs), rng);
          return py::make_tuple(d.z_plus, d.z_minus);
        },
        py::arg("schedule"), py::arg("rng"));
  m.def("sample_jacobi_n1", &sample_jacobi_n1, py::arg("a"), py::arg("b"), py::arg("rng"));
  m.def("so_usp_derivative_pair",
        [](const std::string& group, int n, int p_plus, int p_minus, RngStream& rng) {
          const auto d = so_usp_derivative_pair(parse_group(group), n, p_plus, p_minus, rng);
          return py::make_tuple(d.z_plus, d.z_minus);
        },
        py::arg("group"), py::arg("n"), py::arg("p_plus"), py::arg("p_minus"), py::arg("rng"));

  // closed forms
  m.def("beta_mellin", &beta_mellin, py::arg("a"), py::arg("b"), py::arg("s"));
  m.def("mf_one_plus_sphere_coord", &mf_one_plus_sphere_coord, py::arg("lambda_"), py::arg("t"),
        py::arg("s"));
  m.def("mf_cospower", &mf_cospower, py::arg("z"), py::arg("t"), py::arg("s"));
  m.def("mf_theorem_a1_target", &mf_theorem_a1_target, py::arg("lambda_"), py::arg("delta"),
        py::arg("t"), py::arg("s"));
  m.def("expected_sq_modulus_zp", &expected_sq_modulus_zp, py::arg("n"), py::arg("p"));
  m.def("weyl_density_unitary",
        [](const std::vector<double>& a) { return weyl_density_unitary(a); }, py::arg("angles"));
  m.def("conditional_density_unitary",
        [](const std::vector<double>& a, int p) { return conditional_density_unitary(a, p); },
        py::arg("angles"), py::arg("p"));
  m.def("jacobi_density",
        [](const std::vector<double>& xs, double beta, double a, double b) {
          return jacobi_density(xs, beta, a, b);
        },
        py::arg("xs"), py::arg("beta"), py::arg("a"), py::arg("b"));

  // estimators and tests
  m.def("mc_moment",
        [](const std::vector<double>& xs) {
          const auto m_ = mc_moment(xs);
          return py::make_tuple(m_.value, m_.std_error, m_.count);
        },
        py::arg("xs"));
  m.def("ks_two_sample",
        [](const std::vector<double>& xs, const std::vector<double>& ys) {
          const auto r = ks_two_sample(xs, ys);
          return py::make_tuple(r.statistic, r.p_value);
        },
        py::arg("xs"), py::arg("ys"));
  m.def("tail_slope",
        [](const std::vector<double>& xs) {
          const auto r = tail_slope(xs);
          return py::make_tuple(r.slope, r.std_error);
        },
        py::arg("samples"));
  m.def("corr",
        [](const std::vector<double>& xs, const std::vector<double>& ys) {
          const auto r = corr(xs, ys);
          return py::make_tuple(r.r, r.std_error);
        },
        py::arg("xs"), py::arg("ys"));

  // verification harness
  m.def("list_experiments", [] {
    std::vector<std::pair<std::string, std::string>> out;
    for (const auto& e : experiment_registry()) out.emplace_back(e.id, e.anchor);
    return out;
  });
  m.def(
      "run_experiment_json",
      [](const std::string& id, const std::string& params_json, std::uint64_t seed,
         unsigned threads) {
        const auto params = nlohmann::ordered_json::parse(params_json);
        return run_experiment(id, params, seed, threads).to_json().dump();
      },
      py::arg("id"), py::arg("params_json") = "{}", py::arg("seed") = 42, py::arg("threads") = 1);
}

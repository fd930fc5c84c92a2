#include <Eigen/Dense>
#include <Eigen/SVD>
#include <numbers>

#include "condhaar/analytics.hpp"
#include "condhaar/charpoly.hpp"
#include "condhaar/quadrature.hpp"
#include "experiments_util.hpp"

namespace condhaar::detail {

namespace {

constexpr double kPi = std::numbers::pi;

Experiment thm2_3_identity() {
  return make_experiment(
      "thm2_3_identity", "Theorem 2.3: det(Id - r(1)...r(n)) = prod(1 - r_kk)",
      [](ExperimentReport& rep, const nlohmann::ordered_json& params, std::uint64_t seed,
         unsigned threads) {
        const long count = param_count(params, 1000);
        const std::uint64_t base = experiment_stream_base(rep.experiment_id);
        rep.params["count"] = count;
        const double worst =
            sharded_max(count, seed, base, threads, [](long i, RngStream& rng) {
              const int n = 2 + static_cast<int>(i % 9);
              std::vector<Reflection> refl;
              Eigen::MatrixXcd prod = Eigen::MatrixXcd::Identity(n, n);
              for (int k = n; k >= 1; --k) {
                refl.push_back(sample_nu(n, k, rng));
                apply_left(refl.back(), prod);
              }
              std::reverse(refl.begin(), refl.end());
              const Complex lhs = det_id_minus_product(refl);
              const Complex rhs =
                  (Eigen::MatrixXcd::Identity(n, n) - prod).partialPivLu().determinant();
              return std::abs(lhs - rhs) / n;
            });
        rep.add("max_identity_deviation_per_n", worst, 0.0, 1e-9);
      });
}

Experiment def2_1_reflections() {
  return make_experiment(
      "def2_1_reflections",
      "Definition 2.1 / Eqs (2.1)-(2.2): reflection structure, rank, nontrivial eigenvalue",
      [](ExperimentReport& rep, const nlohmann::ordered_json& params, std::uint64_t seed,
         unsigned threads) {
        const long count = param_count(params, 1000);
        const std::uint64_t base = experiment_stream_base(rep.experiment_id);
        rep.params["count"] = count;
        std::vector<double> unit(kMcShards, 0.0), rank(kMcShards, 0.0), eig(kMcShards, 0.0),
            fixed(kMcShards, 0.0), weight_viol(kMcShards, 0.0);
        for_each_shard(count, seed, base, threads,
                       [&](int shard, long begin, long end, RngStream& rng) {
                         for (long i = begin; i < end; ++i) {
                           const int n = 2 + static_cast<int>(i % 9);
                           const int k = 1 + static_cast<int>(i % n);
                           Reflection r;
                           switch (i % 3) {
                             case 0: r = sample_nu(n, k, rng); break;
                             case 1: r = sample_nu_delta(n, k, 1.0, rng); break;
                             default: r = sample_nu_real(n, k, rng); break;
                           }
                           const Eigen::MatrixXcd m = realize(r);
                           const Eigen::MatrixXcd g =
                               m.adjoint() * m - Eigen::MatrixXcd::Identity(n, n);
                           unit[shard] = std::max(unit[shard], g.cwiseAbs().maxCoeff());
                           const Eigen::MatrixXcd diff = m - Eigen::MatrixXcd::Identity(n, n);
                           Eigen::JacobiSVD<Eigen::MatrixXcd> svd(diff);
                           if (n >= 2)
                             rank[shard] = std::max(rank[shard], svd.singularValues()(1));
                           const Complex via_trace = m.trace() - Complex(n - 1.0);
                           eig[shard] = std::max(
                               eig[shard], std::abs(nontrivial_eigenvalue(r) - via_trace));
                           for (int j = 0; j < k - 1; ++j)
                             fixed[shard] = std::max(
                                 fixed[shard],
                                 (m.col(j) - Eigen::VectorXcd::Unit(n, j)).cwiseAbs().maxCoeff());
                           if (!(tilt_weight(r, Complex(0.5, 0.5)) > 0.0)) weight_viol[shard] += 1.0;
                         }
                       });
        auto vmax = [](const std::vector<double>& v) {
          return *std::max_element(v.begin(), v.end());
        };
        auto vsum = [](const std::vector<double>& v) {
          double s = 0.0;
          for (double x : v) s += x;
          return s;
        };
        rep.add("max_unitarity_defect", vmax(unit), 0.0, 1e-10);
        rep.add("max_second_singular_value", vmax(rank), 0.0, 1e-10);
        rep.add("max_eigenvalue_trace_mismatch", vmax(eig), 0.0, 1e-10);
        rep.add("max_fixed_subspace_defect", vmax(fixed), 0.0, 0.0);
        rep.add("tilt_weight_violations", vsum(weight_viol), 0.0, 0.0);
      });
}

Experiment def2_5_conditioning() {
  return make_experiment(
      "def2_5_conditioning",
      "Definition 2.5 / Eq (1.4): conditional measure pins eigenvalue 1 with multiplicity p",
      [](ExperimentReport& rep, const nlohmann::ordered_json& params, std::uint64_t seed,
         unsigned threads) {
        const long count = param_count(params, 1000);
        const std::uint64_t base = experiment_stream_base(rep.experiment_id);
        rep.params["count"] = count;
        std::vector<double> unit(kMcShards, 0.0), det(kMcShards, 0.0), mult(kMcShards, 0.0);
        for_each_shard(count, seed, base, threads,
                       [&](int shard, long begin, long end, RngStream& rng) {
                         for (long i = begin; i < end; ++i) {
                           const int n = 2 + static_cast<int>(i % 9);
                           const int p = static_cast<int>(i % n);
                           const UnitaryMatrix u = sample_conditional_haar(n, p, rng);
                           unit[shard] = std::max(unit[shard], u.unitarity_defect());
                           const double absdet =
                               std::abs(u.entries.partialPivLu().determinant());
                           det[shard] = std::max(det[shard], std::abs(absdet - 1.0));
                           if (eigenangles(u).pinned_multiplicity() < p) mult[shard] += 1.0;
                         }
                       });
        auto vmax = [](const std::vector<double>& v) {
          return *std::max_element(v.begin(), v.end());
        };
        double violations = 0.0;
        for (double x : mult) violations += x;
        rep.add("max_unitarity_defect", vmax(unit), 0.0, 1e-10);
        rep.add("max_absdet_deviation", vmax(det), 0.0, 1e-8);
        rep.add("multiplicity_violations", violations, 0.0, 0.0);
      });
}

//! Haar moments for one dimension against quadrature of the eigenvalue
//! density: E[Tr u], E|Tr u|^2, E|det(Id - u)|^2.
void haar_moment_block(ExperimentReport& rep, int n, long count, std::uint64_t seed,
                       std::uint64_t base, unsigned threads) {
  struct Row {
    double re_tr, im_tr, abs_tr_sq, det_sq;
  };
  std::vector<Row> rows;
  sample_into(rows, count, seed, base, threads, [n](RngStream& rng) {
    const EigenangleSet set = eigenangles(sample_haar_unitary(n, rng));
    Complex tr = 0.0, det = 1.0;
    for (double a : set.angles) {
      tr += std::polar(1.0, a);
      det *= 1.0 - std::polar(1.0, a);
    }
    return Row{tr.real(), tr.imag(), std::norm(tr), std::norm(det)};
  });
  auto column = [&](auto proj) {
    std::vector<double> xs(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) xs[i] = proj(rows[i]);
    return mc_moment(xs);
  };
  const std::string sfx = "_n" + std::to_string(n);
  add_dev(rep, "dev_re_tr" + sfx, column([](const Row& r) { return r.re_tr; }), 0.0);
  add_dev(rep, "dev_im_tr" + sfx, column([](const Row& r) { return r.im_tr; }), 0.0);

  const auto abs_tr = column([](const Row& r) { return r.abs_tr_sq; });
  const auto det_sq = column([](const Row& r) { return r.det_sq; });
  if (n == 2) {
    // 2D quadrature of the eigenvalue density over (-pi, pi)^2
    auto quad = [&](auto f) {
      return integrate_2d(
                 [&](double a, double b) {
                   const double angles[2] = {a, b};
                   return weyl_density_unitary(angles) * f(a, b);
                 },
                 -kPi, kPi, -kPi, kPi, 1e-9) /
             (4.0 * kPi * kPi);
    };
    const double q_tr =
        quad([](double a, double b) { return std::norm(std::polar(1.0, a) + std::polar(1.0, b)); });
    const double q_det = quad([](double a, double b) {
      return std::norm((1.0 - std::polar(1.0, a)) * (1.0 - std::polar(1.0, b)));
    });
    add_dev(rep, "dev_abs_tr_sq_vs_quad" + sfx, abs_tr, q_tr);
    add_dev(rep, "dev_det_sq_vs_quad" + sfx, det_sq, q_det);
  } else {
    // MC quadrature: average of density x statistic over uniform angles
    struct QRow {
      double tr, det;
    };
    std::vector<QRow> qrows;
    sample_into(qrows, 200000, seed, base + kMcShards, threads, [n](RngStream& rng) {
      std::vector<double> a(n);
      for (int j = 0; j < n; ++j) a[j] = rng.uniform(-kPi, kPi);
      const double w = weyl_density_unitary(a);
      Complex tr = 0.0, det = 1.0;
      for (double x : a) {
        tr += std::polar(1.0, x);
        det *= 1.0 - std::polar(1.0, x);
      }
      return QRow{w * std::norm(tr), w * std::norm(det)};
    });
    std::vector<double> qt(qrows.size()), qd(qrows.size());
    for (std::size_t i = 0; i < qrows.size(); ++i) {
      qt[i] = qrows[i].tr;
      qd[i] = qrows[i].det;
    }
    const auto mtr = mc_moment(qt);
    const auto mdet = mc_moment(qd);
    const double setr = std::hypot(abs_tr.std_error, mtr.std_error);
    const double sedet = std::hypot(det_sq.std_error, mdet.std_error);
    rep.add("dev_abs_tr_sq_vs_quad" + sfx, abs_tr.value - mtr.value, setr, 4.0 * setr);
    rep.add("dev_det_sq_vs_quad" + sfx, det_sq.value - mdet.value, sedet, 4.0 * sedet);
  }
}

Experiment eq1_1_haar_moments() {
  return make_experiment(
      "eq1_1_haar_moments",
      "Theorem 2.2 / Eq (1.1) / Theorem 3.4: Haar class-function moments vs Weyl quadrature",
      [](ExperimentReport& rep, const nlohmann::ordered_json& params, std::uint64_t seed,
         unsigned threads) {
        const long count = param_count(params, 100000);
        const std::uint64_t base = experiment_stream_base(rep.experiment_id);
        rep.params["count"] = count;
        haar_moment_block(rep, 2, count, seed, base, threads);
        haar_moment_block(rep, 3, count, seed, base + 2 * kMcShards, threads);
      });
}

Experiment eq2_3_det_moment() {
  return make_experiment(
      "eq2_3_det_moment", "Eq (2.3) / Section 3.3: E|det(Id - u)|^2 = n + 1 under Haar measure",
      [](ExperimentReport& rep, const nlohmann::ordered_json& params, std::uint64_t seed,
         unsigned threads) {
        const long count = param_count(params, 100000);
        const std::uint64_t base = experiment_stream_base(rep.experiment_id);
        rep.params["count"] = count;
        for (int n = 2; n <= 6; ++n) {
          std::vector<double> xs;
          sample_into(xs, count, seed, base + (n - 2) * kMcShards, threads, [n](RngStream& rng) {
            const UnitaryMatrix u = sample_haar_unitary(n, rng);
            const Complex det = (Eigen::MatrixXcd::Identity(n, n) - u.entries)
                                    .partialPivLu()
                                    .determinant();
            return std::norm(det);
          });
          add_dev(rep, "dev_det_sq_n" + std::to_string(n), mc_moment(xs), n + 1.0);
        }
      });
}

Experiment prop2_4_conditioned_abs() {
  return make_experiment(
      "prop2_4_conditioned_abs",
      "Proposition 2.4 / Eqs (2.6)-(2.7): Haar measure conditioned on |Z(1)| = x",
      [](ExperimentReport& rep, const nlohmann::ordered_json& params, std::uint64_t seed,
         unsigned threads) {
        const long count = param_count(params, 2000);
        const std::uint64_t base = experiment_stream_base(rep.experiment_id);
        rep.params["count"] = count;
        const int n = 3;

        // exactness of the conditioning at x = 0.5
        {
          std::vector<double> dev(count);
          std::vector<double> attempts(count);
          for_each_shard(count, seed, base, threads,
                         [&](int, long begin, long end, RngStream& rng) {
                           for (long i = begin; i < end; ++i) {
                             const auto s = sample_conditioned_on_abs_z(n, 0.5, rng);
                             const Complex det =
                                 (Eigen::MatrixXcd::Identity(n, n) - s.u.entries)
                                     .partialPivLu()
                                     .determinant();
                             dev[i] = std::abs(std::abs(det) - 0.5);
                             attempts[i] = static_cast<double>(s.attempts);
                           }
                         });
          rep.add("max_absdet_deviation_x05", *std::max_element(dev.begin(), dev.end()), 0.0,
                  1e-9);
          double att = 0.0;
          for (double a : attempts) att += a;
          rep.add("acceptance_rate_x05", count / att, 0.0, std::nullopt);
        }

        // x -> 0 limit: first-factor pivot modulus indistinguishable from nu
        {
          std::vector<double> cond_piv, free_piv;
          sample_into(cond_piv, count, seed, base + kMcShards, threads, [n](RngStream& rng) {
            return std::abs(sample_conditioned_on_abs_z(n, 1e-8, rng).pivots(0));
          });
          sample_into(free_piv, count, seed, base + 2 * kMcShards, threads, [n](RngStream& rng) {
            return std::abs(sample_nu(n, 1, rng).pivot_entry());
          });
          add_pvalue(rep, "ks_pivot_x_to_0", ks_two_sample(cond_piv, free_piv).p_value);
        }

        // n = 2, x = 1: acceptance probability, logged
        {
          std::vector<double> attempts;
          sample_into(attempts, count, seed, base + 3 * kMcShards, threads, [](RngStream& rng) {
            return static_cast<double>(sample_conditioned_on_abs_z(2, 1.0, rng).attempts);
          });
          double att = 0.0;
          for (double a : attempts) att += a;
          rep.add("acceptance_rate_n2_x1", count / att, 0.0, std::nullopt);
        }
      });
}

Experiment def2_5_last_eigenvalue() {
  return make_experiment(
      "def2_5_last_eigenvalue",
      "Definition 2.5 at p = n-1: law of the single nontrivial eigenangle",
      [](ExperimentReport& rep, const nlohmann::ordered_json& params, std::uint64_t seed,
         unsigned threads) {
        const long count = param_count(params, 10000);
        const std::uint64_t base = experiment_stream_base(rep.experiment_id);
        const int n = 6;
        rep.params["count"] = count;
        rep.params["n"] = n;
        std::vector<double> matrix_route, direct_route;
        sample_into(matrix_route, count, seed, base, threads, [n](RngStream& rng) {
          const EigenangleSet set = eigenangles(sample_conditional_haar(n, n - 1, rng));
          double best = 0.0;
          for (double a : set.angles)
            if (std::abs(a) > std::abs(best)) best = a;
          return best;
        });
        sample_into(direct_route, count, seed, base + kMcShards, threads, [n](RngStream& rng) {
          const double theta = rng.uniform(-kPi, kPi);
          const double r = std::sqrt(sample_beta(1.0, n - 1.0, rng));
          const Complex x = std::polar(r, theta);
          return std::arg(-(1.0 - x) / (1.0 - std::conj(x)));
        });
        add_pvalue(rep, "ks_nontrivial_angle", ks_two_sample(matrix_route, direct_route).p_value);
      });
}

Experiment lemma3_1_rotation() {
  return make_experiment(
      "lemma3_1_rotation", "Lemma 3.1: spectrum of e^{i theta} r(1)...r(n-1) is Haar",
      [](ExperimentReport& rep, const nlohmann::ordered_json& params, std::uint64_t seed,
         unsigned threads) {
        const long count = param_count(params, 10000);
        const std::uint64_t base = experiment_stream_base(rep.experiment_id);
        const int n = 5;
        rep.params["count"] = count;
        rep.params["n"] = n;
        ks_suite(rep, "", count, seed, base, threads, 0,
                 [n](RngStream& rng) { return sample_rotated_conditional(n, rng); },
                 [n](RngStream& rng) { return sample_haar_unitary(n, rng); });
      });
}

Experiment lemma3_3_slip() {
  return make_experiment(
      "lemma3_3_slip", "Lemma 3.3: r(1)...r(n-1) and r_1(2)...r_1(n) share their spectrum law",
      [](ExperimentReport& rep, const nlohmann::ordered_json& params, std::uint64_t seed,
         unsigned threads) {
        const long count = param_count(params, 10000);
        const std::uint64_t base = experiment_stream_base(rep.experiment_id);
        const int n = 5;
        rep.params["count"] = count;
        rep.params["n"] = n;
        ks_suite(rep, "", count, seed, base, threads, 1,
                 [n](RngStream& rng) { return sample_conditional_haar(n, 1, rng); },
                 [n](RngStream& rng) { return sample_conditional_slipped(n, 1, rng); });
      });
}

Experiment eq3_2_slip() {
  return make_experiment(
      "eq3_2_slip", "Eq (3.2): iterated slip at p = 2, plus the exact tilted second moment",
      [](ExperimentReport& rep, const nlohmann::ordered_json& params, std::uint64_t seed,
         unsigned threads) {
        const long count = param_count(params, 10000);
        const std::uint64_t base = experiment_stream_base(rep.experiment_id);
        const int n = 6, p = 2;
        rep.params["count"] = count;
        rep.params["n"] = n;
        rep.params["p"] = p;
        ks_suite(rep, "", count, seed, base, threads, p,
                 [](RngStream& rng) { return sample_conditional_haar(6, 2, rng); },
                 [](RngStream& rng) { return sample_conditional_slipped(6, 2, rng); });
        std::vector<double> zsq;
        sample_into(zsq, 2 * count, seed, base + 2 * kMcShards, threads, [](RngStream& rng) {
          const UnitaryMatrix u = sample_conditional_slipped(6, 2, rng);
          const Complex z = z_derivative(eigenangles(u), 2);
          return std::norm(z / 2.0);  // |Z^(p) / p!|^2
        });
        add_dev(rep, "dev_z_sq_moment", mc_moment(zsq), expected_sq_modulus_zp(n, p));
      });
}

Experiment general_slip() {
  return make_experiment(
      "general_slip", "Section 3.2 remark: generalized slipping with complex tilts",
      [](ExperimentReport& rep, const nlohmann::ordered_json& params, std::uint64_t seed,
         unsigned threads) {
        const long count = param_count(params, 10000);
        const std::uint64_t base = experiment_stream_base(rep.experiment_id);
        rep.params["count"] = count;
        {
          const std::vector<Complex> deltas{1.0, 0.5};
          ks_suite(rep, "_real", count, seed, base, threads, 2,
                   [deltas](RngStream& rng) {
                     return sample_generalized_slip(4, deltas, rng).first;
                   },
                   [deltas](RngStream& rng) {
                     return sample_generalized_slip(4, deltas, rng).second;
                   });
        }
        {
          const std::vector<Complex> deltas{Complex(0.5, 0.5)};
          ks_suite(rep, "_complex", count, seed, base + 4 * kMcShards, threads, 2,
                   [deltas](RngStream& rng) {
                     return sample_generalized_slip(3, deltas, rng).first;
                   },
                   [deltas](RngStream& rng) {
                     return sample_generalized_slip(3, deltas, rng).second;
                   });
        }
      });
}

Experiment def3_2_tilted() {
  return make_experiment(
      "def3_2_tilted", "Definition 3.2: exp_delta-sampling of the pivot law",
      [](ExperimentReport& rep, const nlohmann::ordered_json& params, std::uint64_t seed,
         unsigned threads) {
        const long count = param_count(params, 100000);
        const std::uint64_t base = experiment_stream_base(rep.experiment_id);
        rep.params["count"] = count;

        // delta = 0 reduces to the plain sphere-coordinate law
        {
          std::vector<double> xs;
          sample_into(xs, 10000, seed, base, threads, [](RngStream& rng) {
            return std::norm(sample_tilted_coord(TiltedLaw(2.0, 0.0), rng));
          });
          add_pvalue(rep, "ks_delta0_vs_beta",
                     ks_vs_cdf(xs, [](double x) { return beta_cdf(1.0, 2.0, x); }).p_value);
        }
        // lambda = 1, delta = 1: E|1 - Y|^2 = 20/9
        {
          std::vector<double> xs;
          sample_into(xs, count, seed, base + kMcShards, threads, [](RngStream& rng) {
            return std::norm(1.0 - sample_tilted_coord(TiltedLaw(1.0, 1.0), rng));
          });
          add_dev(rep, "dev_tilted_sq_moment", mc_moment(xs), 20.0 / 9.0);
          rep.add("tilted_sq_moment_closed_form", tilted_mf(1.0, 1.0, 2.0, 0.0), 0.0,
                  std::nullopt);
        }
        // lambda = 0 (circular base), delta = 1: E cos(arg Y) = -1/2
        {
          std::vector<double> xs;
          sample_into(xs, count, seed, base + 2 * kMcShards, threads, [](RngStream& rng) {
            return std::cos(std::arg(sample_tilted_coord(TiltedLaw(0.0, 1.0), rng)));
          });
          add_dev(rep, "dev_circular_cos_moment", mc_moment(xs), -0.5);
        }
      });
}

Experiment eq1_2_conditional_density() {
  return make_experiment(
      "eq1_2_conditional_density", "Eq (1.2): conditional eigenvalue density at n - p = 1",
      [](ExperimentReport& rep, const nlohmann::ordered_json& params, std::uint64_t seed,
         unsigned threads) {
        const long count = param_count(params, 10000);
        const std::uint64_t base = experiment_stream_base(rep.experiment_id);
        const int n = 3, p = 2;
        rep.params["count"] = count;
        rep.params["n"] = n;
        rep.params["p"] = p;
        std::vector<double> angles;
        sample_into(angles, count, seed, base, threads, [](RngStream& rng) {
          const EigenangleSet set = eigenangles(sample_conditional_haar(3, 2, rng));
          double best = 0.0;
          for (double a : set.angles)
            if (std::abs(a) > std::abs(best)) best = a;
          return best;
        });
        auto density = [p](double theta) {
          const double a[1] = {theta};
          return conditional_density_unitary(a, p);
        };
        const auto cdf = tabulated_cdf(density, -kPi, kPi);
        add_pvalue(rep, "ks_angle_vs_density", ks_vs_cdf(angles, cdf).p_value);
        const double norm_const =
            integrate_1d(density, -kPi, kPi, 1e-10) / (2.0 * kPi);
        rep.add("density_normalization_constant", norm_const, 0.0, std::nullopt);
      });
}

Experiment cor4_1_routes() {
  return make_experiment(
      "cor4_1_routes", "Corollary 4.1: matrix route vs product of tilted independent variables",
      [](ExperimentReport& rep, const nlohmann::ordered_json& params, std::uint64_t seed,
         unsigned threads) {
        const long count = param_count(params, 10000);
        const std::uint64_t base = experiment_stream_base(rep.experiment_id);
        const int n = 8;
        rep.params["count"] = count;
        rep.params["n"] = n;
        int slot = 0;
        for (int p : {1, 2}) {
          std::vector<Complex> matrix_route(count), product_route(count);
          {
            std::vector<Complex> tmp;
            sample_into(tmp, count, seed, base + (slot++) * kMcShards, threads,
                        [n, p](RngStream& rng) {
                          return z_derivative(eigenangles(sample_conditional_haar(n, p, rng)), p);
                        });
            matrix_route = std::move(tmp);
            sample_into(tmp, count, seed, base + (slot++) * kMcShards, threads,
                        [n, p](RngStream& rng) { return sample_z_product_unitary(n, p, rng); });
            product_route = std::move(tmp);
          }
          std::vector<double> abs_a(count), abs_b(count), arg_a(count), arg_b(count);
          for (long i = 0; i < count; ++i) {
            abs_a[i] = std::abs(matrix_route[i]);
            abs_b[i] = std::abs(product_route[i]);
            arg_a[i] = std::arg(matrix_route[i]);
            arg_b[i] = std::arg(product_route[i]);
          }
          const std::string sfx = "_p" + std::to_string(p);
          add_pvalue(rep, "ks_abs_z" + sfx, ks_two_sample(abs_a, abs_b).p_value);
          add_pvalue(rep, "ks_arg_z" + sfx, ks_two_sample(arg_a, arg_b).p_value);

          std::vector<double> sq;
          sample_into(sq, 10 * count, seed, base + (slot++) * kMcShards, threads,
                      [n, p](RngStream& rng) {
                        Complex z = sample_z_product_unitary(n, p, rng);
                        for (int j = 2; j <= p; ++j) z /= static_cast<double>(j);
                        return std::norm(z);
                      });
          add_dev(rep, "dev_z_sq_moment" + sfx, mc_moment(sq), expected_sq_modulus_zp(n, p));
        }
      });
}

Experiment eq4_1_jacobi_n1() {
  return make_experiment(
      "eq4_1_jacobi_n1", "Eq (4.1) at n = 1: Jacobi weight sampling vs the alpha route",
      [](ExperimentReport& rep, const nlohmann::ordered_json& params, std::uint64_t seed,
         unsigned threads) {
        const long count = param_count(params, 100000);
        const std::uint64_t base = experiment_stream_base(rep.experiment_id);
        const double a = 1.5, b = -0.5;
        rep.params["count"] = count;
        rep.params["a"] = a;
        rep.params["b"] = b;
        std::vector<double> direct;
        sample_into(direct, count, seed, base, threads,
                    [a, b](RngStream& rng) { return 2.0 - sample_jacobi_n1(a, b, rng); });
        add_dev(rep, "dev_mean_2_minus_x", mc_moment(direct), 10.0 / 3.0);
        rep.add("fst_route_mean", 2.0 * (1.0 - fst_mean(a + 1.0, b + 1.0)), 0.0, std::nullopt);

        const AlphaSchedule sched = alpha_schedule_general(2.0, a, b, 1);
        std::vector<double> alpha_route;
        sample_into(alpha_route, count, seed, base + kMcShards, threads,
                    [&sched](RngStream& rng) {
                      return sample_jacobi_det_pair(sched, rng).z_plus;
                    });
        add_pvalue(rep, "ks_direct_vs_alpha", ks_two_sample(direct, alpha_route).p_value);

        // a = b = 0 degenerates to the uniform law on (-2, 2)
        std::vector<double> unif;
        sample_into(unif, 10000, seed, base + 2 * kMcShards, threads,
                    [](RngStream& rng) { return sample_jacobi_n1(0.0, 0.0, rng); });
        add_pvalue(rep, "ks_uniform_case",
                   ks_vs_cdf(unif, [](double x) { return (x + 2.0) / 4.0; }).p_value);
      });
}

Experiment eq4_2_killip_nenciu() {
  return make_experiment(
      "eq4_2_killip_nenciu", "Eq (4.2): Killip-Nenciu determinant pair, n = 1 laws and identity",
      [](ExperimentReport& rep, const nlohmann::ordered_json& params, std::uint64_t seed,
         unsigned threads) {
        const long count = param_count(params, 100000);
        const std::uint64_t base = experiment_stream_base(rep.experiment_id);
        rep.params["count"] = count;
        const std::vector<std::pair<double, double>> ab{{-0.5, -0.5}, {1.5, -0.5}, {2.5, 0.5}};
        int slot = 0;
        for (const auto& [a, b] : ab) {
          const AlphaSchedule sched = alpha_schedule_general(2.0, a, b, 1);
          std::vector<double> beta_scaled, alpha_route, identity_dev(count);
          sample_into(beta_scaled, count, seed, base + (slot++) * kMcShards, threads,
                      [a, b](RngStream& rng) {
                        return 4.0 * sample_beta(a + 1.0, b + 1.0, rng);
                      });
          std::vector<DerivativePair> pairs;
          sample_into(pairs, count, seed, base + (slot++) * kMcShards, threads,
                      [&sched](RngStream& rng) { return sample_jacobi_det_pair(sched, rng); });
          alpha_route.resize(count);
          for (long i = 0; i < count; ++i) {
            alpha_route[i] = pairs[i].z_plus;
            const double alpha0 = 1.0 - pairs[i].z_plus / 2.0;
            identity_dev[i] =
                std::abs(pairs[i].z_plus * pairs[i].z_minus - 4.0 * (1.0 - alpha0 * alpha0));
          }
          const std::string sfx = "_a" + short_num(a) + "_b" + short_num(b);
          add_pvalue(rep, "ks_beta_vs_alpha" + sfx, ks_two_sample(beta_scaled, alpha_route).p_value);
          rep.add("max_pair_identity_dev" + sfx,
                  *std::max_element(identity_dev.begin(), identity_dev.end()), 0.0, 1e-12);
        }
      });
}

Experiment def4_2_fst() {
  return make_experiment(
      "def4_2_fst", "Definition 4.2: f_{s,t} moments and the (1-x)/2 beta transform",
      [](ExperimentReport& rep, const nlohmann::ordered_json& params, std::uint64_t seed,
         unsigned threads) {
        const long count = param_count(params, 100000);
        const std::uint64_t base = experiment_stream_base(rep.experiment_id);
        rep.params["count"] = count;
        const std::vector<std::pair<double, double>> st{{1.0, 3.0}, {2.0, 2.0}, {0.5, 2.5}};
        int slot = 0;
        for (const auto& [s, t] : st) {
          std::vector<double> xs;
          sample_into(xs, count, seed, base + (slot++) * kMcShards, threads,
                      [s, t](RngStream& rng) { return sample_fst(s, t, rng); });
          const std::string sfx = "_s" + short_num(s) + "_t" + short_num(t);
          add_dev(rep, "dev_mean" + sfx, mc_moment(xs), fst_mean(s, t));
          std::vector<double> sq(xs.size());
          for (std::size_t i = 0; i < xs.size(); ++i) sq[i] = xs[i] * xs[i];
          add_dev(rep, "dev_second_moment" + sfx, mc_moment(sq), fst_second_moment(s, t));
          const std::size_t ks_count = std::min<std::size_t>(xs.size(), 10000);
          std::vector<double> transformed(ks_count);
          for (std::size_t i = 0; i < ks_count; ++i) transformed[i] = 0.5 * (1.0 - xs[i]);
          add_pvalue(rep, "ks_beta_transform" + sfx,
                     ks_vs_cdf(transformed, [s, t](double x) { return beta_cdf(s, t, x); })
                         .p_value);
        }
      });
}

Experiment cor4_3_moments() {
  return make_experiment(
      "cor4_3_moments", "Corollary 4.3: SO/USp derivative-pair moments vs schedule products",
      [](ExperimentReport& rep, const nlohmann::ordered_json& params, std::uint64_t seed,
         unsigned threads) {
        const long count = param_count(params, 100000);
        const std::uint64_t base = experiment_stream_base(rep.experiment_id);
        const int n = 4;
        rep.params["count"] = count;
        rep.params["n"] = n;
        int slot = 0;
        for (CompactGroup group : {CompactGroup::SO, CompactGroup::USp}) {
          for (const auto& [pp, pm] :
               std::vector<std::pair<int, int>>{{0, 0}, {1, 0}, {1, 1}}) {
            const AlphaSchedule sched = alpha_schedule_group(group, n, pp, pm);
            double m_plus = 2.0, m_minus = 2.0, m_plus_sq = 4.0;
            for (int k = 0; k < sched.count(); ++k) {
              const auto [s, t] = sched.pairs[k];
              const double m1 = fst_mean(s, t), m2 = fst_second_moment(s, t);
              m_plus *= 1.0 - m1;
              m_minus *= (k % 2 == 0) ? 1.0 + m1 : 1.0 - m1;
              m_plus_sq *= 1.0 - 2.0 * m1 + m2;
            }
            std::vector<DerivativePair> pairs;
            sample_into(pairs, count, seed, base + (slot++) * kMcShards, threads,
                        [&sched](RngStream& rng) { return sample_jacobi_det_pair(sched, rng); });
            std::vector<double> plus(count), minus(count), plus_sq(count);
            for (long i = 0; i < count; ++i) {
              plus[i] = pairs[i].z_plus;
              minus[i] = pairs[i].z_minus;
              plus_sq[i] = pairs[i].z_plus * pairs[i].z_plus;
            }
            const std::string sfx = (group == CompactGroup::SO ? "_so" : "_usp") + std::string("_p") +
                                    std::to_string(pp) + std::to_string(pm);
            add_dev(rep, "dev_det_plus" + sfx, mc_moment(plus), m_plus);
            add_dev(rep, "dev_det_minus" + sfx, mc_moment(minus), m_minus);
            add_dev(rep, "dev_det_plus_sq" + sfx, mc_moment(plus_sq), m_plus_sq);
          }
        }
      });
}

Experiment orthogonal_conditional() {
  return make_experiment(
      "orthogonal_conditional",
      "Definition 2.5 remark: conditional Haar on O(n) from real reflections",
      [](ExperimentReport& rep, const nlohmann::ordered_json& params, std::uint64_t seed,
         unsigned threads) {
        const long count = param_count(params, 1000);
        const std::uint64_t base = experiment_stream_base(rep.experiment_id);
        rep.params["count"] = count;
        std::vector<double> orth(kMcShards, 0.0), det(kMcShards, 0.0), mult(kMcShards, 0.0);
        for_each_shard(count, seed, base, threads,
                       [&](int shard, long begin, long end, RngStream& rng) {
                         for (long i = begin; i < end; ++i) {
                           const int n = 2 + static_cast<int>(i % 9);
                           const int p = static_cast<int>(i % n);
                           const Eigen::MatrixXd u = sample_conditional_orthogonal(n, p, rng);
                           const Eigen::MatrixXd g =
                               u.transpose() * u - Eigen::MatrixXd::Identity(n, n);
                           orth[shard] = std::max(orth[shard], g.cwiseAbs().maxCoeff());
                           const double d = u.partialPivLu().determinant();
                           det[shard] = std::max(det[shard], std::abs(std::abs(d) - 1.0));
                           UnitaryMatrix wrapped{u.cast<Complex>()};
                           if (eigenangles(wrapped).pinned_multiplicity() < p) mult[shard] += 1.0;
                         }
                       });
        auto vmax = [](const std::vector<double>& v) {
          return *std::max_element(v.begin(), v.end());
        };
        double violations = 0.0;
        for (double x : mult) violations += x;
        rep.add("max_orthogonality_defect", vmax(orth), 0.0, 1e-10);
        rep.add("max_absdet_deviation", vmax(det), 0.0, 1e-10);
        rep.add("multiplicity_violations", violations, 0.0, 0.0);

        // pivot-square law r_kk^2 ~ B_{1/2,(n-k)/2} at n = 5, k = 1
        std::vector<double> piv;
        sample_into(piv, 10000, seed, base + kMcShards, threads, [](RngStream& rng) {
          const Complex c = sample_nu_real(5, 1, rng).pivot_entry();
          return c.real() * c.real();
        });
        add_pvalue(rep, "ks_pivot_square",
                   ks_vs_cdf(piv, [](double x) { return beta_cdf(0.5, 2.0, x); }).p_value);
      });
}

Experiment so_usp_change_of_vars() {
  return make_experiment(
      "so_usp_change_of_vars",
      "Section 4: SO/USp eigenvalue statistics map to Jacobi(beta=2, -/+1/2) under x = 2cos(theta)",
      [](ExperimentReport& rep, const nlohmann::ordered_json&, std::uint64_t, unsigned) {
        for (CompactGroup group : {CompactGroup::SO, CompactGroup::USp}) {
          const double a = group == CompactGroup::SO ? -0.5 : 0.5;
          const std::string sfx = group == CompactGroup::SO ? "_so" : "_usp";
          auto angle_weight = [group](double theta) {
            const double arr[1] = {theta};
            return so_usp_density(arr, group);
          };
          auto jacobi_weight = [a](double x) {
            const double arr[1] = {x};
            return jacobi_density(arr, 2.0, a, a);
          };
          for (int power : {1, 2}) {
            const double angle_num = integrate_1d(
                [&](double t) { return angle_weight(t) * std::pow(2.0 - 2.0 * std::cos(t), power); },
                0.0, kPi, 1e-11);
            const double angle_den = integrate_1d(angle_weight, 0.0, kPi, 1e-11);
            const double x_num = integrate_1d(
                [&](double x) { return jacobi_weight(x) * std::pow(2.0 - x, power); }, -2.0, 2.0,
                1e-11);
            const double x_den = integrate_1d(jacobi_weight, -2.0, 2.0, 1e-11);
            rep.add("dev_change_of_vars" + sfx + "_pow" + std::to_string(power),
                    angle_num / angle_den - x_num / x_den, 0.0, 1e-6);
          }
        }
        // the group schedules coincide with the general (beta=2, 2p -/+ 1/2) schedule
        double worst = 0.0;
        for (int n = 1; n <= 6; ++n)
          for (int pp = 0; pp <= 3; ++pp)
            for (int pm = 0; pm <= 3; ++pm) {
              const auto so = alpha_schedule_group(CompactGroup::SO, n, pp, pm);
              const auto so_gen = alpha_schedule_general(2.0, 2.0 * pp - 0.5, 2.0 * pm - 0.5, n);
              const auto usp = alpha_schedule_group(CompactGroup::USp, n, pp, pm);
              const auto usp_gen = alpha_schedule_general(2.0, 2.0 * pp + 0.5, 2.0 * pm + 0.5, n);
              for (int k = 0; k < so.count(); ++k) {
                worst = std::max(worst, std::abs(so.pairs[k].first - so_gen.pairs[k].first));
                worst = std::max(worst, std::abs(so.pairs[k].second - so_gen.pairs[k].second));
                worst = std::max(worst, std::abs(usp.pairs[k].first - usp_gen.pairs[k].first));
                worst = std::max(worst, std::abs(usp.pairs[k].second - usp_gen.pairs[k].second));
              }
            }
        rep.add("max_schedule_table_mismatch", worst, 0.0, 1e-12);
      });
}

}  // namespace

std::vector<Experiment> core_experiments() {
  std::vector<Experiment> out;
  out.push_back(thm2_3_identity());
  out.push_back(def2_1_reflections());
  out.push_back(def2_5_conditioning());
  out.push_back(eq1_1_haar_moments());
  out.push_back(eq2_3_det_moment());
  out.push_back(prop2_4_conditioned_abs());
  out.push_back(def2_5_last_eigenvalue());
  out.push_back(lemma3_1_rotation());
  out.push_back(lemma3_3_slip());
  out.push_back(eq3_2_slip());
  out.push_back(general_slip());
  out.push_back(def3_2_tilted());
  out.push_back(eq1_2_conditional_density());
  out.push_back(cor4_1_routes());
  out.push_back(eq4_1_jacobi_n1());
  out.push_back(eq4_2_killip_nenciu());
  out.push_back(def4_2_fst());
  out.push_back(cor4_3_moments());
  out.push_back(orthogonal_conditional());
  out.push_back(so_usp_change_of_vars());
  return out;
}

}  // namespace condhaar::detail

#pragma once

#include <functional>
#include <span>
#include <vector>

namespace condhaar {

//! Monte Carlo estimate with its standard error and sample count.
struct MomentEstimate {
  double value = 0.0;
  double std_error = 0.0;
  long count = 0;
};

//! Sample mean with std_error = sample standard deviation / sqrt(N). N >= 2.
MomentEstimate mc_moment(std::span<const double> xs);

struct KsResult {
  double statistic = 0.0;
  double p_value = 1.0;
};

//! Asymptotic Kolmogorov survival function Q(lambda) = 2 sum (-1)^{j-1} e^{-2 j^2 lambda^2}.
double kolmogorov_q(double lambda);

//! Two-sample Kolmogorov–Smirnov test; p-value from the asymptotic
//! distribution with effective size n_x n_y / (n_x + n_y). Sizes >= 50.
KsResult ks_two_sample(std::span<const double> xs, std::span<const double> ys);

//! One-sample KS against a given CDF (used by distribution-law oracles).
KsResult ks_vs_cdf(std::span<const double> xs, const std::function<double(double)>& cdf);

struct NormalityReport {
  MomentEstimate mean;
  MomentEstimate variance;
  MomentEstimate skewness;
  MomentEstimate excess_kurtosis;
  double ks_p = 1.0;  //!< KS of the standardized sample against the normal CDF
};

//! Moment diagnostics plus a KS check of the standardized sample vs normal.
//! Requires at least 1e3 points.
NormalityReport normality_check(std::span<const double> xs);

struct SlopeFit {
  double slope = 0.0;
  double std_error = 0.0;
};

//! Least-squares slope of log(histogram density) vs log(epsilon) over
//! logarithmically spaced bins. The default window spans two decades of
//! epsilon ending at the 5th percentile of the sample. Throws when more than
//! 20% of the window bins are empty.
SlopeFit tail_slope(std::span<const double> samples, double window_decades = 2.0,
                    double upper_quantile = 0.05, int bins = 24);

struct CorrEstimate {
  double r = 0.0;
  double std_error = 0.0;
};

//! Pearson correlation with the asymptotic 1/sqrt(N) standard error.
CorrEstimate corr(std::span<const double> xs, std::span<const double> ys);

//! Standard normal CDF.
double normal_cdf(double x);

}  // namespace condhaar

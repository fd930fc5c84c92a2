#include "condhaar/stats.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace condhaar {

MomentEstimate mc_moment(std::span<const double> xs) {
  const long n = static_cast<long>(xs.size());
  if (n < 2) throw std::invalid_argument("mc_moment: need at least 2 samples");
  double mean = 0.0;
  for (double x : xs) mean += x;
  mean /= static_cast<double>(n);
  double ss = 0.0;
  for (double x : xs) ss += (x - mean) * (x - mean);
  const double sd = std::sqrt(ss / static_cast<double>(n - 1));
  return MomentEstimate{mean, sd / std::sqrt(static_cast<double>(n)), n};
}

double kolmogorov_q(double lambda) {
  if (lambda <= 0.0) return 1.0;
  double sum = 0.0;
  for (int j = 1; j <= 100; ++j) {
    const double term = std::exp(-2.0 * j * j * lambda * lambda);
    sum += (j % 2 == 1) ? term : -term;
    if (term < 1e-16) break;
  }
  return std::clamp(2.0 * sum, 0.0, 1.0);
}

KsResult ks_two_sample(std::span<const double> xs, std::span<const double> ys) {
  if (xs.size() < 50 || ys.size() < 50)
    throw std::invalid_argument("ks_two_sample: both samples must have size >= 50");
  std::vector<double> a(xs.begin(), xs.end()), b(ys.begin(), ys.end());
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  const double na = static_cast<double>(a.size()), nb = static_cast<double>(b.size());
  std::size_t i = 0, j = 0;
  double d = 0.0;
  while (i < a.size() && j < b.size()) {
    const double v = std::min(a[i], b[j]);
    while (i < a.size() && a[i] <= v) ++i;
    while (j < b.size() && b[j] <= v) ++j;
    d = std::max(d, std::abs(i / na - j / nb));
  }
  const double neff = na * nb / (na + nb);
  return KsResult{d, kolmogorov_q(d * std::sqrt(neff))};
}

KsResult ks_vs_cdf(std::span<const double> xs, const std::function<double(double)>& cdf) {
  if (xs.size() < 50) throw std::invalid_argument("ks_vs_cdf: sample must have size >= 50");
  std::vector<double> a(xs.begin(), xs.end());
  std::sort(a.begin(), a.end());
  const double n = static_cast<double>(a.size());
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double f = cdf(a[i]);
    d = std::max(d, std::max(std::abs((i + 1) / n - f), std::abs(i / n - f)));
  }
  return KsResult{d, kolmogorov_q(d * std::sqrt(n))};
}

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

NormalityReport normality_check(std::span<const double> xs) {
  const long n = static_cast<long>(xs.size());
  if (n < 1000) throw std::invalid_argument("normality_check: need at least 1e3 samples");
  const double dn = static_cast<double>(n);
  double mean = 0.0;
  for (double x : xs) mean += x;
  mean /= dn;
  double m2 = 0.0, m3 = 0.0, m4 = 0.0;
  for (double x : xs) {
    const double d = x - mean;
    m2 += d * d;
    m3 += d * d * d;
    m4 += d * d * d * d;
  }
  m2 /= dn;
  m3 /= dn;
  m4 /= dn;
  const double sd = std::sqrt(m2);
  const double skew = m3 / (m2 * sd);
  const double kurt = m4 / (m2 * m2) - 3.0;

  NormalityReport rep;
  rep.mean = MomentEstimate{mean, sd / std::sqrt(dn), n};
  // moment-based standard error of the sample variance
  rep.variance = MomentEstimate{m2, std::sqrt(std::max(0.0, m4 - m2 * m2) / dn), n};
  // normal-theory standard errors for the shape statistics
  rep.skewness = MomentEstimate{skew, std::sqrt(6.0 / dn), n};
  rep.excess_kurtosis = MomentEstimate{kurt, std::sqrt(24.0 / dn), n};

  std::vector<double> std_sample(xs.begin(), xs.end());
  for (double& x : std_sample) x = (x - mean) / sd;
  rep.ks_p = ks_vs_cdf(std_sample, normal_cdf).p_value;
  return rep;
}

SlopeFit tail_slope(std::span<const double> samples, double window_decades,
                    double upper_quantile, int bins) {
  if (samples.size() < 100000)
    throw std::invalid_argument("tail_slope: need at least 1e5 samples");
  std::vector<double> a(samples.begin(), samples.end());
  for (double x : a)
    if (!(x > 0.0)) throw std::invalid_argument("tail_slope: samples must be positive");
  std::sort(a.begin(), a.end());
  const double hi = a[static_cast<std::size_t>(upper_quantile * (a.size() - 1))];
  const double lo = hi * std::pow(10.0, -window_decades);

  const double log_lo = std::log(lo), log_hi = std::log(hi);
  const double step = (log_hi - log_lo) / bins;
  std::vector<long> counts(bins, 0);
  for (double x : a) {
    if (x < lo || x >= hi) continue;
    int b = static_cast<int>((std::log(x) - log_lo) / step);
    b = std::clamp(b, 0, bins - 1);
    ++counts[b];
  }

  std::vector<double> lx, ly;
  int empty = 0;
  for (int b = 0; b < bins; ++b) {
    if (counts[b] == 0) {
      ++empty;
      continue;
    }
    const double left = std::exp(log_lo + b * step);
    const double right = std::exp(log_lo + (b + 1) * step);
    const double density = counts[b] / (static_cast<double>(a.size()) * (right - left));
    lx.push_back(0.5 * (std::log(left) + std::log(right)));
    ly.push_back(std::log(density));
  }
  if (empty > bins / 5) throw std::runtime_error("tail_slope: insufficient data in fit window");

  // least squares y = c + slope * x
  const double m = static_cast<double>(lx.size());
  double sx = 0.0, sy = 0.0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    sx += lx[i];
    sy += ly[i];
  }
  const double mx = sx / m, my = sy / m;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    sxx += (lx[i] - mx) * (lx[i] - mx);
    sxy += (lx[i] - mx) * (ly[i] - my);
  }
  const double slope = sxy / sxx;
  double sse = 0.0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    const double resid = ly[i] - my - slope * (lx[i] - mx);
    sse += resid * resid;
  }
  const double se = std::sqrt(sse / std::max(1.0, m - 2.0) / sxx);
  return SlopeFit{slope, se};
}

CorrEstimate corr(std::span<const double> xs, std::span<const double> ys) {
  if (xs.size() != ys.size()) throw std::invalid_argument("corr: size mismatch");
  if (xs.size() < 1000) throw std::invalid_argument("corr: need at least 1e3 samples");
  const double n = static_cast<double>(xs.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, syy = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    syy += (ys[i] - my) * (ys[i] - my);
    sxy += (xs[i] - mx) * (ys[i] - my);
  }
  return CorrEstimate{sxy / std::sqrt(sxx * syy), 1.0 / std::sqrt(n)};
}

}  // namespace condhaar

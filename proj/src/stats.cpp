/** @file
 * Entropy helpers, least squares, chi-square tail probabilities.
 */

#include "di/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "di/common.hpp"

namespace di {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Usage: return "usage";
    case ErrorKind::Parse: return "parse";
    case ErrorKind::Capacity: return "capacity";
    case ErrorKind::Support: return "support";
    case ErrorKind::Domain: return "domain";
    case ErrorKind::Convergence: return "convergence";
  }
  return "unknown";
}

double xlog2x(double x) { return x > 0 ? x * std::log2(x) : 0.0; }

double entropy_bits(const double* p, int n) {
  double h = 0;
  for (int i = 0; i < n; ++i) h -= xlog2x(p[i]);
  return h;
}

double binary_entropy(double p) {
  if (p < 0 || p > 1) fail(ErrorKind::Domain, "binary_entropy: p outside [0,1]");
  return -xlog2x(p) - xlog2x(1 - p);
}

double convolve_bernoulli(double p, double q) {
  if (p < 0 || p > 1 || q < 0 || q > 1)
    fail(ErrorKind::Domain, "convolve_bernoulli: argument outside [0,1]");
  return p * (1 - q) + (1 - p) * q;
}

double kl_bits(const std::vector<double>& p, const std::vector<double>& q) {
  if (p.size() != q.size()) fail(ErrorKind::Domain, "kl_bits: size mismatch");
  double d = 0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] <= 0) continue;
    if (q[i] <= 0) return std::numeric_limits<double>::infinity();
    d += p[i] * std::log2(p[i] / q[i]);
  }
  return d;
}

double ls_slope(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2)
    fail(ErrorKind::Domain, "ls_slope: need two or more points");
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= static_cast<double>(x.size());
  my /= static_cast<double>(x.size());
  double sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  if (sxx == 0) fail(ErrorKind::Domain, "ls_slope: degenerate abscissae");
  return sxy / sxx;
}

namespace {

/// Regularized lower incomplete gamma P(a,x) by series expansion.
double gamma_p_series(double a, double x) {
  double ap = a;
  double sum = 1.0 / a;
  double del = sum;
  for (int i = 0; i < 1000; ++i) {
    ap += 1;
    del *= x / ap;
    sum += del;
    if (std::fabs(del) < std::fabs(sum) * 1e-16) break;
  }
  return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

/// Regularized upper incomplete gamma Q(a,x) by Lentz continued fraction.
double gamma_q_cf(double a, double x) {
  const double tiny = 1e-300;
  double b = x + 1 - a;
  double c = 1 / tiny;
  double d = 1 / b;
  double h = d;
  for (int i = 1; i <= 1000; ++i) {
    double an = -static_cast<double>(i) * (static_cast<double>(i) - a);
    b += 2;
    d = an * d + b;
    if (std::fabs(d) < tiny) d = tiny;
    c = b + an / c;
    if (std::fabs(c) < tiny) c = tiny;
    d = 1 / d;
    double del = d * c;
    h *= del;
    if (std::fabs(del - 1.0) < 1e-16) break;
  }
  return std::exp(-x + a * std::log(x) - std::lgamma(a)) * h;
}

}  // namespace

double chi2_sf(double stat, int dof) {
  if (dof <= 0) fail(ErrorKind::Domain, "chi2_sf: dof must be positive");
  if (stat <= 0) return 1.0;
  double a = 0.5 * dof;
  double x = 0.5 * stat;
  // Series converges fast for x < a+1, the continued fraction otherwise.
  if (x < a + 1) return 1.0 - gamma_p_series(a, x);
  return gamma_q_cf(a, x);
}

Chi2Result chi2_gof(const std::vector<std::int64_t>& counts,
                    const std::vector<double>& probs) {
  if (counts.size() != probs.size() || counts.empty())
    fail(ErrorKind::Domain, "chi2_gof: size mismatch");
  std::int64_t total = 0;
  for (auto c : counts) total += c;
  if (total <= 0) fail(ErrorKind::Domain, "chi2_gof: empty sample");

  // Pool cells with expected count below 5 into one to keep the
  // chi-square approximation honest.
  std::vector<double> exp_counts;
  std::vector<double> obs_counts;
  double pooled_exp = 0, pooled_obs = 0;
  for (std::size_t i = 0; i < counts.size(); ++i) {
    double e = probs[i] * static_cast<double>(total);
    if (e < 5.0) {
      pooled_exp += e;
      pooled_obs += static_cast<double>(counts[i]);
    } else {
      exp_counts.push_back(e);
      obs_counts.push_back(static_cast<double>(counts[i]));
    }
  }
  if (pooled_exp > 0) {
    exp_counts.push_back(pooled_exp);
    obs_counts.push_back(pooled_obs);
  }
  if (exp_counts.size() < 2)
    fail(ErrorKind::Domain, "chi2_gof: fewer than two usable cells");

  Chi2Result r;
  for (std::size_t i = 0; i < exp_counts.size(); ++i) {
    double d = obs_counts[i] - exp_counts[i];
    r.stat += d * d / exp_counts[i];
  }
  r.dof = static_cast<int>(exp_counts.size()) - 1;
  r.p_value = chi2_sf(r.stat, r.dof);
  return r;
}

MeanStderr mean_stderr(const std::vector<double>& xs) {
  if (xs.size() < 2) fail(ErrorKind::Domain, "mean_stderr: need two samples");
  MeanStderr m;
  for (double v : xs) m.mean += v;
  m.mean /= static_cast<double>(xs.size());
  double ss = 0;
  for (double v : xs) ss += (v - m.mean) * (v - m.mean);
  double var = ss / static_cast<double>(xs.size() - 1);
  m.stderr_ = std::sqrt(var / static_cast<double>(xs.size()));
  return m;
}

}  // namespace di

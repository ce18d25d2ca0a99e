#ifndef DI_STATS_HPP
#define DI_STATS_HPP

/** @file
 * Small numerical/statistical utilities: entropy helpers, least
 * squares, and a chi-square goodness-of-fit test (regularized
 * incomplete gamma via series / continued fraction).
 */

#include <cstdint>
#include <vector>

#include "di/common.hpp"

namespace di {

/// x * log2(x) with 0 log 0 = 0.
double xlog2x(double x);

/// KL divergence sum p log2 p/q in bits; +inf on support violation.
double kl_bits(const std::vector<double>& p, const std::vector<double>& q);

/// Least-squares slope of y against x.
double ls_slope(const std::vector<double>& x, const std::vector<double>& y);

/// Upper tail P[Chi2_k >= stat] via the regularized incomplete gamma.
double chi2_sf(double stat, int dof);

/// Chi-square goodness-of-fit statistic and p-value for observed
/// counts against expected probabilities (cells with tiny expectation
/// are pooled into the last cell).
struct Chi2Result {
  double stat = 0;
  int dof = 0;
  double p_value = 0;
};

Chi2Result chi2_gof(const std::vector<std::int64_t>& counts,
                    const std::vector<double>& probs);

/// Mean and standard error of a sample.
struct MeanStderr {
  double mean = 0;
  double stderr_ = 0;
};

MeanStderr mean_stderr(const std::vector<double>& xs);

}  // namespace di

#endif  // DI_STATS_HPP

#ifndef DI_HYPTEST_HPP
#define DI_HYPTEST_HPP

/** @file
 * Testing for causal dependence between paired sequences.
 *
 * H0: the pair follows the model's joint law p(x^n, y^n).
 * H1: y is causally severed from x -- the law is p(x^n || y^{n-1}) p(y^n)
 *     (x still listens to y; y follows its own marginal).
 *
 * The log-likelihood ratio llr = log2 [H0 / H1] = log2 p(y^n || x^n)
 * - log2 p(y^n) has H0-mean I(X^n -> Y^n) and H1-mean -L2(X^n -> Y^n),
 * so the Stein exponents of the two error kinds are the directed
 * information rate and the second directed lautum rate respectively.
 *
 * Neyman-Pearson tests here are deterministic likelihood-ratio
 * threshold tests: atoms are grouped by equal ratio (relative
 * tolerance 1e-12) and whole groups are classified; the reported
 * operating point is the smallest opposite error with the constrained
 * error not exceeding epsilon.
 */

#include <cstdint>
#include <string>
#include <vector>

#include "di/model.hpp"

namespace di {

/// Precomputed y-marginal table for the severed alternative.
struct HypothesisPair {
  const JointProcessModel* model;
  int n = 0;
  std::vector<double> py;  ///< p(y^n), indexed as in y_marginal_table
};

HypothesisPair make_hypothesis_pair(const JointProcessModel& M, int n);

/// Log-likelihood ratio log2 [p0(x,y) / p1(x,y)] in bits.
double llr(const HypothesisPair& hp, const SequencePair& s);

/// Typical-set decision: accept H0 iff |llr/n - rate| < delta, where
/// rate defaults to I(X^n -> Y^n)/n for the pair's model.
bool aep_region_test(const HypothesisPair& hp, const SequencePair& s,
                     double delta, double rate);

/// Exact error probabilities of the typical-set test, plus the
/// achievability bound beta <= 2^{-n(rate - delta)} (1 - alpha).
struct AepReport {
  int n = 0;
  double rate = 0;       ///< centering rate used
  double delta = 0;
  double alpha = 0;      ///< P_H0[reject]
  double beta = 0;       ///< P_H1[accept]
  double beta_bound = 0; ///< 2^{-n(rate-delta)} (1 - alpha)
  bool bound_ok = false;
};

AepReport aep_error_probs(const HypothesisPair& hp, double delta);
AepReport aep_error_probs_at_rate(const HypothesisPair& hp, double delta,
                                  double rate);

/// Monte Carlo version (samples paths under both hypotheses).
AepReport aep_error_probs_mc(const HypothesisPair& hp, double delta,
                             std::int64_t samples, std::uint64_t seed);

/// Deterministic NP point: smallest beta with alpha <= epsilon.
struct NpPoint {
  double err = 0;        ///< the minimized error (beta, or alpha)
  double constrained = 0;///< realized value of the constrained error
  double threshold = 0;  ///< llr threshold (bits) separating the groups
};

NpPoint neyman_pearson_beta(const HypothesisPair& hp, double epsilon);
/// Dual: smallest alpha with beta <= epsilon.
NpPoint neyman_pearson_alpha(const HypothesisPair& hp, double epsilon);

/// Error-exponent estimation across horizons: least-squares slope of
/// -log2(err) vs n over the window {n in n_list : n >= max(n_list)/2}.
struct ExponentReport {
  std::vector<int> n_list;
  std::vector<double> betas;    ///< NP beta at each n
  std::vector<double> alphas;   ///< NP alpha (dual) at each n
  double beta_exponent = 0;     ///< fitted slope, target: di rate
  double alpha_exponent = 0;    ///< fitted slope, target: L2 rate
  double target_di_rate = 0;    ///< directed information rate of model
  double target_l2_rate = 0;    ///< second directed lautum rate
};

ExponentReport exponent_estimates(const JointProcessModel& M,
                                  const std::vector<int>& n_list,
                                  double epsilon);

}  // namespace di

#endif  // DI_HYPTEST_HPP

#ifndef DI_TREEWALK_HPP
#define DI_TREEWALK_HPP

/** @file
 * One-sided marginal computations by prefix-tree walk with a belief
 * over the hidden side's truncated history.
 *
 * The marginal law of X alone is generally not finite-order Markov,
 * but conditioned on a prefix x^{i-1} the hidden y-history tail is a
 * finite latent variable. Walking the x-prefix tree while carrying the
 * unnormalized belief
 *
 *   bel[yh] = P(x^{i-1}, tail_k(y^{i-1}) = yh)
 *
 * yields exact p(x^n), H(X^n), and the no-side-information predictive
 * conditionals p(x_i | x^{i-1}); symmetrically for Y with a belief
 * over x-history tails. Cost is O(alphabet^n * tail states), guarded
 * by the enumeration capacity limit.
 */

#include <cstdint>
#include <functional>
#include <vector>

#include "di/model.hpp"

namespace di {

/// Exact marginal entropy H(X^n) in bits.
double entropy_x_marginal(const JointProcessModel& M, int n);

/// Exact marginal entropy H(Y^n) in bits.
double entropy_y_marginal(const JointProcessModel& M, int n);

/// Prefix values H(X^t) for t = 1..n from one walk (index t-1).
std::vector<double> entropy_x_marginal_prefix(const JointProcessModel& M, int n);
std::vector<double> entropy_y_marginal_prefix(const JointProcessModel& M, int n);

/// Full marginal tables p(x^n) (size nx^n) and p(y^n) (size ny^n),
/// indexed with the FIRST symbol as the most significant digit.
std::vector<double> x_marginal_table(const JointProcessModel& M, int n);
std::vector<double> y_marginal_table(const JointProcessModel& M, int n);

/// Marginal probability of one observed sequence by the belief
/// recursion (no enumeration): p(x^n), resp. p(y^n).
double marginal_prob_x(const JointProcessModel& M, const std::vector<int>& xs);
double marginal_prob_y(const JointProcessModel& M, const std::vector<int>& ys);

/// Visitor over internal nodes of the x-prefix tree: receives depth
/// i (1-based step), the prefix symbols x^{i-1} (length i-1), the
/// prefix probability P(x^{i-1}), and the predictive pmf p(. | x^{i-1})
/// (nx entries). Nodes are visited in lexicographic prefix order.
using PrefixVisitor = std::function<void(int i, const int* prefix,
                                         double prefix_prob, const double* pred)>;
void walk_x_prefixes(const JointProcessModel& M, int n,
                     const PrefixVisitor& visit);

/// Sequential no-side-information predictor for the X marginal;
/// used by simulation paths (same belief recursion, normalized).
class OnlineXMarginal {
 public:
  explicit OnlineXMarginal(const JointProcessModel& M);
  /// Predictive pmf p(x_i | x^{i-1}) into out (nx entries).
  void predict(double* out) const;
  /// Advance the belief with the realized x_i.
  void observe(int x);

 private:
  const JointProcessModel& model_;
  RollingHistory xhist_;
  int step_ = 1;
  std::vector<double> belief_;  ///< posterior over y-history tails
};

/// Sequential predictor for the Y marginal (belief over x-tails).
class OnlineYMarginal {
 public:
  explicit OnlineYMarginal(const JointProcessModel& M);
  /// Predictive pmf p(y_i | y^{i-1}) into out (ny entries).
  void predict(double* out) const;
  /// Advance the belief with the realized y_i.
  void observe(int y);

 private:
  const JointProcessModel& model_;
  RollingHistory yhist_;
  int step_ = 1;
  std::vector<double> belief_;  ///< posterior over x-history tails
};

}  // namespace di

#endif  // DI_TREEWALK_HPP

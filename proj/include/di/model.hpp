#ifndef DI_MODEL_HPP
#define DI_MODEL_HPP

/** @file
 * Finite-alphabet joint process models with truncated-history kernels.
 *
 * A JointProcessModel of order k over alphabets X (size nx) and Y
 * (size ny) factorizes the pair process as, for i = 1..n,
 *
 *   p(x_i | x^{i-1}, y^{i-1}) = B(x_i | tail_k(x), tail_k(y))       (backward)
 *   p(y_i | x^i,     y^{i-1}) = F(y_i | tail_k(x..x_i), tail_k(y))  (forward)
 *
 * so the joint law is p(x^n, y^n) = prod_i B_i F_i, which equals
 * p(x^n || y^{n-1}) p(y^n || x^n) by construction. The derived causal
 * conditional with current-side information,
 *
 *   p(x_i | x^{i-1}, y^i) = B F / sum_x B F,
 *
 * depends only on the same truncated context plus y_i, so all four
 * causally conditioned entropies admit exact finite-state evaluation.
 *
 * Backward kernels are stored per stage m = 0..k (history length),
 * forward kernels per stage m with x-part length min(m+1, k); within a
 * stage, tables are dense in (xcode, ycode) using the packing of
 * context.hpp. Stage table sizes are capacity-guarded.
 */

#include <cstdint>
#include <string>
#include <vector>

#include "di/common.hpp"
#include "di/context.hpp"

namespace di {

/// Probability mass function over a finite alphabet.
struct Pmf {
  std::vector<double> p;

  bool empty() const { return p.empty(); }
  int size() const { return static_cast<int>(p.size()); }
  double operator[](int i) const { return p[i]; }
};

/// Validate a pmf: correct size, entries in [0,1], sum within 1e-12 of 1.
void validate_pmf(const Pmf& f, int size, const std::string& where);

/// An aligned pair of sequences over the model's alphabets.
struct SequencePair {
  std::vector<int> x;
  std::vector<int> y;

  int length() const { return static_cast<int>(x.size()); }
};

/// Dense per-stage kernel table. Entries for unreachable contexts may
/// be empty; reachable ones are checked at validation time.
struct StageTable {
  int xlen = 0;  ///< x-part history length for this stage
  int ylen = 0;  ///< y-part history length for this stage
  std::vector<Pmf> cells;  ///< index = xcode * ny^ylen + ycode

  std::int64_t index(std::int64_t xcode, std::int64_t ycode, int ny) const {
    return xcode * ipow(ny, ylen) + ycode;
  }
};

struct JointProcessModel {
  int nx = 0;     ///< x-alphabet size (symbols are indices 0..nx-1)
  int ny = 0;     ///< y-alphabet size
  int order = 0;  ///< history length k

  /// backward[m], m = 0..k: p(x_i | x-hist len m, y-hist len m)
  std::vector<StageTable> backward;
  /// forward[m], m = 0..k: p(y_i | x-part len min(m+1,k), y-hist len m)
  std::vector<StageTable> forward;

  const Pmf& backward_at(int m, std::int64_t xcode, std::int64_t ycode) const;
  const Pmf& forward_at(int m, std::int64_t xcode, std::int64_t ycode) const;

  /// Stage (= common history length) at 1-based step i.
  int stage_at(int i) const { return i - 1 < order ? i - 1 : order; }

  /// Forward-context x-code: append x to the backward x-history.
  std::int64_t forward_xcode(int m, std::int64_t xcode, int x) const {
    if (order == 0) return 0;
    if (m < order) return xcode + static_cast<std::int64_t>(x) * ipow(nx, m);
    return xcode / nx + static_cast<std::int64_t>(x) * ipow(nx, order - 1);
  }
};

/// Rolling joint context state while scanning a sequence pair.
struct HistState {
  int m = 0;  ///< min(steps seen, order)
  std::int64_t xcode = 0;
  std::int64_t ycode = 0;

  void advance(const JointProcessModel& M, int x, int y) {
    if (m < M.order) {
      xcode += static_cast<std::int64_t>(x) * ipow(M.nx, m);
      ycode += static_cast<std::int64_t>(y) * ipow(M.ny, m);
      ++m;
    } else if (M.order > 0) {
      xcode = xcode / M.nx + static_cast<std::int64_t>(x) * ipow(M.nx, M.order - 1);
      ycode = ycode / M.ny + static_cast<std::int64_t>(y) * ipow(M.ny, M.order - 1);
    }
  }
};

/// Structural + stochastic validation: alphabet bounds, stage shapes,
/// pmf normalization, and presence of every kernel entry reachable
/// from the empty history through positive-probability transitions.
void validate_model(const JointProcessModel& M);

/// Derived conditional p(x_i | x^{i-1}, y^i) at context (m,xcode,ycode)
/// and observed y. Writes nx entries to out; errors if p(y_i|past) = 0.
void bayes_posterior(const JointProcessModel& M, int m, std::int64_t xcode,
                     std::int64_t ycode, int y, double* out);

/// Marginalized forward step p(y_i | x^{i-1}, y^{i-1}) =
/// sum_x B(x) F(y | ..x). Writes ny entries to out.
void marginal_forward(const JointProcessModel& M, int m, std::int64_t xcode,
                      std::int64_t ycode, double* out);

/// Joint probability p(x^n, y^n) of an aligned pair (product of kernel
/// terms; evaluated in the log domain when length exceeds 32).
double joint_prob(const JointProcessModel& M, const SequencePair& s);
double log2_joint_prob(const JointProcessModel& M, const SequencePair& s);

/// Causally conditioned sequence probabilities. delay d in {0,1}:
///   x given y: p(x^n || y^{n-d}) ; y given x: p(y^n || x^{n-d}).
double log2_causal_cond_x(const JointProcessModel& M, const SequencePair& s,
                          int delay);
double log2_causal_cond_y(const JointProcessModel& M, const SequencePair& s,
                          int delay);

/// Draw one length-n pair from the model (deterministic in seed).
SequencePair sample_pair(const JointProcessModel& M, int n, std::uint64_t seed);

/// JSON serialization. Kernels are keyed by chronological context keys
/// ("x:0,1|y:1"); loading validates, saving canonicalizes key order.
JointProcessModel load_model_json(const std::string& path);
JointProcessModel parse_model_json(const std::string& text);
std::string model_to_json(const JointProcessModel& M);
void save_model_json(const JointProcessModel& M, const std::string& path);

/// Two-state benchmark family: X is a symmetric binary Markov chain
/// with stay probability p (uniform start), Y a memoryless observation
/// of X through a binary symmetric channel with crossover q.
JointProcessModel make_example1_model(double p, double q);

/// Memoryless noisy copy: X iid uniform bits, Y = X through BSC(q).
JointProcessModel make_noisy_copy_model(double q);

/// Options for random model generation.
struct RandomModelOptions {
  bool no_feedback = false;        ///< backward kernel ignores y-history
  bool memoryless_forward = false; ///< forward kernel sees only current x
  double alpha = 1.0;              ///< Dirichlet concentration
};

/// Random model with Dirichlet(alpha) kernel rows, deterministic in seed.
JointProcessModel random_model(int nx, int ny, int order, std::uint64_t seed,
                               const RandomModelOptions& opts = {});

/// Check that the backward kernel ignores the y-history (no feedback).
bool has_no_feedback(const JointProcessModel& M, double tol = 1e-12);

/// Severed product law of a no-feedback model: same x-marginal process,
/// y generated by the marginalized forward law driven only by x^{i-1}
/// (the current x-input is integrated out). Returns an order-(k+1)
/// model; errors on models with feedback.
JointProcessModel sever_feedback(const JointProcessModel& M);

}  // namespace di

#endif  // DI_MODEL_HPP

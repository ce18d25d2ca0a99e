#ifndef DI_CHAIN_HPP
#define DI_CHAIN_HPP

/** @file
 * Exact context-chain dynamic programming.
 *
 * Because both kernels condition on truncated histories, the pair
 * (tail_k x, tail_k y) is a Markov state. Propagating its distribution
 * rho_i layer by layer gives exact per-step expectations of any local
 * functional in O(n * |state| * nx * ny) time for any horizon n:
 *
 *   all four causally conditioned entropies H(X^n || Y^{n-d}),
 *   H(Y^n || X^{n-d}) for d in {0,1}, the joint entropy H(X^n, Y^n),
 *   expected code lengths, and expected log-wealth terms.
 *
 * Layer t holds rho over (xcode, ycode) at stage m = min(t, k); the
 * state space is tiny at desk scale (e.g. 4 states for binary k = 1).
 */

#include <cstdint>
#include <functional>
#include <vector>

#include "di/model.hpp"

namespace di {

/// Distribution over joint truncated-history states at one time step.
struct ChainLayer {
  int m = 0;                 ///< stage (history length)
  std::vector<double> rho;   ///< size nx^m * ny^m, index xcode*ny^m+ycode
};

/// Per-step visitor: called once per time step i = 1..n with the
/// pre-step layer. Implementations accumulate expectations using the
/// model kernels at each positive-probability state.
using ChainVisitor = std::function<void(int i, const ChainLayer& layer)>;

/// Run the chain for n steps, invoking visit before each transition.
void run_chain(const JointProcessModel& M, int n, const ChainVisitor& visit);

/// Entropy accumulations from one chain pass.
struct ChainEntropies {
  double h_joint = 0;        ///< H(X^n, Y^n)
  double h_x_causal = 0;     ///< H(X^n || Y^n)    (current side info)
  double h_x_delayed = 0;    ///< H(X^n || Y^{n-1})
  double h_y_causal = 0;     ///< H(Y^n || X^n)
  double h_y_delayed = 0;    ///< H(Y^n || X^{n-1})
};

/// All five chain entropies in one pass (bits).
ChainEntropies chain_entropies(const JointProcessModel& M, int n);

/// Per-horizon prefix values: out[t-1] holds the entropies for horizon t,
/// t = 1..n, from a single pass.
std::vector<ChainEntropies> chain_entropies_prefix(const JointProcessModel& M,
                                                   int n);

}  // namespace di

#endif  // DI_CHAIN_HPP

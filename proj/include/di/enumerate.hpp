#ifndef DI_ENUMERATE_HPP
#define DI_ENUMERATE_HPP

/** @file
 * Exhaustive sequence-pair enumeration.
 *
 * Quantities with no chain or tree decomposition (the lautum family,
 * mismatch redundancies, likelihood-ratio tests) are computed by
 * enumerating all nx^n * ny^n aligned pairs. A single rolling pass per
 * pair yields the joint probability and all four causally conditioned
 * sequence probabilities in O(n * nx) time.
 *
 * Enumeration order is lexicographic with x_1 as the most significant
 * digit and the whole y-sequence minor to the whole x-sequence; sums
 * use the fixed blocked reduction of parallel.hpp, so serial and
 * OpenMP execution produce bitwise-identical results.
 */

#include <cstdint>
#include <functional>
#include <vector>

#include "di/model.hpp"

namespace di {

/// Pair count nx^n * ny^n; errors with a capacity message if it
/// exceeds the enumeration guard.
std::int64_t checked_pair_count(const JointProcessModel& M, int n);
std::int64_t checked_pair_count(int nx, int ny, int n);

/// Decode flat pair index (x major, y minor, first symbol most
/// significant) into sequences of length n.
void decode_pair(std::int64_t idx, int n, int nx, int ny, int* xs, int* ys);

/// Per-pair probabilities from one rolling pass.
struct PairTerms {
  double joint;       ///< p(x^n, y^n)
  double x_causal;    ///< p(x^n || y^n)
  double x_delayed;   ///< p(x^n || y^{n-1})
  double y_causal;    ///< p(y^n || x^n)
  double y_delayed;   ///< p(y^n || x^{n-1})
};

PairTerms pair_terms(const JointProcessModel& M, const int* xs, const int* ys,
                     int n);

/// Deterministic sum of f over all pairs (blocked reduction).
double enumerate_sum(const JointProcessModel& M, int n,
                     const std::function<double(const PairTerms&,
                                                const int* xs,
                                                const int* ys)>& f);

/// Like enumerate_sum but accumulates k components at once.
void enumerate_sum_k(const JointProcessModel& M, int n, int k,
                     const std::function<void(const PairTerms&, const int* xs,
                                              const int* ys, double* acc)>& f,
                     double* out);

}  // namespace di

#endif  // DI_ENUMERATE_HPP

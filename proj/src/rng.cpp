/** @file
 * Sampling primitives (deterministic in seed and index order).
 */

#include "di/rng.hpp"

#include <cmath>

#include "di/common.hpp"

namespace di {

int sample_index(const std::vector<double>& pmf, std::mt19937_64& g) {
  double u = canonical(g);
  double acc = 0;
  int last_positive = -1;
  for (std::size_t i = 0; i < pmf.size(); ++i) {
    if (pmf[i] <= 0) continue;
    last_positive = static_cast<int>(i);
    acc += pmf[i];
    if (u < acc) return static_cast<int>(i);
  }
  // Rounding can leave acc slightly below 1; attribute the sliver to the
  // last positive outcome.
  if (last_positive < 0) fail(ErrorKind::Domain, "sample_index: empty pmf");
  return last_positive;
}

std::vector<double> dirichlet(int size, double alpha, std::mt19937_64& g) {
  if (size <= 0 || alpha <= 0)
    fail(ErrorKind::Domain, "dirichlet: need size > 0 and alpha > 0");
  std::gamma_distribution<double> gamma(alpha, 1.0);
  std::vector<double> v(size);
  double sum = 0;
  for (int i = 0; i < size; ++i) {
    v[i] = gamma(g);
    sum += v[i];
  }
  if (sum <= 0) {
    // Vanishingly unlikely; fall back to uniform.
    for (int i = 0; i < size; ++i) v[i] = 1.0 / size;
    return v;
  }
  for (int i = 0; i < size; ++i) v[i] /= sum;
  return v;
}

}  // namespace di

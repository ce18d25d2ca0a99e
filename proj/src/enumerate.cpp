/** @file
 * Exhaustive sequence-pair enumeration with deterministic reduction.
 */

#include "di/enumerate.hpp"

#include <cmath>

#include "di/parallel.hpp"

namespace di {

std::int64_t checked_pair_count(int nx, int ny, int n) {
  double atoms = 1;
  for (int i = 0; i < n; ++i) {
    atoms *= static_cast<double>(nx) * static_cast<double>(ny);
    if (atoms > kEnumGuard)
      fail(ErrorKind::Capacity,
           "sequence-pair enumeration exceeds the capacity guard");
  }
  return static_cast<std::int64_t>(atoms);
}

std::int64_t checked_pair_count(const JointProcessModel& M, int n) {
  return checked_pair_count(M.nx, M.ny, n);
}

void decode_pair(std::int64_t idx, int n, int nx, int ny, int* xs, int* ys) {
  std::int64_t ny_n = ipow(ny, n);
  std::int64_t xi = idx / ny_n;
  std::int64_t yi = idx % ny_n;
  for (int i = n - 1; i >= 0; --i) {
    xs[i] = static_cast<int>(xi % nx);
    xi /= nx;
    ys[i] = static_cast<int>(yi % ny);
    yi /= ny;
  }
}

PairTerms pair_terms(const JointProcessModel& M, const int* xs, const int* ys,
                     int n) {
  PairTerms t{1, 1, 1, 1, 1};
  HistState h;
  for (int i = 0; i < n; ++i) {
    const int x = xs[i], y = ys[i];
    const Pmf& b = M.backward_at(h.m, h.xcode, h.ycode);

    // bf[x'] = B(x') F(y | ..x'); den = p(y_i | x^{i-1}, y^{i-1}).
    double den = 0, bfx = 0, fx = 0;
    for (int xp = 0; xp < M.nx; ++xp) {
      if (b[xp] <= 0) {
        if (xp == x) fx = 0;
        continue;
      }
      double f = M.forward_at(h.m, M.forward_xcode(h.m, h.xcode, xp), h.ycode)[y];
      double w = b[xp] * f;
      den += w;
      if (xp == x) {
        bfx = w;
        fx = f;
      }
    }
    // When B(x) = 0 the forward factor still matters for y_causal.
    if (b[x] <= 0)
      fx = M.forward_at(h.m, M.forward_xcode(h.m, h.xcode, x), h.ycode)[y];

    t.joint *= bfx;
    t.x_delayed *= b[x];
    t.y_causal *= fx;
    t.y_delayed *= den;
    t.x_causal = den > 0 ? t.x_causal * (bfx / den) : 0.0;

    h.advance(M, x, y);
  }
  return t;
}

double enumerate_sum(const JointProcessModel& M, int n,
                     const std::function<double(const PairTerms&, const int*,
                                                const int*)>& f) {
  double out = 0;
  enumerate_sum_k(
      M, n, 1,
      [&](const PairTerms& t, const int* xs, const int* ys, double* acc) {
        acc[0] += f(t, xs, ys);
      },
      &out);
  return out;
}

namespace {

/// Enumeration visits every pair, including zero-probability paths, so
/// the causal products must be defined on every context, not only the
/// reachable ones.
void require_full_tables(const JointProcessModel& M) {
  for (const auto* stages : {&M.backward, &M.forward})
    for (const StageTable& t : *stages)
      for (const Pmf& f : t.cells)
        if (f.empty())
          fail(ErrorKind::Domain,
               "pair enumeration requires kernels on all contexts "
               "(model leaves some unreachable contexts unspecified)");
}

}  // namespace

void enumerate_sum_k(const JointProcessModel& M, int n, int k,
                     const std::function<void(const PairTerms&, const int*,
                                              const int*, double*)>& f,
                     double* out) {
  require_full_tables(M);
  const std::int64_t atoms = checked_pair_count(M, n);
  std::vector<double> sums = blocked_sum_k(atoms, k, [&](std::int64_t idx, double* acc) {
    int xs[64], ys[64];
    decode_pair(idx, n, M.nx, M.ny, xs, ys);
    PairTerms t = pair_terms(M, xs, ys, n);
    f(t, xs, ys, acc);
  });
  for (int j = 0; j < k; ++j) out[j] = sums[static_cast<std::size_t>(j)];
}

}  // namespace di

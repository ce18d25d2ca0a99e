/** @file
 * Deterministic blocked reduction with a serial/OpenMP mode switch.
 *
 * The block decomposition depends only on the range length, each block
 * is reduced serially in index order, and partials are combined in
 * block order; the execution mode decides only which thread computes
 * each block. Serial and OpenMP results are therefore bitwise equal.
 */

#include "di/parallel.hpp"

#ifdef DI_HAVE_OPENMP
#include <omp.h>
#endif

#include <algorithm>

namespace di {

namespace {

ExecMode g_mode =
#ifdef DI_HAVE_OPENMP
    ExecMode::OpenMP;
#else
    ExecMode::Serial;
#endif

int g_threads = 0;  // 0 = runtime default

}  // namespace

ExecMode exec_mode() { return g_mode; }

void set_exec_mode(ExecMode mode) {
#ifndef DI_HAVE_OPENMP
  mode = ExecMode::Serial;
#endif
  g_mode = mode;
}

bool openmp_available() {
#ifdef DI_HAVE_OPENMP
  return true;
#else
  return false;
#endif
}

int worker_threads() {
#ifdef DI_HAVE_OPENMP
  if (g_mode == ExecMode::OpenMP)
    return g_threads > 0 ? g_threads : omp_get_max_threads();
#endif
  return 1;
}

void set_worker_threads(int n) { g_threads = n > 0 ? n : 0; }

std::int64_t reduction_blocks(std::int64_t n) {
  if (n <= 0) return 0;
  // Enough blocks to spread load at any plausible thread count while
  // keeping per-block work nontrivial. Fixed by n alone.
  const std::int64_t target = 256;
  const std::int64_t min_block = 1024;
  std::int64_t blocks = std::min<std::int64_t>(target, (n + min_block - 1) / min_block);
  return std::max<std::int64_t>(1, blocks);
}

double blocked_sum(std::int64_t n,
                   const std::function<double(std::int64_t)>& body) {
  std::vector<double> partials =
      blocked_sum_k(n, 1, [&](std::int64_t i, double* acc) { acc[0] += body(i); });
  return partials[0];
}

std::vector<double> blocked_sum_k(
    std::int64_t n, int k,
    const std::function<void(std::int64_t, double*)>& body) {
  std::vector<double> out(static_cast<std::size_t>(k), 0.0);
  if (n <= 0) return out;
  const std::int64_t nb = reduction_blocks(n);
  const std::int64_t per = (n + nb - 1) / nb;
  std::vector<double> partials(static_cast<std::size_t>(nb * k), 0.0);

  auto run_block = [&](std::int64_t b) {
    const std::int64_t lo = b * per;
    const std::int64_t hi = std::min(n, lo + per);
    double* acc = partials.data() + b * k;
    for (std::int64_t i = lo; i < hi; ++i) body(i, acc);
  };

#ifdef DI_HAVE_OPENMP
  if (g_mode == ExecMode::OpenMP) {
    int nt = worker_threads();
#pragma omp parallel for schedule(dynamic) num_threads(nt)
    for (std::int64_t b = 0; b < nb; ++b) run_block(b);
  } else {
    for (std::int64_t b = 0; b < nb; ++b) run_block(b);
  }
#else
  for (std::int64_t b = 0; b < nb; ++b) run_block(b);
#endif

  // Combine partials in block order on one thread.
  for (std::int64_t b = 0; b < nb; ++b)
    for (int j = 0; j < k; ++j) out[static_cast<std::size_t>(j)] += partials[b * k + j];
  return out;
}

void parallel_for(std::int64_t n,
                  const std::function<void(std::int64_t)>& body) {
  if (n <= 0) return;
#ifdef DI_HAVE_OPENMP
  if (g_mode == ExecMode::OpenMP) {
    int nt = worker_threads();
#pragma omp parallel for schedule(dynamic) num_threads(nt)
    for (std::int64_t i = 0; i < n; ++i) body(i);
    return;
  }
#endif
  for (std::int64_t i = 0; i < n; ++i) body(i);
}

}  // namespace di

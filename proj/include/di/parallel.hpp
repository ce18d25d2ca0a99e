#ifndef DI_PARALLEL_HPP
#define DI_PARALLEL_HPP

/** @file
 * Execution-mode switch and deterministic blocked reduction.
 *
 * The library's heavy kernels (sequence-pair enumeration, Monte Carlo
 * replica sweeps, per-context codebook builds) all run through these
 * primitives. Two modes exist:
 *
 *   Serial — single thread, reference semantics;
 *   OpenMP — worker threads over the same fixed block decomposition.
 *
 * Both modes produce BITWISE IDENTICAL results: the index range is split
 * into blocks at fixed boundaries (independent of thread count), each
 * block is reduced serially in index order, and the per-block partials
 * are combined in block order on one thread. The OpenMP mode only changes
 * which thread computes each block's partial.
 */

#include <cstdint>
#include <functional>
#include <vector>

namespace di {

enum class ExecMode { Serial, OpenMP };

/// Process-wide execution mode (default: OpenMP when compiled in).
ExecMode exec_mode();
void set_exec_mode(ExecMode mode);

/// True when OpenMP support was compiled in.
bool openmp_available();

/// Worker threads used by OpenMP mode (1 in Serial mode).
int worker_threads();
void set_worker_threads(int n);  // n <= 0 restores the runtime default

/// Number of reduction blocks for a range of length n. Fixed by n alone.
std::int64_t reduction_blocks(std::int64_t n);

/// Deterministic sum of body(i) over i in [0, n): blocked as documented
/// above. body must be pure (no shared mutable state).
double blocked_sum(std::int64_t n, const std::function<double(std::int64_t)>& body);

/// Deterministic K-component sum: body(i, acc) adds into acc[0..k-1].
/// Per-block accumulators are combined componentwise in block order.
std::vector<double> blocked_sum_k(
    std::int64_t n, int k,
    const std::function<void(std::int64_t, double*)>& body);

/// Parallel (or serial) for over [0, n); iterations must be independent.
void parallel_for(std::int64_t n, const std::function<void(std::int64_t)>& body);

}  // namespace di

#endif  // DI_PARALLEL_HPP

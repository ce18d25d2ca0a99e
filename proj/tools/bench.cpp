/** @file
 * Serial vs OpenMP benchmark for the parallel kernels.
 *
 * Each kernel is evaluated in both execution modes and the results are
 * compared bitwise; the blocked reduction makes them identical by
 * construction, and this harness enforces it. Exit status is nonzero
 * on any mismatch.
 */

#include <bit>
#include <chrono>
#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <string>
#include <vector>

#include "di/enumerate.hpp"
#include "di/gambling.hpp"
#include "di/hyptest.hpp"
#include "di/model.hpp"
#include "di/parallel.hpp"

namespace {

double now_ms() {
  using clock = std::chrono::steady_clock;
  return std::chrono::duration<double, std::milli>(
             clock::now().time_since_epoch())
      .count();
}

bool bits_equal(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (std::bit_cast<std::uint64_t>(a[i]) !=
        std::bit_cast<std::uint64_t>(b[i]))
      return false;
  return true;
}

struct KernelResult {
  std::vector<double> values;
  double ms = 0;
};

template <typename F>
KernelResult timed(di::ExecMode mode, F&& f) {
  di::set_exec_mode(mode);
  KernelResult r;
  const double t0 = now_ms();
  r.values = f();
  r.ms = now_ms() - t0;
  return r;
}

/// Runs one kernel in both modes; returns false on a bitwise mismatch.
template <typename F>
bool report(const char* name, F&& f) {
  KernelResult serial = timed(di::ExecMode::Serial, f);
  if (!di::openmp_available()) {
    std::printf("%-24s serial %8.1f ms   (OpenMP unavailable)\n", name,
                serial.ms);
    return true;
  }
  KernelResult par = timed(di::ExecMode::OpenMP, f);
  const bool same = bits_equal(serial.values, par.values);
  std::printf("%-24s serial %8.1f ms   openmp %8.1f ms   speedup %5.2fx   "
              "bitwise %s\n",
              name, serial.ms, par.ms,
              par.ms > 0 ? serial.ms / par.ms : 0.0, same ? "OK" : "MISMATCH");
  return same;
}

}  // namespace

int main(int argc, char** argv) {
  bool quick = false;
  for (int i = 1; i < argc; ++i)
    if (std::string(argv[i]) == "--quick") quick = true;

  const int enum_n = quick ? 8 : 11;
  const int mc_replicas = quick ? 5000 : 100000;
  const int mc_n = quick ? 16 : 32;
  const int np_n = quick ? 8 : 11;

  di::JointProcessModel feedback = di::random_model(2, 2, 1, 7);
  di::JointProcessModel copy = di::make_noisy_copy_model(0.1);

  std::printf("dit benchmark (%s mode, %d worker threads)\n",
              quick ? "quick" : "full", di::worker_threads());

  bool ok = true;

  ok &= report("pair enumeration", [&] {
    double acc[2];
    di::enumerate_sum_k(
        feedback, enum_n, 2,
        [](const di::PairTerms& t, const int*, const int*, double* a) {
          if (t.joint > 0) {
            a[0] += t.joint * (std::log2(t.joint) - std::log2(t.x_delayed));
            a[1] += t.joint * (std::log2(t.joint) - std::log2(t.y_delayed));
          }
        },
        acc);
    return std::vector<double>{acc[0], acc[1]};
  });

  ok &= report("np operating point", [&] {
    di::HypothesisPair hp = di::make_hypothesis_pair(copy, np_n);
    di::NpPoint beta = di::neyman_pearson_beta(hp, 0.25);
    di::NpPoint alpha = di::neyman_pearson_alpha(hp, 0.25);
    return std::vector<double>{beta.err, alpha.err};
  });

  ok &= report("mc wealth replicas", [&] {
    di::ProportionalBets bets(feedback);
    di::GrowthMc mc = di::expected_growth_mc(feedback, bets,
                                             di::Odds::fair_odds(), mc_n,
                                             mc_replicas, 99);
    return std::vector<double>{mc.growth, mc.stderr_};
  });

  if (!ok) {
    std::printf("FAIL: serial and OpenMP results differ\n");
    return 1;
  }
  std::printf("all kernels bitwise identical across modes\n");
  return 0;
}

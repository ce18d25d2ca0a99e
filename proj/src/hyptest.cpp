/** @file
 * Causal-dependence hypothesis tests: typical-set (AEP) decisions and
 * deterministic Neyman-Pearson operating points, with error-exponent
 * estimation against the directed information and lautum rates.
 */

#include "di/hyptest.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "di/enumerate.hpp"
#include "di/info.hpp"
#include "di/parallel.hpp"
#include "di/rng.hpp"
#include "di/stats.hpp"
#include "di/treewalk.hpp"

namespace di {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kNan = std::numeric_limits<double>::quiet_NaN();

/// Atom budget for explicit likelihood-ratio lists (two doubles per
/// pair; tighter than the streaming enumeration guard).
constexpr std::int64_t kNpAtomGuard = std::int64_t{1} << 22;

std::int64_t y_index(const int* ys, int n, int ny) {
  std::int64_t yi = 0;
  for (int i = 0; i < n; ++i) yi = yi * ny + ys[i];
  return yi;
}

/// Explicit (H0, H1) masses over all sequence pairs.
struct AtomTable {
  std::vector<double> h0;
  std::vector<double> h1;
};

AtomTable collect_atoms(const HypothesisPair& hp) {
  const JointProcessModel& M = *hp.model;
  const int n = hp.n;
  const std::int64_t count = checked_pair_count(M, n);
  if (count > kNpAtomGuard)
    fail(ErrorKind::Capacity,
         "likelihood-ratio atom list exceeds the capacity guard");
  AtomTable t;
  t.h0.assign(static_cast<std::size_t>(count), 0.0);
  t.h1.assign(static_cast<std::size_t>(count), 0.0);
  parallel_for(count, [&](std::int64_t idx) {
    int xs[64], ys[64];
    decode_pair(idx, n, M.nx, M.ny, xs, ys);
    PairTerms pt = pair_terms(M, xs, ys, n);
    t.h0[static_cast<std::size_t>(idx)] = pt.joint;
    t.h1[static_cast<std::size_t>(idx)] =
        pt.x_delayed * hp.py[static_cast<std::size_t>(y_index(ys, n, M.ny))];
  });
  return t;
}

/// One group of equal-ratio atoms (ratio = H0/H1).
struct RatioGroup {
  double ratio = 0;
  double mass0 = 0;  ///< total H0 probability
  double mass1 = 0;  ///< total H1 probability
};

/// Sort atoms by H0/H1 ascending and coalesce equal ratios at relative
/// tolerance 1e-12. Atoms with H0 = H1 = 0 are discarded; H1 = 0 with
/// H0 > 0 sorts last as ratio +inf.
std::vector<RatioGroup> ratio_groups(const AtomTable& t) {
  const std::int64_t count = static_cast<std::int64_t>(t.h0.size());
  std::vector<std::int64_t> idx;
  idx.reserve(static_cast<std::size_t>(count));
  std::vector<double> ratio(static_cast<std::size_t>(count), 0.0);
  for (std::int64_t i = 0; i < count; ++i) {
    const double h0 = t.h0[static_cast<std::size_t>(i)];
    const double h1 = t.h1[static_cast<std::size_t>(i)];
    if (h0 <= 0 && h1 <= 0) continue;
    ratio[static_cast<std::size_t>(i)] = h1 > 0 ? h0 / h1 : kInf;
    idx.push_back(i);
  }
  std::sort(idx.begin(), idx.end(), [&](std::int64_t a, std::int64_t b) {
    const double ra = ratio[static_cast<std::size_t>(a)];
    const double rb = ratio[static_cast<std::size_t>(b)];
    if (ra != rb) return ra < rb;
    return a < b;
  });
  std::vector<RatioGroup> groups;
  for (std::int64_t i : idx) {
    const double r = ratio[static_cast<std::size_t>(i)];
    bool fresh = groups.empty();
    if (!fresh) {
      const double ref = groups.back().ratio;
      const bool same =
          (std::isinf(ref) && std::isinf(r)) ||
          (!std::isinf(ref) && r <= ref + 1e-12 * std::max(ref, 1e-300));
      fresh = !same;
    }
    if (fresh) {
      RatioGroup g;
      g.ratio = r;
      groups.push_back(g);
    }
    groups.back().mass0 += t.h0[static_cast<std::size_t>(i)];
    groups.back().mass1 += t.h1[static_cast<std::size_t>(i)];
  }
  return groups;
}

double group_log_ratio(const RatioGroup& g) {
  if (std::isinf(g.ratio)) return kInf;
  if (g.ratio <= 0) return -kInf;
  return std::log2(g.ratio);
}

}  // namespace

HypothesisPair make_hypothesis_pair(const JointProcessModel& M, int n) {
  if (n < 1) fail(ErrorKind::Domain, "horizon n must be >= 1");
  checked_pair_count(M, n);
  HypothesisPair hp;
  hp.model = &M;
  hp.n = n;
  hp.py = y_marginal_table(M, n);
  return hp;
}

double llr(const HypothesisPair& hp, const SequencePair& s) {
  const JointProcessModel& M = *hp.model;
  if (s.length() != hp.n)
    fail(ErrorKind::Domain, "sequence length does not match the test horizon");
  PairTerms pt = pair_terms(M, s.x.data(), s.y.data(), hp.n);
  const double h0 = pt.joint;
  const double h1 =
      pt.x_delayed *
      hp.py[static_cast<std::size_t>(y_index(s.y.data(), hp.n, M.ny))];
  if (h0 <= 0 && h1 <= 0)
    fail(ErrorKind::Support,
         "sequence pair has probability zero under both hypotheses");
  if (h1 <= 0) return kInf;
  if (h0 <= 0) return -kInf;
  return std::log2(h0 / h1);
}

bool aep_region_test(const HypothesisPair& hp, const SequencePair& s,
                     double delta, double rate) {
  const double v = llr(hp, s);
  if (std::isinf(v)) return false;
  return std::fabs(v / hp.n - rate) < delta;
}

AepReport aep_error_probs_at_rate(const HypothesisPair& hp, double delta,
                                  double rate) {
  const JointProcessModel& M = *hp.model;
  const int n = hp.n;
  if (delta <= 0) fail(ErrorKind::Domain, "delta must be positive");
  AepReport rep;
  rep.n = n;
  rep.rate = rate;
  rep.delta = delta;
  std::vector<double> out(2, 0.0);
  enumerate_sum_k(
      M, n, 2,
      [&](const PairTerms& t, const int* /*xs*/, const int* ys, double* a) {
        const double h0 = t.joint;
        const double h1 =
            t.x_delayed * hp.py[static_cast<std::size_t>(y_index(ys, n, M.ny))];
        bool accept = false;
        if (h0 > 0 && h1 > 0)
          accept = std::fabs(std::log2(h0 / h1) / n - rate) < delta;
        if (!accept) a[0] += h0;  // alpha: H0 mass rejected
        if (accept) a[1] += h1;   // beta: H1 mass accepted
      },
      out.data());
  rep.alpha = out[0];
  rep.beta = out[1];
  rep.beta_bound = std::exp2(-static_cast<double>(n) * (rate - delta)) *
                   (1.0 - rep.alpha);
  rep.bound_ok = rep.beta <= rep.beta_bound + 1e-12;
  return rep;
}

AepReport aep_error_probs(const HypothesisPair& hp, double delta) {
  const double rate =
      directed_info_x_to_y(*hp.model, hp.n) / static_cast<double>(hp.n);
  return aep_error_probs_at_rate(hp, delta, rate);
}

AepReport aep_error_probs_mc(const HypothesisPair& hp, double delta,
                             std::int64_t samples, std::uint64_t seed) {
  const JointProcessModel& M = *hp.model;
  const int n = hp.n;
  if (delta <= 0) fail(ErrorKind::Domain, "delta must be positive");
  if (samples < 1) fail(ErrorKind::Domain, "need at least one sample");
  const double rate = directed_info_x_to_y(M, n) / static_cast<double>(n);
  AepReport rep;
  rep.n = n;
  rep.rate = rate;
  rep.delta = delta;
  // alpha: fraction of H0 (joint-law) samples rejected.
  double rejected = blocked_sum(samples, [&](std::int64_t i) {
    SequencePair s = sample_pair(M, n, derive_seed(seed, 2 * i));
    return aep_region_test(hp, s, delta, rate) ? 0.0 : 1.0;
  });
  rep.alpha = rejected / static_cast<double>(samples);
  // beta: fraction of H1 (severed-law) samples accepted. Under H1 the
  // y-process follows its own marginal while x still listens to y.
  double accepted = blocked_sum(samples, [&](std::int64_t i) {
    std::mt19937_64 g(mix64(derive_seed(seed, 2 * i + 1)));
    SequencePair s;
    s.x.resize(static_cast<std::size_t>(n));
    s.y.resize(static_cast<std::size_t>(n));
    OnlineYMarginal ypred(M);
    std::vector<double> row(static_cast<std::size_t>(std::max(M.nx, M.ny)));
    HistState st;
    for (int t = 0; t < n; ++t) {
      row.assign(static_cast<std::size_t>(M.ny), 0.0);
      ypred.predict(row.data());
      const int y = sample_index(row, g);
      const Pmf& b = M.backward_at(st.m, st.xcode, st.ycode);
      const int x = sample_index(b.p, g);
      s.x[static_cast<std::size_t>(t)] = x;
      s.y[static_cast<std::size_t>(t)] = y;
      ypred.observe(y);
      st.advance(M, x, y);
    }
    return aep_region_test(hp, s, delta, rate) ? 1.0 : 0.0;
  });
  rep.beta = accepted / static_cast<double>(samples);
  rep.beta_bound = std::exp2(-static_cast<double>(n) * (rate - delta)) *
                   (1.0 - rep.alpha);
  rep.bound_ok = rep.beta <= rep.beta_bound + 1e-12;
  return rep;
}

NpPoint neyman_pearson_beta(const HypothesisPair& hp, double epsilon) {
  if (epsilon <= 0 || epsilon >= 1)
    fail(ErrorKind::Domain, "epsilon must lie in (0, 1)");
  std::vector<RatioGroup> groups = ratio_groups(collect_atoms(hp));
  // Reject region: whole groups in ascending ratio while alpha stays
  // within epsilon.
  double alpha = 0, beta = 1;
  std::size_t g = 0;
  for (; g < groups.size(); ++g) {
    if (alpha + groups[g].mass0 > epsilon) break;
    alpha += groups[g].mass0;
    beta -= groups[g].mass1;
  }
  NpPoint pt;
  pt.err = std::max(beta, 0.0);
  pt.constrained = alpha;
  pt.threshold = g < groups.size() ? group_log_ratio(groups[g]) : kInf;
  return pt;
}

NpPoint neyman_pearson_alpha(const HypothesisPair& hp, double epsilon) {
  if (epsilon <= 0 || epsilon >= 1)
    fail(ErrorKind::Domain, "epsilon must lie in (0, 1)");
  std::vector<RatioGroup> groups = ratio_groups(collect_atoms(hp));
  // Accept region: whole groups in descending ratio while beta stays
  // within epsilon.
  double alpha = 1, beta = 0;
  double threshold = kInf;
  for (std::size_t i = groups.size(); i-- > 0;) {
    if (beta + groups[i].mass1 > epsilon) break;
    beta += groups[i].mass1;
    alpha -= groups[i].mass0;
    threshold = group_log_ratio(groups[i]);
  }
  NpPoint pt;
  pt.err = std::max(alpha, 0.0);
  pt.constrained = beta;
  pt.threshold = threshold;
  return pt;
}

ExponentReport exponent_estimates(const JointProcessModel& M,
                                  const std::vector<int>& n_list,
                                  double epsilon) {
  if (n_list.empty()) fail(ErrorKind::Domain, "n_list must be nonempty");
  ExponentReport rep;
  rep.n_list = n_list;
  int n_max = 0;
  for (int n : n_list) {
    if (n < 1) fail(ErrorKind::Domain, "horizon n must be >= 1");
    n_max = std::max(n_max, n);
  }
  for (int n : n_list) {
    HypothesisPair hp = make_hypothesis_pair(M, n);
    rep.betas.push_back(neyman_pearson_beta(hp, epsilon).err);
    rep.alphas.push_back(neyman_pearson_alpha(hp, epsilon).err);
  }
  auto fit = [&](const std::vector<double>& errs) {
    std::vector<double> xs, ys;
    for (std::size_t i = 0; i < errs.size(); ++i) {
      if (2 * n_list[i] < n_max) continue;  // fit window: n >= n_max/2
      if (errs[i] <= 0) continue;           // perfect separation: no slope
      xs.push_back(static_cast<double>(n_list[i]));
      ys.push_back(-std::log2(errs[i]));
    }
    if (xs.size() < 2) return kNan;
    return ls_slope(xs, ys);
  };
  rep.beta_exponent = fit(rep.betas);
  rep.alpha_exponent = fit(rep.alphas);
  rep.target_di_rate =
      information_rate(M, RateQuantity::DirectedInfoXtoY).rate;
  rep.target_l2_rate = information_rate(M, RateQuantity::Lautum2XtoY).rate;
  return rep;
}

}  // namespace di

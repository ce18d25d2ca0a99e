/** @file
 * Causal horse-race gambling: optimal growth, side-information value,
 * mismatch penalties, Monte Carlo couplings, and lookahead.
 */

#include "di/gambling.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include "di/chain.hpp"
#include "di/info.hpp"
#include "di/parallel.hpp"
#include "di/rng.hpp"
#include "di/stats.hpp"
#include "di/treewalk.hpp"
#include "json.hpp"

namespace di {

double Odds::payout(const JointProcessModel& M, int m, std::int64_t xcode,
                    int x) const {
  if (!fair && m < static_cast<int>(table.size())) {
    const auto& stage = table[static_cast<std::size_t>(m)];
    if (xcode < static_cast<std::int64_t>(stage.size()) &&
        !stage[static_cast<std::size_t>(xcode)].empty())
      return stage[static_cast<std::size_t>(xcode)][static_cast<std::size_t>(x)];
  }
  return static_cast<double>(M.nx);
}

Odds load_odds_json(const std::string& path, const JointProcessModel& M) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::Parse, "cannot open odds file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(ss.str());
  } catch (const std::exception& e) {
    fail(ErrorKind::Parse, std::string("odds JSON: ") + e.what());
  }
  if (!j.is_object() || !j.contains("odds") || !j["odds"].is_object())
    fail(ErrorKind::Parse, "odds JSON must be an object with an 'odds' table");

  Odds o;
  o.fair = false;
  o.table.resize(static_cast<std::size_t>(M.order) + 1);
  for (int m = 0; m <= M.order; ++m)
    o.table[static_cast<std::size_t>(m)].resize(
        static_cast<std::size_t>(ipow(M.nx, m)));

  for (auto it = j["odds"].begin(); it != j["odds"].end(); ++it) {
    const std::string& key = it.key();
    if (key.rfind("x:", 0) != 0)
      fail(ErrorKind::Parse, "odds key must start with 'x:': '" + key + "'");
    std::vector<int> xh, yh;
    parse_context_key(key.find("|y:") == std::string::npos ? key + "|y:" : key,
                      M.nx, M.ny, &xh, &yh);
    if (!yh.empty() || static_cast<int>(xh.size()) > M.order)
      fail(ErrorKind::Parse, "odds context must be an x-history of length <= order");
    if (!it.value().is_array() || static_cast<int>(it.value().size()) != M.nx)
      fail(ErrorKind::Parse, "odds row must list one payout per outcome");
    std::vector<double> row;
    for (const auto& v : it.value()) {
      if (!v.is_number() || v.get<double>() <= 0)
        fail(ErrorKind::Parse, "odds payouts must be positive numbers");
      row.push_back(v.get<double>());
    }
    o.table[xh.size()][static_cast<std::size_t>(pack_history(xh, M.nx))] = row;
  }
  return o;
}

void ProportionalBets::bet(const JointProcessModel& truth, int m,
                           std::int64_t xcode, std::int64_t ycode, int y,
                           double* out) const {
  const JointProcessModel& A = *assumed;
  if (A.nx != truth.nx || A.ny != truth.ny)
    fail(ErrorKind::Domain, "assumed model has different alphabets");
  // At m == truth.order the state is truncated to the truth's memory,
  // so a longer assumed memory cannot be reconstructed from it.
  if (A.order > truth.order && m == truth.order)
    fail(ErrorKind::Domain,
         "assumed model needs longer histories than the truth provides");
  int mb = std::min(m, A.order);
  std::int64_t xc = xcode / ipow(truth.nx, m - mb);
  std::int64_t yc = ycode / ipow(truth.ny, m - mb);
  bayes_posterior(A, mb, xc, yc, y, out);
}

GrowthResult expected_growth(const JointProcessModel& M, const BetStrategy& b,
                             const Odds& odds, int n) {
  GrowthResult out;
  std::vector<double> bets(static_cast<std::size_t>(M.nx));
  std::vector<double> marg(static_cast<std::size_t>(M.ny));
  run_chain(M, n, [&](int, const ChainLayer& layer) {
    std::int64_t nyc = ipow(M.ny, layer.m);
    for (std::int64_t sc = 0; sc < static_cast<std::int64_t>(layer.rho.size()); ++sc) {
      double w = layer.rho[static_cast<std::size_t>(sc)];
      if (w <= 0) continue;
      std::int64_t xc = sc / nyc, yc = sc % nyc;
      const Pmf& bk = M.backward_at(layer.m, xc, yc);
      marginal_forward(M, layer.m, xc, yc, marg.data());
      for (int y = 0; y < M.ny; ++y) {
        if (marg[static_cast<std::size_t>(y)] <= 0) continue;
        b.bet(M, layer.m, xc, yc, y, bets.data());
        for (int x = 0; x < M.nx; ++x) {
          if (bk[x] <= 0) continue;
          double f =
              M.forward_at(layer.m, M.forward_xcode(layer.m, xc, x), yc)[y];
          if (f <= 0) continue;
          double bx = bets[static_cast<std::size_t>(x)];
          if (bx <= 0) {
            out.ruin = true;
            continue;
          }
          out.growth += w * bk[x] * f *
                        std::log2(bx * odds.payout(M, layer.m, xc, x));
        }
      }
    }
  });
  if (out.ruin) out.growth = -std::numeric_limits<double>::infinity();
  return out;
}

double optimal_growth_with_si(const JointProcessModel& M, const Odds& odds,
                              int n) {
  ProportionalBets opt(M);
  GrowthResult g = expected_growth(M, opt, odds, n);
  return g.growth;
}

double optimal_growth_no_si(const JointProcessModel& M, const Odds& odds,
                            int n) {
  double growth = 0;
  walk_x_prefixes(M, n, [&](int i, const int* prefix, double pp,
                            const double* pred) {
    // The no-side-information log-optimal bet is the predictive pmf.
    int m = std::min(i - 1, M.order);
    std::int64_t xcode = 0;
    for (int j = std::max(0, (i - 1) - m); j < i - 1; ++j)
      xcode += static_cast<std::int64_t>(prefix[j]) *
               ipow(M.nx, j - ((i - 1) - m));
    double node = 0;
    for (int x = 0; x < M.nx; ++x) {
      double p = pred[x];
      if (p <= 0) continue;
      node += p * std::log2(p * odds.payout(M, m, xcode, x));
    }
    growth += pp * node;
  });
  return growth;
}

GrowthIncrease growth_increase(const JointProcessModel& M, const Odds& odds,
                               int n) {
  GrowthIncrease g;
  g.n = n;
  g.with_si = optimal_growth_with_si(M, odds, n);
  g.no_si = optimal_growth_no_si(M, odds, n);
  g.average = (g.with_si - g.no_si) / n;
  g.di = directed_info_y_to_x(M, n);
  g.per_race_increment =
      n == 1 ? g.di : g.di - directed_info_y_to_x(M, n - 1);
  return g;
}

GrowthIncreaseMc growth_increase_mc(const JointProcessModel& M,
                                    std::int64_t races, std::uint64_t seed) {
  if (races < 2) fail(ErrorKind::Domain, "growth_increase_mc: need >= 2 races");
  std::mt19937_64 g(mix64(seed));
  HistState h;
  OnlineXMarginal no_si(M);
  std::vector<double> marg(static_cast<std::size_t>(M.ny));
  std::vector<double> post(static_cast<std::size_t>(M.nx));
  std::vector<double> pred(static_cast<std::size_t>(M.nx));
  std::vector<double> diffs;
  diffs.reserve(static_cast<std::size_t>(races));
  for (std::int64_t i = 0; i < races; ++i) {
    // Draw y_i from its predictive law, then x_i from the posterior;
    // this equals the joint law and couples both bettors to one path.
    marginal_forward(M, h.m, h.xcode, h.ycode, marg.data());
    int y = sample_index(marg, g);
    bayes_posterior(M, h.m, h.xcode, h.ycode, y, post.data());
    int x = sample_index(post, g);
    no_si.predict(pred.data());
    diffs.push_back(std::log2(post[static_cast<std::size_t>(x)]) -
                    std::log2(pred[static_cast<std::size_t>(x)]));
    no_si.observe(x);
    h.advance(M, x, y);
  }
  MeanStderr ms = mean_stderr(diffs);
  return GrowthIncreaseMc{ms.mean, ms.stderr_, races};
}

GrowthMc expected_growth_mc(const JointProcessModel& M, const BetStrategy& b,
                            const Odds& odds, int n, int replicas,
                            std::uint64_t seed) {
  if (replicas < 2) fail(ErrorKind::Domain, "expected_growth_mc: need >= 2 replicas");
  std::vector<double> wealth(static_cast<std::size_t>(replicas), 0.0);
  std::vector<char> ruined(static_cast<std::size_t>(replicas), 0);
  parallel_for(replicas, [&](std::int64_t r) {
    std::mt19937_64 g(derive_seed(seed, static_cast<std::uint64_t>(r)));
    HistState h;
    std::vector<double> bets(static_cast<std::size_t>(M.nx));
    double acc = 0;
    for (int i = 0; i < n; ++i) {
      const Pmf& bk = M.backward_at(h.m, h.xcode, h.ycode);
      int x = sample_index(bk.p, g);
      const Pmf& f = M.forward_at(h.m, M.forward_xcode(h.m, h.xcode, x), h.ycode);
      int y = sample_index(f.p, g);
      b.bet(M, h.m, h.xcode, h.ycode, y, bets.data());
      double bx = bets[static_cast<std::size_t>(x)];
      if (bx <= 0) {
        ruined[static_cast<std::size_t>(r)] = 1;
        return;
      }
      acc += std::log2(bx * odds.payout(M, h.m, h.xcode, x));
      h.advance(M, x, y);
    }
    wealth[static_cast<std::size_t>(r)] = acc;
  });
  for (char c : ruined)
    if (c)
      return GrowthMc{-std::numeric_limits<double>::infinity(), 0.0, true};
  MeanStderr ms = mean_stderr(wealth);
  return GrowthMc{ms.mean, ms.stderr_, false};
}

MismatchPenalty mismatched_growth_penalty(const JointProcessModel& truth,
                                          const JointProcessModel& assumed,
                                          const Odds& odds, int n) {
  if (truth.nx != assumed.nx || truth.ny != assumed.ny)
    fail(ErrorKind::Domain, "mismatched models must share alphabets");
  if (assumed.order > truth.order)
    fail(ErrorKind::Domain,
         "assumed order must not exceed the true model order");
  ProportionalBets opt(truth), wrong(assumed);
  GrowthResult g_opt = expected_growth(truth, opt, odds, n);
  GrowthResult g_wrong = expected_growth(truth, wrong, odds, n);
  MismatchPenalty p;
  p.ruin = g_wrong.ruin;
  p.penalty = p.ruin ? std::numeric_limits<double>::infinity()
                     : g_opt.growth - g_wrong.growth;
  return p;
}

double severed_betting_penalty(const JointProcessModel& M, int n) {
  JointProcessModel severed = sever_feedback(M);
  return mismatched_growth_penalty(severed, M, Odds::fair_odds(), n).penalty;
}

// ---------------------------------------------------------------------------
// Lookahead
// ---------------------------------------------------------------------------

namespace {

struct LookaheadSetup {
  std::vector<double> pi0;                 ///< stationary start over x
  std::vector<std::vector<double>> P;      ///< x transition matrix
  std::vector<std::vector<double>> obs;    ///< y observation rows per x
};

LookaheadSetup lookahead_setup(const JointProcessModel& M) {
  if (M.order != 1)
    fail(ErrorKind::Domain, "lookahead requires an order-1 model");
  if (!has_no_feedback(M))
    fail(ErrorKind::Domain, "lookahead requires a no-feedback model");

  LookaheadSetup s;
  s.pi0 = M.backward_at(0, 0, 0).p;
  s.P.resize(static_cast<std::size_t>(M.nx));
  for (int a = 0; a < M.nx; ++a) s.P[static_cast<std::size_t>(a)] = M.backward_at(1, a, 0).p;
  s.obs.resize(static_cast<std::size_t>(M.nx));
  for (int x = 0; x < M.nx; ++x)
    s.obs[static_cast<std::size_t>(x)] = M.forward_at(0, x, 0).p;

  // The observation must be memoryless: every forward row must match
  // the row of its newest x symbol.
  for (const StageTable& t : M.forward) {
    std::int64_t nxc = ipow(M.nx, t.xlen), nyc = ipow(M.ny, t.ylen);
    for (std::int64_t xc = 0; xc < nxc; ++xc) {
      int newest = t.xlen == 0 ? 0 : static_cast<int>(xc / ipow(M.nx, t.xlen - 1));
      for (std::int64_t yc = 0; yc < nyc; ++yc) {
        const Pmf& f = t.cells[static_cast<std::size_t>(t.index(xc, yc, M.ny))];
        if (f.empty()) continue;
        for (int y = 0; y < M.ny; ++y)
          if (std::fabs(f[y] - s.obs[static_cast<std::size_t>(newest)]
                                    [static_cast<std::size_t>(y)]) > 1e-12)
            fail(ErrorKind::Domain,
                 "lookahead requires a memoryless observation kernel");
      }
    }
  }

  // Stationarity of the start distribution.
  for (int x = 0; x < M.nx; ++x) {
    double v = 0;
    for (int a = 0; a < M.nx; ++a)
      v += s.pi0[static_cast<std::size_t>(a)] * s.P[static_cast<std::size_t>(a)][static_cast<std::size_t>(x)];
    if (std::fabs(v - s.pi0[static_cast<std::size_t>(x)]) > 1e-9)
      fail(ErrorKind::Domain, "lookahead requires a stationary start");
  }
  return s;
}

/// H(Y_{k+1} | Y^k, X_0) by forward-filtering every y^k prefix from
/// each start state.
double cond_entropy_ahead(const LookaheadSetup& s, int nx, int ny, int k) {
  double total = 0;
  std::vector<double> alpha(static_cast<std::size_t>(nx));
  std::vector<double> next(static_cast<std::size_t>(nx));
  std::vector<double> pred(static_cast<std::size_t>(ny));
  std::int64_t paths = ipow(ny, k);
  if (static_cast<double>(paths) * nx > kEnumGuard)
    fail(ErrorKind::Capacity, "lookahead horizon too deep");
  for (int a = 0; a < nx; ++a) {
    double pa = s.pi0[static_cast<std::size_t>(a)];
    if (pa <= 0) continue;
    for (std::int64_t yp = 0; yp < paths; ++yp) {
      // alpha_j(x) = P(X_j = x, Y^j = y^j | X_0 = a); y digits are
      // consumed oldest-first from the low end of yp.
      for (int x = 0; x < nx; ++x) alpha[static_cast<std::size_t>(x)] = x == a ? 1.0 : 0.0;
      std::int64_t rest = yp;
      double py_prefix = 1;
      for (int j = 0; j < k; ++j) {
        int yj = static_cast<int>(rest % ny);
        rest /= ny;
        double norm = 0;
        for (int x = 0; x < nx; ++x) {
          double acc = 0;
          for (int xp = 0; xp < nx; ++xp)
            acc += alpha[static_cast<std::size_t>(xp)] * s.P[static_cast<std::size_t>(xp)][static_cast<std::size_t>(x)];
          next[static_cast<std::size_t>(x)] =
              acc * s.obs[static_cast<std::size_t>(x)][static_cast<std::size_t>(yj)];
          norm += next[static_cast<std::size_t>(x)];
        }
        alpha = next;
        py_prefix = norm;  // alpha stays unnormalized: sum = P(y^j | a)
        if (norm <= 0) break;
      }
      if (py_prefix <= 0) continue;
      // Predictive law of Y_{k+1} given the filtered state.
      for (int y = 0; y < ny; ++y) pred[static_cast<std::size_t>(y)] = 0;
      for (int x = 0; x < nx; ++x) {
        double acc = 0;
        for (int xp = 0; xp < nx; ++xp)
          acc += alpha[static_cast<std::size_t>(xp)] * s.P[static_cast<std::size_t>(xp)][static_cast<std::size_t>(x)];
        for (int y = 0; y < ny; ++y)
          pred[static_cast<std::size_t>(y)] +=
              acc * s.obs[static_cast<std::size_t>(x)][static_cast<std::size_t>(y)];
      }
      double pyk = 0;
      for (int y = 0; y < ny; ++y) pyk += pred[static_cast<std::size_t>(y)];
      if (pyk <= 0) continue;
      for (int y = 0; y < ny; ++y) pred[static_cast<std::size_t>(y)] /= pyk;
      total += pa * pyk * entropy_bits(pred.data(), ny);
    }
  }
  return total;
}

}  // namespace

double lookahead_delta(const JointProcessModel& M, int k) {
  if (k < 0) fail(ErrorKind::Domain, "lookahead steps must be nonnegative");
  LookaheadSetup s = lookahead_setup(M);
  double h1 = 0;  // H(Y_1 | X_1) under the stationary law
  for (int x = 0; x < M.nx; ++x)
    h1 += s.pi0[static_cast<std::size_t>(x)] *
          entropy_bits(s.obs[static_cast<std::size_t>(x)].data(), M.ny);
  return cond_entropy_ahead(s, M.nx, M.ny, k) - h1;
}

}  // namespace di

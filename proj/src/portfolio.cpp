/** @file
 * Log-optimal portfolio programs and the causal growth-gap bound.
 */

#include "di/portfolio.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <map>
#include <sstream>

#include "di/chain.hpp"
#include "di/info.hpp"
#include "di/stats.hpp"
#include "di/treewalk.hpp"
#include "json.hpp"

namespace di {

namespace {

double growth_at(const std::vector<double>& p,
                 const std::vector<std::vector<double>>& v,
                 const std::vector<double>& b) {
  double f = 0;
  for (std::size_t j = 0; j < p.size(); ++j) {
    if (p[j] <= 0) continue;
    double s = 0;
    for (std::size_t k = 0; k < b.size(); ++k) s += b[k] * v[j][k];
    if (s <= 0) return -std::numeric_limits<double>::infinity();
    f += p[j] * std::log2(s);
  }
  return f;
}

}  // namespace

double portfolio_growth(const std::vector<double>& p,
                        const std::vector<std::vector<double>>& v,
                        const std::vector<double>& b) {
  return growth_at(p, v, b);
}

LogOptimalResult log_optimal_portfolio(const std::vector<double>& p,
                                       const std::vector<std::vector<double>>& v,
                                       double tol, int max_iter) {
  if (p.size() != v.size() || p.empty())
    fail(ErrorKind::Domain, "portfolio: outcome law and support sizes differ");
  const int m = static_cast<int>(v[0].size());
  for (const auto& row : v)
    if (static_cast<int>(row.size()) != m)
      fail(ErrorKind::Domain, "portfolio: ragged support vectors");
  for (std::size_t j = 0; j < p.size(); ++j) {
    if (p[j] < 0) fail(ErrorKind::Domain, "portfolio: negative probability");
    if (p[j] > 0) {
      bool any = false;
      for (double c : v[j]) {
        if (c < 0) fail(ErrorKind::Domain, "portfolio: negative price relative");
        any = any || c > 0;
      }
      if (!any)
        fail(ErrorKind::Domain,
             "portfolio: probable outcome with all-zero price relatives");
    }
  }

  LogOptimalResult res;
  res.b.assign(static_cast<std::size_t>(m), 1.0 / m);
  std::vector<double> r(static_cast<std::size_t>(m));

  for (int it = 1; it <= max_iter; ++it) {
    res.iterations = it;
    // r_k = E[ V_k / (b.V) ]. The certificate f(b') - f(b) <=
    // log2 max_k r_k holds for every competing b', so rmax -> 1 pins
    // the optimum; Sum_k b_k r_k = 1 makes the multiplicative update
    // below stay on the simplex.
    std::fill(r.begin(), r.end(), 0.0);
    for (std::size_t j = 0; j < p.size(); ++j) {
      if (p[j] <= 0) continue;
      double s = 0;
      for (int k = 0; k < m; ++k)
        s += res.b[static_cast<std::size_t>(k)] * v[j][static_cast<std::size_t>(k)];
      if (s <= 0)
        fail(ErrorKind::Domain,
             "portfolio: probable outcome with zero portfolio return");
      for (int k = 0; k < m; ++k)
        r[static_cast<std::size_t>(k)] += p[j] * v[j][static_cast<std::size_t>(k)] / s;
    }
    double rmax = 0;
    for (int k = 0; k < m; ++k) rmax = std::max(rmax, r[static_cast<std::size_t>(k)]);
    res.kkt_residual = rmax - 1.0;
    if (std::log2(rmax) <= tol) {
      res.converged = true;
      break;
    }
    // Monotone multiplicative ascent step b_k <- b_k r_k.
    double mass = 0, delta = 0;
    for (int k = 0; k < m; ++k) {
      double& bk = res.b[static_cast<std::size_t>(k)];
      const double nb = bk * r[static_cast<std::size_t>(k)];
      delta = std::max(delta, std::fabs(nb - bk));
      bk = nb;
      mass += nb;
    }
    for (int k = 0; k < m; ++k) res.b[static_cast<std::size_t>(k)] /= mass;
    if (delta < 1e-17) break;  // FP fixed point short of tol
  }
  if (!res.converged)
    fail(ErrorKind::Convergence,
         "portfolio solver did not meet tolerance; kkt residual " +
             std::to_string(res.kkt_residual));
  // Drop numerically-dead components so the reported support is clean;
  // at the certified gap this changes the growth by far less than tol.
  double mass = 0;
  for (double& bk : res.b) {
    if (bk < 1e-12) bk = 0;
    mass += bk;
  }
  for (double& bk : res.b) bk /= mass;
  res.growth = growth_at(p, v, res.b);
  return res;
}

MismatchBound kl_mismatch_bound_check(const std::vector<double>& f,
                                      const std::vector<double>& g,
                                      const std::vector<std::vector<double>>& v) {
  if (f.size() != g.size())
    fail(ErrorKind::Domain, "mismatch check: laws have different sizes");
  for (std::size_t j = 0; j < f.size(); ++j)
    if (f[j] > 0 && g[j] <= 0)
      fail(ErrorKind::Support,
           "mismatch check: f is not absolutely continuous w.r.t. g");
  LogOptimalResult bf = log_optimal_portfolio(f, v);
  LogOptimalResult bg = log_optimal_portfolio(g, v);
  MismatchBound out;
  out.loss = growth_at(f, v, bf.b) - growth_at(f, v, bg.b);
  out.kl = kl_bits(f, g);
  return out;
}

// ---------------------------------------------------------------------------
// Markets
// ---------------------------------------------------------------------------

StockMarketModel parse_market_json(const std::string& text) {
  nlohmann::ordered_json j;
  try {
    j = nlohmann::ordered_json::parse(text);
  } catch (const std::exception& e) {
    fail(ErrorKind::Parse, std::string("market JSON: ") + e.what());
  }
  for (const char* field : {"support", "y_alphabet", "order", "kernel", "side_info"})
    if (!j.contains(field))
      fail(ErrorKind::Parse, std::string("market JSON missing field '") + field + "'");
  if (!j["support"].is_array() || j["support"].empty())
    fail(ErrorKind::Parse, "market support must be a nonempty array of arrays");

  StockMarketModel mkt;
  for (const auto& row : j["support"]) {
    if (!row.is_array() || row.empty())
      fail(ErrorKind::Parse, "market support rows must be nonempty arrays");
    std::vector<double> vr;
    bool any = false;
    for (const auto& c : row) {
      if (!c.is_number() || c.get<double>() < 0)
        fail(ErrorKind::Parse, "price relatives must be nonnegative numbers");
      vr.push_back(c.get<double>());
      any = any || vr.back() > 0;
    }
    if (!any)
      fail(ErrorKind::Parse, "every support vector needs a positive component");
    mkt.support.push_back(std::move(vr));
  }
  mkt.num_assets = static_cast<int>(mkt.support[0].size());
  for (const auto& row : mkt.support)
    if (static_cast<int>(row.size()) != mkt.num_assets)
      fail(ErrorKind::Parse, "support vectors must share one length");

  // The outcome/side-information process reuses the model schema with
  // the outcome index as x.
  nlohmann::ordered_json pj;
  pj["x_alphabet"] = static_cast<int>(mkt.support.size());
  pj["y_alphabet"] = j["y_alphabet"];
  pj["order"] = j["order"];
  pj["backward"] = j["kernel"];
  pj["forward"] = j["side_info"];
  mkt.process = parse_model_json(pj.dump());
  return mkt;
}

StockMarketModel load_market_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::Parse, "cannot open market file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_market_json(ss.str());
}

std::string market_to_json(const StockMarketModel& mkt) {
  nlohmann::ordered_json pj = nlohmann::ordered_json::parse(model_to_json(mkt.process));
  nlohmann::ordered_json j;
  j["support"] = mkt.support;
  j["y_alphabet"] = pj["y_alphabet"];
  j["order"] = pj["order"];
  j["kernel"] = pj["backward"];
  j["side_info"] = pj["forward"];
  return j.dump(2) + "\n";
}

StockMarketModel make_horse_race_market(const JointProcessModel& M) {
  StockMarketModel mkt;
  mkt.num_assets = M.nx;
  mkt.support.assign(static_cast<std::size_t>(M.nx),
                     std::vector<double>(static_cast<std::size_t>(M.nx), 0.0));
  for (int j = 0; j < M.nx; ++j)
    mkt.support[static_cast<std::size_t>(j)][static_cast<std::size_t>(j)] =
        static_cast<double>(M.nx);
  mkt.process = M;
  return mkt;
}

PortfolioGap growth_gap_vs_directed_info(const StockMarketModel& mkt, int n,
                                         double bound_tol) {
  const JointProcessModel& M = mkt.process;
  PortfolioGap out;
  out.n = n;
  out.converged = true;

  // Memoized per-(context, y) program: the model is time invariant, so
  // identical contexts recur across steps.
  std::map<std::array<std::int64_t, 4>, LogOptimalResult> cache;
  auto solve_ctx = [&](int m, std::int64_t xc, std::int64_t yc,
                       int y) -> const LogOptimalResult& {
    std::array<std::int64_t, 4> key{m, xc, yc, y};
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    std::vector<double> post(static_cast<std::size_t>(M.nx));
    bayes_posterior(M, m, xc, yc, y, post.data());
    LogOptimalResult r = log_optimal_portfolio(post, mkt.support);
    out.max_kkt = std::max(out.max_kkt, std::fabs(r.kkt_residual));
    return cache.emplace(key, std::move(r)).first->second;
  };

  std::vector<double> marg(static_cast<std::size_t>(M.ny));
  run_chain(M, n, [&](int, const ChainLayer& layer) {
    std::int64_t nyc = ipow(M.ny, layer.m);
    for (std::int64_t sc = 0; sc < static_cast<std::int64_t>(layer.rho.size()); ++sc) {
      double w = layer.rho[static_cast<std::size_t>(sc)];
      if (w <= 0) continue;
      std::int64_t xc = sc / nyc, yc = sc % nyc;
      marginal_forward(M, layer.m, xc, yc, marg.data());
      for (int y = 0; y < M.ny; ++y) {
        if (marg[static_cast<std::size_t>(y)] <= 0) continue;
        const LogOptimalResult& r = solve_ctx(layer.m, xc, yc, y);
        out.with_si += w * marg[static_cast<std::size_t>(y)] * r.growth;
      }
    }
  });

  walk_x_prefixes(M, n, [&](int, const int*, double pp, const double* pred) {
    std::vector<double> p(pred, pred + M.nx);
    LogOptimalResult r = log_optimal_portfolio(p, mkt.support);
    out.max_kkt = std::max(out.max_kkt, std::fabs(r.kkt_residual));
    out.no_si += pp * r.growth;
  });

  out.gap = out.with_si - out.no_si;
  out.directed_info = directed_info_y_to_x(M, n);
  out.bound_ok = out.gap <= out.directed_info + bound_tol;
  return out;
}

}  // namespace di

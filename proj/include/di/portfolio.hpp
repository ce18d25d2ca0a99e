#ifndef DI_PORTFOLIO_HPP
#define DI_PORTFOLIO_HPP

/** @file
 * Log-optimal portfolios with causal side information.
 *
 * A market has m assets; outcome j at a race maps to a price-relative
 * vector v_j in R^m (v_jk = payout of asset k). A portfolio b on the
 * simplex earns log2(b . v) per period. The log-optimal portfolio
 * maximizes E[log2(b . V)]; first-order optimality (KKT) is
 *
 *   E[ V_k / (b* . V) ] <= 1 for all k, with equality where b*_k > 0.
 *
 * Mismatch bound: investing by g instead of the log-optimal portfolio
 * for f loses at most the Kullback-Leibler divergence,
 *
 *   W_f(b_f) - W_f(b_g) <= D(f || g).
 *
 * Summed causally over time with/without side information, the n-period
 * growth gap is bounded by directed information,
 *
 *   W*(V^n || Y^n) - W*(V^n) <= I(Y^n -> V^n),
 *
 * with equality for horse races (v_j = m e_j, fair odds).
 */

#include <cstdint>
#include <string>
#include <vector>

#include "di/model.hpp"

namespace di {

/// One-period solver result.
struct LogOptimalResult {
  std::vector<double> b;        ///< optimal portfolio on the simplex
  double growth = 0;            ///< E[log2 b.V] bits
  double kkt_residual = 0;      ///< max_k E[V_k/(b.V)] - 1 over support
  int iterations = 0;
  bool converged = false;
};

/// Maximize E_p[log2(b . V)] over the simplex by monotone
/// multiplicative updates b_k <- b_k E[V_k/(b.V)] (uniform start,
/// deterministic); stops when the duality-gap certificate
/// log2 max_k E[V_k/(b.V)] drops to tol.
LogOptimalResult log_optimal_portfolio(const std::vector<double>& p,
                                       const std::vector<std::vector<double>>& v,
                                       double tol = 1e-8,
                                       int max_iter = 100000);

/// Growth of portfolio b under outcome law p: E_p[log2 b.V].
double portfolio_growth(const std::vector<double>& p,
                        const std::vector<std::vector<double>>& b_vs,
                        const std::vector<double>& b);

/// Mismatch check: growth loss of using g's optimal portfolio when
/// the law is f, and the KL bound D(f||g).
struct MismatchBound {
  double loss = 0;  ///< W_f(b_f*) - W_f(b_g*) bits
  double kl = 0;    ///< D(f || g) bits
};

MismatchBound kl_mismatch_bound_check(const std::vector<double>& f,
                                      const std::vector<double>& g,
                                      const std::vector<std::vector<double>>& v);

/// A stock market driven by a pair process: outcome x_i selects the
/// price-relative vector support[x_i]; y is the side-information
/// process of the underlying model.
struct StockMarketModel {
  int num_assets = 0;
  std::vector<std::vector<double>> support;  ///< per outcome, size nx
  JointProcessModel process;
};

StockMarketModel load_market_json(const std::string& path);
StockMarketModel parse_market_json(const std::string& text);
std::string market_to_json(const StockMarketModel& mkt);

/// Horse-race embedding of a pair model: support = nx * e_x.
StockMarketModel make_horse_race_market(const JointProcessModel& M);

/// n-period comparison of causal-side-information investing vs none.
struct PortfolioGap {
  int n = 0;
  double with_si = 0;       ///< W*(V^n || Y^n)
  double no_si = 0;         ///< W*(V^n)
  double gap = 0;           ///< with_si - no_si
  double directed_info = 0; ///< I(Y^n -> X^n) of the outcome process
  bool bound_ok = false;    ///< gap <= directed_info + tol
  double max_kkt = 0;       ///< worst KKT residual among solved programs
  bool converged = false;   ///< all programs converged
};

/// Solves a log-optimal program at every reachable (step, context,
/// side-information) node with side information and every (step,
/// x-prefix) node without; exact expectations via chain / tree walk.
PortfolioGap growth_gap_vs_directed_info(const StockMarketModel& mkt, int n,
                                         double bound_tol = 1e-6);

}  // namespace di

#endif  // DI_PORTFOLIO_HPP

#ifndef DI_GAMBLING_HPP
#define DI_GAMBLING_HPP

/** @file
 * Sequential horse-race gambling with causal side information.
 *
 * A gambler reinvests all wealth each race over nx horses with odds
 * o(x) (payout per unit bet). Betting fraction b(x_i | past) on each
 * horse, the per-race log-wealth increment is log2 b(x_i|.) o(x_i),
 * so n-race expected growth is
 *
 *   W = E[ sum_i log2 b(x_i | past_i) o(x_i) ].
 *
 * Proportional betting b = p(x_i | x^{i-1}, y^i) is optimal, giving
 *
 *   W*(X^n || Y^n) = E[log2 o] - H(X^n || Y^n),
 *
 * and the value of causal side information is odds-independent:
 *
 *   W*(X^n || Y^n) - W*(X^n) = I(Y^n -> X^n).
 *
 * Betting on k-step lookahead instead: for stationary no-feedback
 * memoryless-observation models, the marginal value of seeing y one
 * step further ahead is Delta(k) = H(Y_{k+1} | Y^k, X_0) - H(Y_1|X_1),
 * nondecreasing in k from Delta(0) = the side-information growth rate.
 */

#include <cstdint>
#include <string>
#include <vector>

#include "di/model.hpp"

namespace di {

/// Race odds: payout o(x) per unit bet, possibly context dependent.
/// Fair odds pay nx per unit (no track take, sum 1/o = 1).
struct Odds {
  bool fair = true;
  /// When not fair: odds[m][xcode] is an nx-vector of payouts for the
  /// x-history context (stage m, xcode); missing entries fall back to
  /// the fair payout.
  std::vector<std::vector<std::vector<double>>> table;

  static Odds fair_odds() { return Odds{}; }
  double payout(const JointProcessModel& M, int m, std::int64_t xcode,
                int x) const;
};

Odds load_odds_json(const std::string& path, const JointProcessModel& M);

/// A causal betting strategy: bets[i-stage][context][y_i] is a pmf
/// over horses given (truncated histories, current y). The optimal
/// strategy is the Bayes posterior; mismatched strategies come from
/// evaluating a wrong model's posterior.
struct BetStrategy {
  /// bet(m, xcode, ycode, y) -> pmf over x written to out.
  virtual void bet(const JointProcessModel& truth, int m, std::int64_t xcode,
                   std::int64_t ycode, int y, double* out) const = 0;
  virtual ~BetStrategy() = default;
};

/// Proportional (log-optimal) betting under an assumed model.
struct ProportionalBets : BetStrategy {
  const JointProcessModel* assumed;
  explicit ProportionalBets(const JointProcessModel& M) : assumed(&M) {}
  void bet(const JointProcessModel& truth, int m, std::int64_t xcode,
           std::int64_t ycode, int y, double* out) const override;
};

/// Exact expected growth of a strategy with side information (bits per
/// n races). ruin is set when the strategy puts zero mass on an
/// outcome of positive probability (growth is then -infinity).
struct GrowthResult {
  double growth = 0;
  bool ruin = false;
};

GrowthResult expected_growth(const JointProcessModel& M, const BetStrategy& b,
                             const Odds& odds, int n);

/// Optimal growth with causal side information, W*(X^n || Y^n).
double optimal_growth_with_si(const JointProcessModel& M, const Odds& odds,
                              int n);

/// Optimal growth without side information, W*(X^n) (tree walk).
double optimal_growth_no_si(const JointProcessModel& M, const Odds& odds,
                            int n);

/// Value of causal side information over n races. average is
/// (W*with - W*no)/n = I(Y^n -> X^n)/n; per_race_increment is the
/// n-th race's marginal value I(Y^n->X^n) - I(Y^{n-1}->X^{n-1}),
/// the steady-state per-race figure.
struct GrowthIncrease {
  int n = 0;
  double with_si = 0;            ///< W*(X^n || Y^n)
  double no_si = 0;              ///< W*(X^n)
  double average = 0;
  double per_race_increment = 0;
  double di = 0;                 ///< I(Y^n -> X^n)
};

GrowthIncrease growth_increase(const JointProcessModel& M, const Odds& odds,
                               int n);

/// Monte Carlo estimate of the per-race value of side information:
/// simulates one path of `races` races and couples both optimal
/// bettors to the same outcomes (odds cancel in the difference).
struct GrowthIncreaseMc {
  double delta_w = 0;   ///< mean per-race log-wealth difference
  double stderr_ = 0;   ///< standard error of the mean
  std::int64_t races = 0;
};

GrowthIncreaseMc growth_increase_mc(const JointProcessModel& M,
                                    std::int64_t races, std::uint64_t seed);

/// Monte Carlo expected growth of a strategy (replicated n-race paths).
struct GrowthMc {
  double growth = 0;    ///< mean n-race log wealth
  double stderr_ = 0;
  bool ruin = false;    ///< a replica hit a zero-bet outcome
};

GrowthMc expected_growth_mc(const JointProcessModel& M, const BetStrategy& b,
                            const Odds& odds, int n, int replicas,
                            std::uint64_t seed);

/// Growth penalty for betting with an assumed model's causal posterior
/// when the truth is `truth`: W*_truth - W_assumed, in bits over n
/// races. ruin is set on support violation.
struct MismatchPenalty {
  double penalty = 0;
  bool ruin = false;
};

MismatchPenalty mismatched_growth_penalty(const JointProcessModel& truth,
                                          const JointProcessModel& assumed,
                                          const Odds& odds, int n);

/// Growth penalty for betting causally under the severed product law
/// of a no-feedback model: bets use the model's causal posterior but
/// the truth is p(x^n) p(y^n || x^{n-1}). Equals the reverse-direction
/// second lautum measure L2(Y^n -> X^n) of the model.
double severed_betting_penalty(const JointProcessModel& M, int n);

/// Marginal value of k-step lookahead for order-1 stationary
/// no-feedback models with memoryless observation:
/// Delta(k) = H(Y_{k+1} | Y^k, X_0) - H(Y_1 | X_1) bits per race.
/// Requires a stationary initial distribution; errors otherwise.
double lookahead_delta(const JointProcessModel& M, int k);

}  // namespace di

#endif  // DI_GAMBLING_HPP

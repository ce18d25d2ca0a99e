/** @file
 * Directed information, mutual information, and the lautum family.
 */

#include "di/info.hpp"

#include <cmath>
#include <limits>

#include "di/chain.hpp"
#include "di/enumerate.hpp"
#include "di/treewalk.hpp"

namespace di {

namespace {

/// w * log2(num/den) with the measure-zero convention w = 0 -> 0.
inline double wlog(double w, double num, double den) {
  if (w <= 0) return 0.0;
  if (den <= 0 || num <= 0) {
    // Positive weight on a ratio with a vanishing side: the sum is
    // genuinely infinite (support mismatch between the two laws).
    return std::numeric_limits<double>::infinity();
  }
  return w * std::log2(num / den);
}

struct LautumTerms {
  double l = 0, l1_xy = 0, l2_xy = 0, l1_ydx = 0, l1_yx = 0, l2_yx = 0;
};

LautumTerms lautum_family(const JointProcessModel& M, int n) {
  checked_pair_count(M, n);
  std::vector<double> px = x_marginal_table(M, n);
  std::vector<double> py = y_marginal_table(M, n);

  double acc[6];
  enumerate_sum_k(
      M, n, 6,
      [&](const PairTerms& t, const int* xs, const int* ys, double* a) {
        std::int64_t xi = 0, yi = 0;
        for (int i = 0; i < n; ++i) {
          xi = xi * M.nx + xs[i];
          yi = yi * M.ny + ys[i];
        }
        const double pxv = px[static_cast<std::size_t>(xi)];
        const double pyv = py[static_cast<std::size_t>(yi)];
        const double indep = pxv * pyv;
        a[0] += wlog(indep, indep, t.joint);                 // L
        a[1] += wlog(indep, pyv, t.y_causal);                // L1(X->Y)
        a[2] += wlog(t.x_delayed * pyv, pyv, t.y_causal);    // L2(X->Y)
        a[3] += wlog(indep, pxv, t.x_delayed);               // L1(Y_delayed->X)
        a[4] += wlog(indep, pxv, t.x_causal);                // L1(Y->X)
        a[5] += wlog(t.y_delayed * pxv, pxv, t.x_causal);    // L2(Y->X)
      },
      acc);

  LautumTerms out;
  out.l = acc[0];
  out.l1_xy = acc[1];
  out.l2_xy = acc[2];
  out.l1_ydx = acc[3];
  out.l1_yx = acc[4];
  out.l2_yx = acc[5];
  return out;
}

}  // namespace

InfoReport compute_info_report(const JointProcessModel& M, int n,
                               bool with_lautum) {
  if (n < 1) fail(ErrorKind::Domain, "horizon n must be >= 1");
  InfoReport r;
  r.n = n;
  ChainEntropies ce = chain_entropies(M, n);
  r.h_joint = ce.h_joint;
  r.h_x_given_y_causal = ce.h_x_causal;
  r.h_x_given_y_delayed = ce.h_x_delayed;
  r.h_y_given_x_causal = ce.h_y_causal;
  r.h_y_given_x_delayed = ce.h_y_delayed;
  r.h_x = entropy_x_marginal(M, n);
  r.h_y = entropy_y_marginal(M, n);
  r.di_y_to_x = r.h_x - r.h_x_given_y_causal;
  r.di_y_delayed_to_x = r.h_x - r.h_x_given_y_delayed;
  r.di_x_to_y = r.h_y - r.h_y_given_x_causal;
  r.mutual_info = r.h_x + r.h_y - r.h_joint;
  if (with_lautum) {
    LautumTerms lt = lautum_family(M, n);
    r.lautum = lt.l;
    r.lautum1_x_to_y = lt.l1_xy;
    r.lautum2_x_to_y = lt.l2_xy;
    r.lautum1_y_delayed_to_x = lt.l1_ydx;
    r.lautum1_y_to_x = lt.l1_yx;
    r.lautum2_y_to_x = lt.l2_yx;
  }
  return r;
}

double directed_info_y_to_x(const JointProcessModel& M, int n) {
  return entropy_x_marginal(M, n) - chain_entropies(M, n).h_x_causal;
}

double directed_info_y_to_x_delayed(const JointProcessModel& M, int n) {
  return entropy_x_marginal(M, n) - chain_entropies(M, n).h_x_delayed;
}

double directed_info_x_to_y(const JointProcessModel& M, int n) {
  return entropy_y_marginal(M, n) - chain_entropies(M, n).h_y_causal;
}

double mutual_info(const JointProcessModel& M, int n) {
  return entropy_x_marginal(M, n) + entropy_y_marginal(M, n) -
         chain_entropies(M, n).h_joint;
}

double conservation_residual(const JointProcessModel& M, int n) {
  InfoReport r = compute_info_report(M, n, false);
  return std::fabs(r.mutual_info - r.di_x_to_y - r.di_y_delayed_to_x);
}

namespace {

double eval_quantity(const JointProcessModel& M, RateQuantity q, int n) {
  switch (q) {
    case RateQuantity::DirectedInfoYtoX: return directed_info_y_to_x(M, n);
    case RateQuantity::DirectedInfoXtoY: return directed_info_x_to_y(M, n);
    case RateQuantity::MutualInfo: return mutual_info(M, n);
    case RateQuantity::Lautum: return lautum_family(M, n).l;
    case RateQuantity::Lautum1XtoY: return lautum_family(M, n).l1_xy;
    case RateQuantity::Lautum2XtoY: return lautum_family(M, n).l2_xy;
  }
  fail(ErrorKind::Domain, "unknown rate quantity");
}

}  // namespace

RateResult information_rate(const JointProcessModel& M, RateQuantity q,
                            double tol, int max_n) {
  RateResult out;
  double prev_q = 0, prev_delta = 0;
  for (int n = 1; n <= max_n; ++n) {
    double qn;
    try {
      qn = eval_quantity(M, q, n);
    } catch (const Error& e) {
      if (e.kind() == ErrorKind::Capacity) break;  // report non-convergence
      throw;
    }
    double delta = qn - prev_q;
    out.rate = delta;
    out.n_used = n;
    if (n >= 2) {
      out.last_delta = std::fabs(delta - prev_delta);
      if (out.last_delta < tol) {
        out.converged = true;
        return out;
      }
    }
    prev_q = qn;
    prev_delta = delta;
  }
  return out;
}

const char* rate_quantity_name(RateQuantity q) {
  switch (q) {
    case RateQuantity::DirectedInfoYtoX: return "directed_y_to_x";
    case RateQuantity::DirectedInfoXtoY: return "directed_x_to_y";
    case RateQuantity::MutualInfo: return "mutual";
    case RateQuantity::Lautum: return "lautum";
    case RateQuantity::Lautum1XtoY: return "lautum1";
    case RateQuantity::Lautum2XtoY: return "lautum2";
  }
  return "unknown";
}

}  // namespace di

#ifndef DI_INFO_HPP
#define DI_INFO_HPP

/** @file
 * Information measures for finite-horizon pair processes (bits).
 *
 * Directed information and its delayed variant are entropy
 * differences:
 *
 *   I(Y^n -> X^n)     = H(X^n) - H(X^n || Y^n)
 *   I(Y^{n-1} -> X^n) = H(X^n) - H(X^n || Y^{n-1})
 *   I(X^n -> Y^n)     = H(Y^n) - H(Y^n || X^n)
 *
 * where the X -> Y direction uses the convention that x_i may affect
 * y_i instantly, i.e. conditioning is on x^i at step i. Conservation:
 *
 *   I(X^n ; Y^n) = I(X^n -> Y^n) + I(Y^{n-1} -> X^n).
 *
 * The lautum family replaces the joint by the independent product in
 * the outer expectation:
 *
 *   L(X^n; Y^n)      = sum p(x)p(y) log p(x)p(y)/p(x,y)
 *   L1(X^n -> Y^n)   = sum p(x)p(y) log p(y)/p(y || x^n)
 *   L2(X^n -> Y^n)   = sum p(x || y^{n-1}) p(y) log p(y)/p(y || x^n)
 *
 * with delayed variants defined analogously, and the conservation law
 *   L = L1(X^n -> Y^n) + L1(Y^{n-1} -> X^n).
 */

#include <string>
#include <vector>

#include "di/model.hpp"

namespace di {

/// All finite-horizon measures for one model at horizon n.
struct InfoReport {
  int n = 0;
  double h_joint = 0;            ///< H(X^n, Y^n)
  double h_x = 0;                ///< H(X^n)
  double h_y = 0;                ///< H(Y^n)
  double h_x_given_y_causal = 0;   ///< H(X^n || Y^n)
  double h_x_given_y_delayed = 0;  ///< H(X^n || Y^{n-1})
  double h_y_given_x_causal = 0;   ///< H(Y^n || X^n)
  double h_y_given_x_delayed = 0;  ///< H(Y^n || X^{n-1})
  double mutual_info = 0;          ///< I(X^n ; Y^n)
  double di_y_to_x = 0;            ///< I(Y^n -> X^n)
  double di_y_delayed_to_x = 0;    ///< I(Y^{n-1} -> X^n)
  double di_x_to_y = 0;            ///< I(X^n -> Y^n)
  double lautum = 0;               ///< L(X^n ; Y^n)
  double lautum1_x_to_y = 0;       ///< L1(X^n -> Y^n)
  double lautum2_x_to_y = 0;       ///< L2(X^n -> Y^n)
  double lautum1_y_delayed_to_x = 0;  ///< L1(Y^{n-1} -> X^n)
  double lautum1_y_to_x = 0;       ///< L1(Y^n -> X^n)
  double lautum2_y_to_x = 0;       ///< L2(Y^n -> X^n)
};

/// Compute every field. The lautum family needs pair enumeration and
/// is subject to the capacity guard; pass with_lautum = false to skip
/// those fields (left zero) for horizons beyond the guard.
InfoReport compute_info_report(const JointProcessModel& M, int n,
                               bool with_lautum = true);

/// Individual measures (bits).
double directed_info_y_to_x(const JointProcessModel& M, int n);
double directed_info_y_to_x_delayed(const JointProcessModel& M, int n);
double directed_info_x_to_y(const JointProcessModel& M, int n);
double mutual_info(const JointProcessModel& M, int n);

/// Conservation residual |I(X;Y) - I(X->Y) - I(Y_delayed->X)| at n.
double conservation_residual(const JointProcessModel& M, int n);

/// Quantities whose per-step rate can be extracted.
enum class RateQuantity {
  DirectedInfoYtoX,
  DirectedInfoXtoY,
  MutualInfo,
  Lautum,
  Lautum1XtoY,
  Lautum2XtoY,
};

/// Rate extraction by increment convergence: evaluates Q(n) for
/// n = 1, 2, ... and stops when successive increments differ by less
/// than tol (or capacity/max_n is reached, reported as not converged).
struct RateResult {
  double rate = 0;          ///< last increment Q(n) - Q(n-1)
  bool converged = false;
  int n_used = 0;           ///< horizon at which iteration stopped
  double last_delta = 0;    ///< |increment difference| at stop
};

RateResult information_rate(const JointProcessModel& M, RateQuantity q,
                            double tol = kRateTol, int max_n = 64);

const char* rate_quantity_name(RateQuantity q);

}  // namespace di

#endif  // DI_INFO_HPP

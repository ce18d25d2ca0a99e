/** @file
 * Prefix-tree walks with latent-history beliefs for one-sided
 * marginals (p(x^n), p(y^n), H(X^n), H(Y^n), p(x_i | x^{i-1})).
 */

#include "di/treewalk.hpp"

#include <cmath>

#include "di/stats.hpp"

namespace di {

namespace {

/// Cost guard for a one-sided walk: prefix-tree leaves times latent
/// tail states must stay within the enumeration budget.
void check_tree_capacity(const JointProcessModel& M, int n, int side_alphabet,
                         int latent_alphabet) {
  double cost = 1;
  for (int i = 0; i < n; ++i) {
    cost *= side_alphabet;
    if (cost > kEnumGuard) break;
  }
  cost *= static_cast<double>(ipow(latent_alphabet, M.order));
  if (cost > kEnumGuard)
    fail(ErrorKind::Capacity, "prefix-tree walk exceeds the enumeration guard");
}

/// Advance a packed y-tail within/into the next stage.
inline std::int64_t advance_tail(std::int64_t code, int m, int order, int a,
                                 int sym) {
  if (m < order) return code + static_cast<std::int64_t>(sym) * ipow(a, m);
  if (order == 0) return 0;
  return code / a + static_cast<std::int64_t>(sym) * ipow(a, order - 1);
}

/// Internal visitor: step i (1-based), prefix symbols (length i-1),
/// prefix probability, and the normalized predictive pmf.
using CoreVisitor =
    std::function<void(int i, const int* prefix, double prefix_prob,
                       const double* pred)>;

/// Depth-first walk over x-prefixes. bel[yh] = P(prefix, y-tail = yh).
void walk_x_rec(const JointProcessModel& M, int n, int i, RollingHistory xh,
                std::vector<double>& bel, int m, std::vector<int>& prefix,
                const CoreVisitor& visit) {
  double prefix_prob = 0;
  for (double w : bel) prefix_prob += w;
  if (prefix_prob <= 0) return;

  std::vector<double> pred(static_cast<std::size_t>(M.nx), 0.0);
  for (std::int64_t yc = 0; yc < static_cast<std::int64_t>(bel.size()); ++yc) {
    double w = bel[static_cast<std::size_t>(yc)];
    if (w <= 0) continue;
    const Pmf& b = M.backward_at(m, xh.code, yc);
    for (int x = 0; x < M.nx; ++x) pred[static_cast<std::size_t>(x)] += w * b[x];
  }
  for (int x = 0; x < M.nx; ++x) pred[static_cast<std::size_t>(x)] /= prefix_prob;

  visit(i, prefix.data(), prefix_prob, pred.data());
  if (i == n) return;

  int m2 = std::min(i, M.order);
  for (int x = 0; x < M.nx; ++x) {
    if (pred[static_cast<std::size_t>(x)] <= 0) continue;
    std::vector<double> bel2(static_cast<std::size_t>(ipow(M.ny, m2)), 0.0);
    for (std::int64_t yc = 0; yc < static_cast<std::int64_t>(bel.size()); ++yc) {
      double w = bel[static_cast<std::size_t>(yc)];
      if (w <= 0) continue;
      double wx = w * M.backward_at(m, xh.code, yc)[x];
      if (wx <= 0) continue;
      const Pmf& f = M.forward_at(m, M.forward_xcode(m, xh.code, x), yc);
      for (int y = 0; y < M.ny; ++y) {
        if (f[y] <= 0) continue;
        bel2[static_cast<std::size_t>(advance_tail(yc, m, M.order, M.ny, y))] +=
            wx * f[y];
      }
    }
    RollingHistory xh2 = xh;
    xh2.push(x, M.nx, M.order);
    prefix.push_back(x);
    walk_x_rec(M, n, i + 1, xh2, bel2, m2, prefix, visit);
    prefix.pop_back();
  }
}

void walk_x_core(const JointProcessModel& M, int n, const CoreVisitor& visit) {
  check_tree_capacity(M, n, M.nx, M.ny);
  std::vector<double> bel(1, 1.0);
  std::vector<int> prefix;
  RollingHistory xh;
  walk_x_rec(M, n, 1, xh, bel, 0, prefix, visit);
}

/// Depth-first walk over y-prefixes. bel[xh] = P(prefix, x-tail = xh);
/// the hidden x_i is integrated out within each step.
void walk_y_rec(const JointProcessModel& M, int n, int i, RollingHistory yh,
                std::vector<double>& bel, int m, std::vector<int>& prefix,
                const CoreVisitor& visit) {
  double prefix_prob = 0;
  for (double w : bel) prefix_prob += w;
  if (prefix_prob <= 0) return;

  std::vector<double> marg(static_cast<std::size_t>(M.ny));
  std::vector<double> pred(static_cast<std::size_t>(M.ny), 0.0);
  for (std::int64_t xc = 0; xc < static_cast<std::int64_t>(bel.size()); ++xc) {
    double w = bel[static_cast<std::size_t>(xc)];
    if (w <= 0) continue;
    marginal_forward(M, m, xc, yh.code, marg.data());
    for (int y = 0; y < M.ny; ++y) pred[static_cast<std::size_t>(y)] += w * marg[static_cast<std::size_t>(y)];
  }
  for (int y = 0; y < M.ny; ++y) pred[static_cast<std::size_t>(y)] /= prefix_prob;

  visit(i, prefix.data(), prefix_prob, pred.data());
  if (i == n) return;

  int m2 = std::min(i, M.order);
  for (int y = 0; y < M.ny; ++y) {
    if (pred[static_cast<std::size_t>(y)] <= 0) continue;
    std::vector<double> bel2(static_cast<std::size_t>(ipow(M.nx, m2)), 0.0);
    for (std::int64_t xc = 0; xc < static_cast<std::int64_t>(bel.size()); ++xc) {
      double w = bel[static_cast<std::size_t>(xc)];
      if (w <= 0) continue;
      const Pmf& b = M.backward_at(m, xc, yh.code);
      for (int x = 0; x < M.nx; ++x) {
        if (b[x] <= 0) continue;
        double f =
            M.forward_at(m, M.forward_xcode(m, xc, x), yh.code)[y];
        if (f <= 0) continue;
        bel2[static_cast<std::size_t>(advance_tail(xc, m, M.order, M.nx, x))] +=
            w * b[x] * f;
      }
    }
    RollingHistory yh2 = yh;
    yh2.push(y, M.ny, M.order);
    prefix.push_back(y);
    walk_y_rec(M, n, i + 1, yh2, bel2, m2, prefix, visit);
    prefix.pop_back();
  }
}

void walk_y_core(const JointProcessModel& M, int n, const CoreVisitor& visit) {
  check_tree_capacity(M, n, M.ny, M.nx);
  std::vector<double> bel(1, 1.0);
  std::vector<int> prefix;
  RollingHistory yh;
  walk_y_rec(M, n, 1, yh, bel, 0, prefix, visit);
}

}  // namespace

double entropy_x_marginal(const JointProcessModel& M, int n) {
  return entropy_x_marginal_prefix(M, n).back();
}

double entropy_y_marginal(const JointProcessModel& M, int n) {
  return entropy_y_marginal_prefix(M, n).back();
}

std::vector<double> entropy_x_marginal_prefix(const JointProcessModel& M,
                                              int n) {
  // H(X^t) = sum_{i<=t} E[H(X_i | X^{i-1})], accumulated per depth.
  std::vector<double> per_depth(static_cast<std::size_t>(n), 0.0);
  walk_x_core(M, n, [&](int i, const int*, double pp, const double* pred) {
    per_depth[static_cast<std::size_t>(i - 1)] += pp * entropy_bits(pred, M.nx);
  });
  for (int t = 1; t < n; ++t)
    per_depth[static_cast<std::size_t>(t)] += per_depth[static_cast<std::size_t>(t - 1)];
  return per_depth;
}

std::vector<double> entropy_y_marginal_prefix(const JointProcessModel& M,
                                              int n) {
  std::vector<double> per_depth(static_cast<std::size_t>(n), 0.0);
  walk_y_core(M, n, [&](int i, const int*, double pp, const double* pred) {
    per_depth[static_cast<std::size_t>(i - 1)] += pp * entropy_bits(pred, M.ny);
  });
  for (int t = 1; t < n; ++t)
    per_depth[static_cast<std::size_t>(t)] += per_depth[static_cast<std::size_t>(t - 1)];
  return per_depth;
}

std::vector<double> x_marginal_table(const JointProcessModel& M, int n) {
  std::vector<double> table(static_cast<std::size_t>(ipow(M.nx, n)), 0.0);
  walk_x_core(M, n, [&](int i, const int* prefix, double pp, const double* pred) {
    if (i != n) return;
    // Sequence index: first symbol most significant.
    std::int64_t base = 0;
    for (int j = 0; j < n - 1; ++j) base = base * M.nx + prefix[j];
    for (int x = 0; x < M.nx; ++x)
      table[static_cast<std::size_t>(base * M.nx + x)] = pp * pred[x];
  });
  return table;
}

std::vector<double> y_marginal_table(const JointProcessModel& M, int n) {
  std::vector<double> table(static_cast<std::size_t>(ipow(M.ny, n)), 0.0);
  walk_y_core(M, n, [&](int i, const int* prefix, double pp, const double* pred) {
    if (i != n) return;
    std::int64_t base = 0;
    for (int j = 0; j < n - 1; ++j) base = base * M.ny + prefix[j];
    for (int y = 0; y < M.ny; ++y)
      table[static_cast<std::size_t>(base * M.ny + y)] = pp * pred[y];
  });
  return table;
}

void walk_x_prefixes(const JointProcessModel& M, int n,
                     const PrefixVisitor& visit) {
  walk_x_core(M, n, visit);
}

OnlineXMarginal::OnlineXMarginal(const JointProcessModel& M)
    : model_(M), belief_(1, 1.0) {}

void OnlineXMarginal::predict(double* out) const {
  const JointProcessModel& M = model_;
  int m = std::min(step_ - 1, M.order);
  double total = 0;
  for (int x = 0; x < M.nx; ++x) out[x] = 0;
  for (std::int64_t yc = 0; yc < static_cast<std::int64_t>(belief_.size()); ++yc) {
    double w = belief_[static_cast<std::size_t>(yc)];
    if (w <= 0) continue;
    total += w;
    const Pmf& b = M.backward_at(m, xhist_.code, yc);
    for (int x = 0; x < M.nx; ++x) out[x] += w * b[x];
  }
  if (total <= 0) fail(ErrorKind::Support, "predictor conditioned on a null event");
  for (int x = 0; x < M.nx; ++x) out[x] /= total;
}

void OnlineXMarginal::observe(int x) {
  const JointProcessModel& M = model_;
  int m = std::min(step_ - 1, M.order);
  int m2 = std::min(step_, M.order);
  std::vector<double> bel2(static_cast<std::size_t>(ipow(M.ny, m2)), 0.0);
  double total = 0;
  for (std::int64_t yc = 0; yc < static_cast<std::int64_t>(belief_.size()); ++yc) {
    double w = belief_[static_cast<std::size_t>(yc)];
    if (w <= 0) continue;
    double wx = w * M.backward_at(m, xhist_.code, yc)[x];
    if (wx <= 0) continue;
    const Pmf& f = M.forward_at(m, M.forward_xcode(m, xhist_.code, x), yc);
    for (int y = 0; y < M.ny; ++y) {
      if (f[y] <= 0) continue;
      double v = wx * f[y];
      bel2[static_cast<std::size_t>(advance_tail(yc, m, M.order, M.ny, y))] += v;
      total += v;
    }
  }
  if (total <= 0)
    fail(ErrorKind::Support, "observed symbol has probability zero");
  for (double& v : bel2) v /= total;
  belief_ = std::move(bel2);
  xhist_.push(x, M.nx, M.order);
  ++step_;
}

OnlineYMarginal::OnlineYMarginal(const JointProcessModel& M)
    : model_(M), belief_(1, 1.0) {}

void OnlineYMarginal::predict(double* out) const {
  const JointProcessModel& M = model_;
  int m = std::min(step_ - 1, M.order);
  double total = 0;
  for (int y = 0; y < M.ny; ++y) out[y] = 0;
  for (std::int64_t xc = 0; xc < static_cast<std::int64_t>(belief_.size()); ++xc) {
    double w = belief_[static_cast<std::size_t>(xc)];
    if (w <= 0) continue;
    total += w;
    const Pmf& b = M.backward_at(m, xc, yhist_.code);
    for (int x = 0; x < M.nx; ++x) {
      if (b[x] <= 0) continue;
      const Pmf& f = M.forward_at(m, M.forward_xcode(m, xc, x), yhist_.code);
      for (int y = 0; y < M.ny; ++y) out[y] += w * b[x] * f[y];
    }
  }
  if (total <= 0) fail(ErrorKind::Support, "predictor conditioned on a null event");
  for (int y = 0; y < M.ny; ++y) out[y] /= total;
}

void OnlineYMarginal::observe(int y) {
  const JointProcessModel& M = model_;
  int m = std::min(step_ - 1, M.order);
  int m2 = std::min(step_, M.order);
  std::vector<double> bel2(static_cast<std::size_t>(ipow(M.nx, m2)), 0.0);
  double py = 0;
  for (std::int64_t xc = 0; xc < static_cast<std::int64_t>(belief_.size()); ++xc) {
    double w = belief_[static_cast<std::size_t>(xc)];
    if (w <= 0) continue;
    const Pmf& b = M.backward_at(m, xc, yhist_.code);
    for (int x = 0; x < M.nx; ++x) {
      if (b[x] <= 0) continue;
      double f = M.forward_at(m, M.forward_xcode(m, xc, x), yhist_.code)[y];
      if (f <= 0) continue;
      double v = w * b[x] * f;
      py += v;
      bel2[static_cast<std::size_t>(advance_tail(xc, m, M.order, M.nx, x))] += v;
    }
  }
  if (py <= 0) fail(ErrorKind::Support, "observed symbol has probability zero");
  for (double& v : bel2) v /= py;
  belief_ = std::move(bel2);
  yhist_.push(y, M.ny, M.order);
  ++step_;
}

double marginal_prob_x(const JointProcessModel& M, const std::vector<int>& xs) {
  OnlineXMarginal pred(M);
  std::vector<double> row(static_cast<std::size_t>(M.nx));
  double log2p = 0;
  for (int x : xs) {
    if (x < 0 || x >= M.nx) fail(ErrorKind::Domain, "x symbol out of alphabet");
    pred.predict(row.data());
    double p = row[static_cast<std::size_t>(x)];
    if (p <= 0) return 0.0;
    log2p += std::log2(p);
    pred.observe(x);
  }
  return std::exp2(log2p);
}

double marginal_prob_y(const JointProcessModel& M, const std::vector<int>& ys) {
  // Belief over x-tails; y_i predicted through the marginalized forward law.
  std::vector<double> bel(1, 1.0);
  RollingHistory yh;
  double log2p = 0;
  int step = 1;
  for (int y : ys) {
    if (y < 0 || y >= M.ny) fail(ErrorKind::Domain, "y symbol out of alphabet");
    int m = std::min(step - 1, M.order);
    int m2 = std::min(step, M.order);
    std::vector<double> bel2(static_cast<std::size_t>(ipow(M.nx, m2)), 0.0);
    double py = 0, total = 0;
    for (std::int64_t xc = 0; xc < static_cast<std::int64_t>(bel.size()); ++xc) {
      double w = bel[static_cast<std::size_t>(xc)];
      if (w <= 0) continue;
      total += w;
      const Pmf& b = M.backward_at(m, xc, yh.code);
      for (int x = 0; x < M.nx; ++x) {
        if (b[x] <= 0) continue;
        double f = M.forward_at(m, M.forward_xcode(m, xc, x), yh.code)[y];
        if (f <= 0) continue;
        double v = w * b[x] * f;
        py += v;
        bel2[static_cast<std::size_t>(advance_tail(xc, m, M.order, M.nx, x))] += v;
      }
    }
    if (total <= 0 || py <= 0) return 0.0;
    log2p += std::log2(py / total);
    for (double& v : bel2) v /= py;
    bel = std::move(bel2);
    yh.push(y, M.ny, M.order);
    ++step;
  }
  return std::exp2(log2p);
}

}  // namespace di

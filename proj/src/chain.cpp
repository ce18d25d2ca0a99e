/** @file
 * Context-chain dynamic programming over joint truncated histories.
 *
 * The layer distribution rho_t[(xcode, ycode)] = P(tail states at time
 * t) is propagated with the model kernels; per-step contributions to
 * the five entropies are expectations of local functions of the state,
 * e.g. H(X_i | X^{i-1}, Y^i) adds
 *
 *   sum_state rho(state) * sum_y p(y_i|state) * H(posterior over x).
 */

#include "di/chain.hpp"

#include <cmath>

#include "di/stats.hpp"

namespace di {

void run_chain(const JointProcessModel& M, int n, const ChainVisitor& visit) {
  ChainLayer layer;
  layer.m = 0;
  layer.rho.assign(1, 1.0);
  for (int i = 1; i <= n; ++i) {
    visit(i, layer);
    // Transition to the next layer.
    int m = layer.m;
    int m2 = std::min(i, M.order);
    ChainLayer next;
    next.m = m2;
    next.rho.assign(static_cast<std::size_t>(ipow(M.nx, m2) * ipow(M.ny, m2)), 0.0);
    std::int64_t nyc = ipow(M.ny, m);
    std::int64_t nyc2 = ipow(M.ny, m2);
    for (std::int64_t sc = 0; sc < static_cast<std::int64_t>(layer.rho.size()); ++sc) {
      double w = layer.rho[static_cast<std::size_t>(sc)];
      if (w <= 0) continue;
      std::int64_t xc = sc / nyc, yc = sc % nyc;
      const Pmf& b = M.backward_at(m, xc, yc);
      for (int x = 0; x < M.nx; ++x) {
        if (b[x] <= 0) continue;
        const Pmf& f = M.forward_at(m, M.forward_xcode(m, xc, x), yc);
        for (int y = 0; y < M.ny; ++y) {
          if (f[y] <= 0) continue;
          HistState h{m, xc, yc};
          h.advance(M, x, y);
          next.rho[static_cast<std::size_t>(h.xcode * nyc2 + h.ycode)] +=
              w * b[x] * f[y];
        }
      }
    }
    layer = std::move(next);
  }
}

namespace {

/// Per-step entropy contributions at one layer.
struct StepAccum {
  double h_joint = 0;
  double h_x_causal = 0;
  double h_x_delayed = 0;
  double h_y_causal = 0;
  double h_y_delayed = 0;
};

StepAccum step_entropies(const JointProcessModel& M, const ChainLayer& layer) {
  StepAccum a;
  std::int64_t nyc = ipow(M.ny, layer.m);
  std::vector<double> marg(static_cast<std::size_t>(M.ny));
  std::vector<double> post(static_cast<std::size_t>(M.nx));
  for (std::int64_t sc = 0; sc < static_cast<std::int64_t>(layer.rho.size()); ++sc) {
    double w = layer.rho[static_cast<std::size_t>(sc)];
    if (w <= 0) continue;
    std::int64_t xc = sc / nyc, yc = sc % nyc;
    const Pmf& b = M.backward_at(layer.m, xc, yc);

    // H(X_i | X^{i-1}, Y^{i-1}): entropy of the backward kernel.
    a.h_x_delayed += w * entropy_bits(b.p.data(), M.nx);

    // H(Y_i | Y^{i-1}, X^i): forward-kernel entropy, weighted by B.
    // H(X_i,Y_i | past): joint-step entropy.
    double hy_c = 0;
    for (int x = 0; x < M.nx; ++x) {
      if (b[x] <= 0) continue;
      const Pmf& f = M.forward_at(layer.m, M.forward_xcode(layer.m, xc, x), yc);
      hy_c += b[x] * entropy_bits(f.p.data(), M.ny);
    }
    a.h_y_causal += w * hy_c;
    a.h_joint += w * (entropy_bits(b.p.data(), M.nx) + hy_c);

    // H(Y_i | Y^{i-1}, X^{i-1}): entropy of the marginalized forward law.
    marginal_forward(M, layer.m, xc, yc, marg.data());
    a.h_y_delayed += w * entropy_bits(marg.data(), M.ny);

    // H(X_i | X^{i-1}, Y^i): expected posterior entropy under p(y|past).
    double hx_c = 0;
    for (int y = 0; y < M.ny; ++y) {
      if (marg[static_cast<std::size_t>(y)] <= 0) continue;
      bayes_posterior(M, layer.m, xc, yc, y, post.data());
      hx_c += marg[static_cast<std::size_t>(y)] * entropy_bits(post.data(), M.nx);
    }
    a.h_x_causal += w * hx_c;
  }
  return a;
}

}  // namespace

ChainEntropies chain_entropies(const JointProcessModel& M, int n) {
  std::vector<ChainEntropies> pre = chain_entropies_prefix(M, n);
  return pre.empty() ? ChainEntropies{} : pre.back();
}

std::vector<ChainEntropies> chain_entropies_prefix(const JointProcessModel& M,
                                                   int n) {
  std::vector<ChainEntropies> out;
  out.reserve(static_cast<std::size_t>(n));
  ChainEntropies run;
  run_chain(M, n, [&](int, const ChainLayer& layer) {
    StepAccum a = step_entropies(M, layer);
    run.h_joint += a.h_joint;
    run.h_x_causal += a.h_x_causal;
    run.h_x_delayed += a.h_x_delayed;
    run.h_y_causal += a.h_y_causal;
    run.h_y_delayed += a.h_y_delayed;
    out.push_back(run);
  });
  return out;
}

}  // namespace di

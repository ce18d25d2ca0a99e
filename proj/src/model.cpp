/** @file
 * JointProcessModel: storage, validation, derived conditionals,
 * sequence probabilities, JSON (de)serialization, and builders.
 */

#include "di/model.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include "di/rng.hpp"
#include "json.hpp"

namespace di {

namespace {

/// Largest dense kernel table accepted per stage.
constexpr std::int64_t kMaxStageCells = 1 << 20;

StageTable make_stage(int xlen, int ylen, int nx, int ny) {
  StageTable t;
  t.xlen = xlen;
  t.ylen = ylen;
  std::int64_t cells = ipow(nx, xlen) * ipow(ny, ylen);
  if (cells > kMaxStageCells)
    fail(ErrorKind::Capacity, "kernel stage table too large");
  t.cells.assign(static_cast<std::size_t>(cells), Pmf{});
  return t;
}

JointProcessModel make_skeleton(int nx, int ny, int order) {
  if (nx < 1 || nx > kMaxAlphabet || ny < 1 || ny > kMaxAlphabet)
    fail(ErrorKind::Domain, "alphabet size outside [1, 16]");
  if (order < 0) fail(ErrorKind::Domain, "order must be nonnegative");
  JointProcessModel M;
  M.nx = nx;
  M.ny = ny;
  M.order = order;
  for (int m = 0; m <= order; ++m) {
    M.backward.push_back(make_stage(m, m, nx, ny));
    M.forward.push_back(make_stage(std::min(m + 1, order), m, nx, ny));
  }
  return M;
}

std::string context_name(const JointProcessModel& M, const StageTable& t,
                         std::int64_t xcode, std::int64_t ycode) {
  return format_context_key(unpack_history(xcode, t.xlen, M.nx),
                            unpack_history(ycode, t.ylen, M.ny));
}

}  // namespace

void validate_pmf(const Pmf& f, int size, const std::string& where) {
  if (f.size() != size)
    fail(ErrorKind::Parse, "pmf has wrong length at " + where);
  double sum = 0;
  for (double v : f.p) {
    if (!(v >= 0.0 && v <= 1.0))
      fail(ErrorKind::Parse, "pmf entry outside [0,1] at " + where);
    sum += v;
  }
  if (std::fabs(sum - 1.0) > 1e-12)
    fail(ErrorKind::Parse, "pmf does not sum to 1 at " + where);
}

const Pmf& JointProcessModel::backward_at(int m, std::int64_t xcode,
                                          std::int64_t ycode) const {
  const StageTable& t = backward[static_cast<std::size_t>(m)];
  const Pmf& f = t.cells[static_cast<std::size_t>(t.index(xcode, ycode, ny))];
  if (f.empty())
    fail(ErrorKind::Domain,
         "backward kernel missing for context " + context_name(*this, t, xcode, ycode));
  return f;
}

const Pmf& JointProcessModel::forward_at(int m, std::int64_t xcode,
                                         std::int64_t ycode) const {
  const StageTable& t = forward[static_cast<std::size_t>(m)];
  const Pmf& f = t.cells[static_cast<std::size_t>(t.index(xcode, ycode, ny))];
  if (f.empty())
    fail(ErrorKind::Domain,
         "forward kernel missing for context " + context_name(*this, t, xcode, ycode));
  return f;
}

void validate_model(const JointProcessModel& M) {
  if (M.nx < 1 || M.nx > kMaxAlphabet || M.ny < 1 || M.ny > kMaxAlphabet)
    fail(ErrorKind::Parse, "alphabet size outside [1, 16]");
  if (M.order < 0) fail(ErrorKind::Parse, "order must be nonnegative");
  if (static_cast<int>(M.backward.size()) != M.order + 1 ||
      static_cast<int>(M.forward.size()) != M.order + 1)
    fail(ErrorKind::Parse, "kernel stage count does not match order");

  for (int m = 0; m <= M.order; ++m) {
    const StageTable& b = M.backward[static_cast<std::size_t>(m)];
    const StageTable& f = M.forward[static_cast<std::size_t>(m)];
    if (b.xlen != m || b.ylen != m || f.ylen != m ||
        f.xlen != std::min(m + 1, M.order))
      fail(ErrorKind::Parse, "kernel stage shape mismatch");
    for (std::size_t c = 0; c < b.cells.size(); ++c)
      if (!b.cells[c].empty())
        validate_pmf(b.cells[c], M.nx, "backward stage " + std::to_string(m));
    for (std::size_t c = 0; c < f.cells.size(); ++c)
      if (!f.cells[c].empty())
        validate_pmf(f.cells[c], M.ny, "forward stage " + std::to_string(m));
  }

  // Reachability sweep: every context visited with positive probability
  // from the empty history must carry a kernel entry. States are
  // (xcode, ycode) per stage; stage k is iterated to a fixed point.
  auto cell_of = [&](const StageTable& t, std::int64_t xc, std::int64_t yc) -> const Pmf& {
    return t.cells[static_cast<std::size_t>(t.index(xc, yc, M.ny))];
  };
  std::vector<std::pair<std::int64_t, std::int64_t>> frontier = {{0, 0}};
  std::vector<char> seen_final(
      static_cast<std::size_t>(ipow(M.nx, M.order) * ipow(M.ny, M.order)), 0);
  int m = 0;
  while (!frontier.empty()) {
    const StageTable& bt = M.backward[static_cast<std::size_t>(m)];
    const StageTable& ft = M.forward[static_cast<std::size_t>(m)];
    std::vector<std::pair<std::int64_t, std::int64_t>> next;
    for (auto [xc, yc] : frontier) {
      const Pmf& b = cell_of(bt, xc, yc);
      if (b.empty())
        fail(ErrorKind::Parse, "reachable backward context missing: " +
                                   context_name(M, bt, xc, yc));
      for (int x = 0; x < M.nx; ++x) {
        if (b[x] <= 0) continue;
        std::int64_t fxc = M.forward_xcode(m, xc, x);
        const Pmf& fw = cell_of(ft, fxc, yc);
        if (fw.empty())
          fail(ErrorKind::Parse, "reachable forward context missing: " +
                                     context_name(M, ft, fxc, yc));
        for (int y = 0; y < M.ny; ++y) {
          if (fw[y] <= 0) continue;
          HistState h{m, xc, yc};
          h.advance(M, x, y);
          if (h.m == M.order) {
            std::int64_t id = h.xcode * ipow(M.ny, M.order) + h.ycode;
            if (!seen_final[static_cast<std::size_t>(id)]) {
              seen_final[static_cast<std::size_t>(id)] = 1;
              next.emplace_back(h.xcode, h.ycode);
            }
          } else {
            next.emplace_back(h.xcode, h.ycode);
          }
        }
      }
    }
    if (m < M.order) {
      frontier = std::move(next);
      ++m;
    } else {
      // Fixed point at the final stage: only newly seen states continue.
      frontier = std::move(next);
    }
  }
}

void bayes_posterior(const JointProcessModel& M, int m, std::int64_t xcode,
                     std::int64_t ycode, int y, double* out) {
  const Pmf& b = M.backward_at(m, xcode, ycode);
  double den = 0;
  for (int x = 0; x < M.nx; ++x) {
    double w =
        b[x] <= 0 ? 0.0
                  : b[x] * M.forward_at(m, M.forward_xcode(m, xcode, x), ycode)[y];
    out[x] = w;
    den += w;
  }
  if (den <= 0)
    fail(ErrorKind::Support, "conditioning event has probability zero");
  for (int x = 0; x < M.nx; ++x) out[x] /= den;
}

void marginal_forward(const JointProcessModel& M, int m, std::int64_t xcode,
                      std::int64_t ycode, double* out) {
  for (int y = 0; y < M.ny; ++y) out[y] = 0;
  const Pmf& b = M.backward_at(m, xcode, ycode);
  for (int x = 0; x < M.nx; ++x) {
    if (b[x] <= 0) continue;
    const Pmf& f = M.forward_at(m, M.forward_xcode(m, xcode, x), ycode);
    for (int y = 0; y < M.ny; ++y) out[y] += b[x] * f[y];
  }
}

namespace {

void check_sequence(const JointProcessModel& M, const SequencePair& s) {
  if (s.x.size() != s.y.size())
    fail(ErrorKind::Domain, "sequence pair has unequal lengths");
  for (int v : s.x)
    if (v < 0 || v >= M.nx) fail(ErrorKind::Domain, "x symbol out of alphabet");
  for (int v : s.y)
    if (v < 0 || v >= M.ny) fail(ErrorKind::Domain, "y symbol out of alphabet");
}

/// Accumulate log2 of per-step factors chosen by `pick`; returns the
/// sum, or -inf if any factor is zero.
template <typename Pick>
double log2_product(const JointProcessModel& M, const SequencePair& s,
                    Pick pick) {
  HistState h;
  double acc = 0;
  const int n = s.length();
  for (int i = 0; i < n; ++i) {
    double f = pick(h, s.x[static_cast<std::size_t>(i)],
                    s.y[static_cast<std::size_t>(i)]);
    if (f <= 0) return -std::numeric_limits<double>::infinity();
    acc += std::log2(f);
    h.advance(M, s.x[static_cast<std::size_t>(i)], s.y[static_cast<std::size_t>(i)]);
  }
  return acc;
}

}  // namespace

double log2_joint_prob(const JointProcessModel& M, const SequencePair& s) {
  check_sequence(M, s);
  return log2_product(M, s, [&](const HistState& h, int x, int y) {
    double b = M.backward_at(h.m, h.xcode, h.ycode)[x];
    if (b <= 0) return 0.0;
    return b * M.forward_at(h.m, M.forward_xcode(h.m, h.xcode, x), h.ycode)[y];
  });
}

double joint_prob(const JointProcessModel& M, const SequencePair& s) {
  check_sequence(M, s);
  const int n = s.length();
  if (n > 32) return std::exp2(log2_joint_prob(M, s));
  HistState h;
  double acc = 1;
  for (int i = 0; i < n; ++i) {
    int x = s.x[static_cast<std::size_t>(i)], y = s.y[static_cast<std::size_t>(i)];
    double b = M.backward_at(h.m, h.xcode, h.ycode)[x];
    double f = b <= 0 ? 0.0
                      : M.forward_at(h.m, M.forward_xcode(h.m, h.xcode, x), h.ycode)[y];
    acc *= b * f;
    if (acc == 0) return 0;
    h.advance(M, x, y);
  }
  return acc;
}

double log2_causal_cond_x(const JointProcessModel& M, const SequencePair& s,
                          int delay) {
  check_sequence(M, s);
  if (delay != 0 && delay != 1)
    fail(ErrorKind::Domain, "unsupported delay (must be 0 or 1)");
  if (delay == 1) {
    return log2_product(M, s, [&](const HistState& h, int x, int) {
      return M.backward_at(h.m, h.xcode, h.ycode)[x];
    });
  }
  std::vector<double> post(static_cast<std::size_t>(M.nx));
  return log2_product(M, s, [&](const HistState& h, int x, int y) {
    bayes_posterior(M, h.m, h.xcode, h.ycode, y, post.data());
    return post[static_cast<std::size_t>(x)];
  });
}

double log2_causal_cond_y(const JointProcessModel& M, const SequencePair& s,
                          int delay) {
  check_sequence(M, s);
  if (delay != 0 && delay != 1)
    fail(ErrorKind::Domain, "unsupported delay (must be 0 or 1)");
  if (delay == 0) {
    return log2_product(M, s, [&](const HistState& h, int x, int y) {
      return M.forward_at(h.m, M.forward_xcode(h.m, h.xcode, x), h.ycode)[y];
    });
  }
  std::vector<double> marg(static_cast<std::size_t>(M.ny));
  return log2_product(M, s, [&](const HistState& h, int, int y) {
    marginal_forward(M, h.m, h.xcode, h.ycode, marg.data());
    return marg[static_cast<std::size_t>(y)];
  });
}

SequencePair sample_pair(const JointProcessModel& M, int n, std::uint64_t seed) {
  std::mt19937_64 g(mix64(seed));
  SequencePair s;
  s.x.reserve(static_cast<std::size_t>(n));
  s.y.reserve(static_cast<std::size_t>(n));
  HistState h;
  std::vector<double> row;
  for (int i = 0; i < n; ++i) {
    const Pmf& b = M.backward_at(h.m, h.xcode, h.ycode);
    int x = sample_index(b.p, g);
    const Pmf& f = M.forward_at(h.m, M.forward_xcode(h.m, h.xcode, x), h.ycode);
    int y = sample_index(f.p, g);
    s.x.push_back(x);
    s.y.push_back(y);
    h.advance(M, x, y);
  }
  return s;
}

// ---------------------------------------------------------------------------
// JSON serialization
// ---------------------------------------------------------------------------

namespace {

using nlohmann::ordered_json;

int parse_alphabet(const ordered_json& j, const std::string& field) {
  if (j.is_number_integer()) return j.get<int>();
  if (j.is_object() && j.contains("size") && j["size"].is_number_integer())
    return j["size"].get<int>();
  fail(ErrorKind::Parse, field + " must be an integer size");
}

void load_table(const ordered_json& jt, bool is_backward, JointProcessModel* M) {
  if (!jt.is_object())
    fail(ErrorKind::Parse, std::string(is_backward ? "backward" : "forward") +
                               " must be an object");
  for (auto it = jt.begin(); it != jt.end(); ++it) {
    std::vector<int> xh, yh;
    parse_context_key(it.key(), M->nx, M->ny, &xh, &yh);
    int xlen = static_cast<int>(xh.size());
    int ylen = static_cast<int>(yh.size());
    int m;
    if (is_backward) {
      if (xlen != ylen || xlen > M->order)
        fail(ErrorKind::Parse, "backward context has bad history lengths: '" +
                                   it.key() + "'");
      m = xlen;
    } else {
      m = ylen;
      if (m > M->order || xlen != std::min(m + 1, M->order))
        fail(ErrorKind::Parse,
             "forward context has bad history lengths: '" + it.key() + "'");
    }
    StageTable& t = is_backward ? M->backward[static_cast<std::size_t>(m)]
                                : M->forward[static_cast<std::size_t>(m)];
    if (!it.value().is_array())
      fail(ErrorKind::Parse, "kernel row must be an array at '" + it.key() + "'");
    Pmf f;
    for (const auto& v : it.value()) {
      if (!v.is_number())
        fail(ErrorKind::Parse, "kernel row entry not a number at '" + it.key() + "'");
      f.p.push_back(v.get<double>());
    }
    validate_pmf(f, is_backward ? M->nx : M->ny, "'" + it.key() + "'");
    std::int64_t idx = t.index(pack_history(xh, M->nx), pack_history(yh, M->ny), M->ny);
    Pmf& cell = t.cells[static_cast<std::size_t>(idx)];
    if (!cell.empty())
      fail(ErrorKind::Parse, "duplicate kernel context '" + it.key() + "'");
    cell = std::move(f);
  }
}

ordered_json table_to_json(const JointProcessModel& M, bool is_backward) {
  ordered_json out = ordered_json::object();
  const auto& stages = is_backward ? M.backward : M.forward;
  for (const StageTable& t : stages) {
    std::int64_t nxc = ipow(M.nx, t.xlen), nyc = ipow(M.ny, t.ylen);
    for (std::int64_t xc = 0; xc < nxc; ++xc) {
      for (std::int64_t yc = 0; yc < nyc; ++yc) {
        const Pmf& f = t.cells[static_cast<std::size_t>(t.index(xc, yc, M.ny))];
        if (f.empty()) continue;
        out[context_name(M, t, xc, yc)] = f.p;
      }
    }
  }
  return out;
}

}  // namespace

JointProcessModel parse_model_json(const std::string& text) {
  ordered_json j;
  try {
    j = ordered_json::parse(text);
  } catch (const std::exception& e) {
    fail(ErrorKind::Parse, std::string("model JSON: ") + e.what());
  }
  if (!j.is_object()) fail(ErrorKind::Parse, "model JSON root must be an object");
  for (const char* field : {"x_alphabet", "y_alphabet", "order", "backward", "forward"})
    if (!j.contains(field))
      fail(ErrorKind::Parse, std::string("model JSON missing field '") + field + "'");
  int nx = parse_alphabet(j["x_alphabet"], "x_alphabet");
  int ny = parse_alphabet(j["y_alphabet"], "y_alphabet");
  if (!j["order"].is_number_integer())
    fail(ErrorKind::Parse, "order must be an integer");
  int order = j["order"].get<int>();
  if (nx < 1 || nx > kMaxAlphabet || ny < 1 || ny > kMaxAlphabet)
    fail(ErrorKind::Parse, "alphabet size outside [1, 16]");
  if (order < 0 || order > 8) fail(ErrorKind::Parse, "order outside [0, 8]");

  JointProcessModel M = make_skeleton(nx, ny, order);
  load_table(j["backward"], true, &M);
  load_table(j["forward"], false, &M);
  validate_model(M);
  return M;
}

JointProcessModel load_model_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::Parse, "cannot open model file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_model_json(ss.str());
}

std::string model_to_json(const JointProcessModel& M) {
  ordered_json j;
  j["x_alphabet"] = M.nx;
  j["y_alphabet"] = M.ny;
  j["order"] = M.order;
  j["backward"] = table_to_json(M, true);
  j["forward"] = table_to_json(M, false);
  return j.dump(2) + "\n";
}

void save_model_json(const JointProcessModel& M, const std::string& path) {
  std::ofstream out(path);
  if (!out) fail(ErrorKind::Parse, "cannot open for writing: " + path);
  out << model_to_json(M);
}

// ---------------------------------------------------------------------------
// Builders
// ---------------------------------------------------------------------------

JointProcessModel make_example1_model(double p, double q) {
  if (p < 0 || p > 1 || q < 0 || q > 1)
    fail(ErrorKind::Domain, "example1 parameters must lie in [0,1]");
  JointProcessModel M = make_skeleton(2, 2, 1);
  // Stage 0 backward: uniform start.
  M.backward[0].cells[0] = Pmf{{0.5, 0.5}};
  // Stage 1 backward: stay with probability p, ignore y-history.
  for (int a = 0; a < 2; ++a)
    for (int yb = 0; yb < 2; ++yb) {
      Pmf f{{0.0, 0.0}};
      f.p[static_cast<std::size_t>(a)] = p;
      f.p[static_cast<std::size_t>(1 - a)] = 1 - p;
      std::int64_t idx = M.backward[1].index(a, yb, 2);
      M.backward[1].cells[static_cast<std::size_t>(idx)] = f;
    }
  // Forward: memoryless symmetric observation of the current x.
  for (int m = 0; m <= 1; ++m) {
    StageTable& t = M.forward[static_cast<std::size_t>(m)];
    std::int64_t nyc = ipow(2, t.ylen);
    for (int a = 0; a < 2; ++a)
      for (std::int64_t yc = 0; yc < nyc; ++yc) {
        Pmf f{{0.0, 0.0}};
        f.p[static_cast<std::size_t>(a)] = 1 - q;
        f.p[static_cast<std::size_t>(1 - a)] = q;
        t.cells[static_cast<std::size_t>(t.index(a, yc, 2))] = f;
      }
  }
  return M;
}

JointProcessModel make_noisy_copy_model(double q) {
  return make_example1_model(0.5, q);
}

JointProcessModel random_model(int nx, int ny, int order, std::uint64_t seed,
                               const RandomModelOptions& opts) {
  if (opts.memoryless_forward && order == 0)
    fail(ErrorKind::Domain, "memoryless_forward requires order >= 1");
  JointProcessModel M = make_skeleton(nx, ny, order);
  std::mt19937_64 g(mix64(seed));

  // Draw order is fixed: optional per-symbol observation rows first,
  // then backward stages (x-major), then forward stages.
  std::vector<std::vector<double>> obs_rows;
  if (opts.memoryless_forward)
    for (int x = 0; x < nx; ++x) obs_rows.push_back(dirichlet(ny, opts.alpha, g));

  for (int m = 0; m <= order; ++m) {
    StageTable& t = M.backward[static_cast<std::size_t>(m)];
    std::int64_t nxc = ipow(nx, t.xlen), nyc = ipow(ny, t.ylen);
    for (std::int64_t xc = 0; xc < nxc; ++xc) {
      std::vector<double> shared;
      for (std::int64_t yc = 0; yc < nyc; ++yc) {
        if (opts.no_feedback) {
          if (yc == 0) shared = dirichlet(nx, opts.alpha, g);
          t.cells[static_cast<std::size_t>(t.index(xc, yc, ny))] = Pmf{shared};
        } else {
          t.cells[static_cast<std::size_t>(t.index(xc, yc, ny))] =
              Pmf{dirichlet(nx, opts.alpha, g)};
        }
      }
    }
  }
  for (int m = 0; m <= order; ++m) {
    StageTable& t = M.forward[static_cast<std::size_t>(m)];
    std::int64_t nxc = ipow(nx, t.xlen), nyc = ipow(ny, t.ylen);
    for (std::int64_t xc = 0; xc < nxc; ++xc) {
      for (std::int64_t yc = 0; yc < nyc; ++yc) {
        if (opts.memoryless_forward) {
          // Newest x symbol sits in the top digit of the x-part.
          int newest = t.xlen == 0
                           ? 0
                           : static_cast<int>(xc / ipow(nx, t.xlen - 1));
          t.cells[static_cast<std::size_t>(t.index(xc, yc, ny))] =
              Pmf{obs_rows[static_cast<std::size_t>(newest)]};
        } else {
          t.cells[static_cast<std::size_t>(t.index(xc, yc, ny))] =
              Pmf{dirichlet(ny, opts.alpha, g)};
        }
      }
    }
  }
  return M;
}

bool has_no_feedback(const JointProcessModel& M, double tol) {
  for (const StageTable& t : M.backward) {
    std::int64_t nxc = ipow(M.nx, t.xlen), nyc = ipow(M.ny, t.ylen);
    for (std::int64_t xc = 0; xc < nxc; ++xc) {
      const Pmf* ref = nullptr;
      for (std::int64_t yc = 0; yc < nyc; ++yc) {
        const Pmf& f = t.cells[static_cast<std::size_t>(t.index(xc, yc, M.ny))];
        if (f.empty()) continue;
        if (!ref) {
          ref = &f;
          continue;
        }
        for (int x = 0; x < M.nx; ++x)
          if (std::fabs(f[x] - (*ref)[x]) > tol) return false;
      }
    }
  }
  return true;
}

JointProcessModel sever_feedback(const JointProcessModel& M) {
  if (!has_no_feedback(M))
    fail(ErrorKind::Domain, "sever_feedback requires a no-feedback model");
  const int k = M.order;
  JointProcessModel S = make_skeleton(M.nx, M.ny, k + 1);

  // Backward: same x-process, reading the inner length-min(m,k) tails.
  for (int m = 0; m <= k + 1; ++m) {
    StageTable& t = S.backward[static_cast<std::size_t>(m)];
    int mb = std::min(m, k);
    std::int64_t nxc = ipow(M.nx, t.xlen), nyc = ipow(M.ny, t.ylen);
    for (std::int64_t xc = 0; xc < nxc; ++xc) {
      std::int64_t xtail = xc / ipow(M.nx, m - mb);
      for (std::int64_t yc = 0; yc < nyc; ++yc) {
        std::int64_t ytail = yc / ipow(M.ny, m - mb);
        const Pmf& src = M.backward[static_cast<std::size_t>(mb)]
                             .cells[static_cast<std::size_t>(
                                 M.backward[static_cast<std::size_t>(mb)].index(
                                     xtail, ytail, M.ny))];
        if (src.empty()) continue;
        t.cells[static_cast<std::size_t>(t.index(xc, yc, M.ny))] = src;
      }
    }
  }

  // Forward: marginalized observation law driven by x^{i-1} only; the
  // newest x-part symbol (the current x_i) is ignored by construction.
  std::vector<double> marg(static_cast<std::size_t>(M.ny));
  for (int m = 0; m <= k + 1; ++m) {
    StageTable& t = S.forward[static_cast<std::size_t>(m)];
    int mg = std::min(m, k);
    std::int64_t nxc = ipow(M.nx, t.xlen), nyc = ipow(M.ny, t.ylen);
    for (std::int64_t xc = 0; xc < nxc; ++xc) {
      // Symbols before the current one are the low t.xlen-1 digits; at
      // stage m they number exactly mg.
      std::int64_t xprev = t.xlen == 0 ? 0 : xc % ipow(M.nx, t.xlen - 1);
      for (std::int64_t yc = 0; yc < nyc; ++yc) {
        std::int64_t ytail = yc / ipow(M.ny, m - mg);
        const Pmf& b = M.backward[static_cast<std::size_t>(mg)]
                           .cells[static_cast<std::size_t>(
                               M.backward[static_cast<std::size_t>(mg)].index(
                                   xprev, ytail, M.ny))];
        if (b.empty()) continue;
        bool ok = true;
        for (int y = 0; y < M.ny; ++y) marg[static_cast<std::size_t>(y)] = 0;
        for (int x = 0; x < M.nx && ok; ++x) {
          if (b[x] <= 0) continue;
          const StageTable& ft = M.forward[static_cast<std::size_t>(mg)];
          const Pmf& f = ft.cells[static_cast<std::size_t>(
              ft.index(M.forward_xcode(mg, xprev, x), ytail, M.ny))];
          if (f.empty()) {
            ok = false;
            break;
          }
          for (int y = 0; y < M.ny; ++y)
            marg[static_cast<std::size_t>(y)] += b[x] * f[y];
        }
        if (!ok) continue;
        t.cells[static_cast<std::size_t>(t.index(xc, yc, M.ny))] = Pmf{marg};
      }
    }
  }
  validate_model(S);
  return S;
}

}  // namespace di

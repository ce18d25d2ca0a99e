/** @file
 * Causal-side-information compression: deterministic Huffman books per
 * reachable context, bitstream round-trip, and exact expected-length
 * accounting against the causally conditioned entropy.
 */

#include "di/compression.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <queue>
#include <tuple>

#include "di/chain.hpp"
#include "di/enumerate.hpp"
#include "di/stats.hpp"
#include "di/treewalk.hpp"

namespace di {

namespace {

/// Largest per-stage codebook table (cells * ny entries).
constexpr std::int64_t kMaxBookEntries = 1 << 21;

struct HeapItem {
  double prob;
  int min_sym;  ///< smallest original symbol index below this node
  int node;

  bool operator>(const HeapItem& o) const {
    return std::tie(prob, min_sym) > std::tie(o.prob, o.min_sym);
  }
};

struct TreeNode {
  int left = -1;   ///< first-popped child (0 branch); -1 for a leaf
  int right = -1;  ///< second-popped child (1 branch)
  int sym = -1;    ///< original symbol index for leaves
};

}  // namespace

std::vector<Codeword> huffman_code(const std::vector<double>& p) {
  const int k = static_cast<int>(p.size());
  std::vector<Codeword> out(static_cast<std::size_t>(k));
  std::vector<TreeNode> nodes;
  std::priority_queue<HeapItem, std::vector<HeapItem>, std::greater<HeapItem>>
      heap;
  for (int i = 0; i < k; ++i) {
    if (p[static_cast<std::size_t>(i)] <= 0) continue;
    TreeNode leaf;
    leaf.sym = i;
    nodes.push_back(leaf);
    heap.push({p[static_cast<std::size_t>(i)], i,
               static_cast<int>(nodes.size()) - 1});
  }
  if (heap.empty())
    fail(ErrorKind::Support, "codebook requested for an empty support");
  if (heap.size() == 1) {
    // Deterministic symbol: the empty codeword.
    out[static_cast<std::size_t>(heap.top().min_sym)] = Codeword{0, 0};
    return out;
  }
  while (heap.size() >= 2) {
    HeapItem a = heap.top();
    heap.pop();
    HeapItem b = heap.top();
    heap.pop();
    TreeNode merged;
    merged.left = a.node;
    merged.right = b.node;
    nodes.push_back(merged);
    heap.push({a.prob + b.prob, std::min(a.min_sym, b.min_sym),
               static_cast<int>(nodes.size()) - 1});
  }
  // Depth-first code assignment from the root.
  struct Frame {
    int node;
    std::uint32_t bits;
    int len;
  };
  std::vector<Frame> stack{{heap.top().node, 0, 0}};
  while (!stack.empty()) {
    Frame f = stack.back();
    stack.pop_back();
    const TreeNode& nd = nodes[static_cast<std::size_t>(f.node)];
    if (nd.left < 0) {
      out[static_cast<std::size_t>(nd.sym)] = Codeword{f.bits, f.len};
      continue;
    }
    stack.push_back({nd.left, f.bits << 1, f.len + 1});
    stack.push_back({nd.right, (f.bits << 1) | 1u, f.len + 1});
  }
  return out;
}

CausalCode::CausalCode(const JointProcessModel& M, int n) : model_(&M), n_(n) {
  if (n < 1) fail(ErrorKind::Domain, "horizon n must be >= 1");
  const int stages = std::min(n, M.order + 1);
  books_.resize(static_cast<std::size_t>(stages));
  for (int m = 0; m < stages; ++m) {
    std::int64_t entries =
        static_cast<std::int64_t>(M.backward[static_cast<std::size_t>(m)]
                                      .cells.size()) *
        M.ny;
    if (entries > kMaxBookEntries)
      fail(ErrorKind::Capacity, "codebook table exceeds the capacity guard");
    books_[static_cast<std::size_t>(m)].resize(
        static_cast<std::size_t>(entries));
  }
  std::vector<double> marg(static_cast<std::size_t>(M.ny));
  std::vector<double> post(static_cast<std::size_t>(M.nx));
  run_chain(M, n, [&](int /*i*/, const ChainLayer& L) {
    const std::int64_t ystates = ipow(M.ny, L.m);
    for (std::int64_t sc = 0;
         sc < static_cast<std::int64_t>(L.rho.size()); ++sc) {
      if (L.rho[static_cast<std::size_t>(sc)] <= 0) continue;
      const std::int64_t xc = sc / ystates;
      const std::int64_t yc = sc % ystates;
      marginal_forward(M, L.m, xc, yc, marg.data());
      for (int y = 0; y < M.ny; ++y) {
        if (marg[static_cast<std::size_t>(y)] <= 0) continue;
        std::vector<Codeword>& book =
            books_[static_cast<std::size_t>(L.m)]
                  [static_cast<std::size_t>(sc * M.ny + y)];
        if (!book.empty()) continue;  // context recurs across steps
        bayes_posterior(M, L.m, xc, yc, y, post.data());
        book = huffman_code(post);
      }
    }
  });
}

const std::vector<Codeword>& CausalCode::at(int m, std::int64_t xcode,
                                            std::int64_t ycode, int y) const {
  const JointProcessModel& M = *model_;
  if (m < 0 || m >= static_cast<int>(books_.size()) || y < 0 || y >= M.ny)
    fail(ErrorKind::Domain, "codebook context outside the build horizon");
  const std::int64_t cell =
      M.backward[static_cast<std::size_t>(m)].index(xcode, ycode, M.ny);
  const std::int64_t entries =
      static_cast<std::int64_t>(books_[static_cast<std::size_t>(m)].size());
  const std::int64_t idx = cell * M.ny + y;
  if (cell < 0 || idx < 0 || idx >= entries)
    fail(ErrorKind::Domain, "codebook context outside the build horizon");
  const std::vector<Codeword>& book =
      books_[static_cast<std::size_t>(m)][static_cast<std::size_t>(idx)];
  if (book.empty())
    fail(ErrorKind::Domain,
         "no codebook: context " + format_context_key(
             unpack_history(xcode, M.nx, m), unpack_history(ycode, M.ny, m)) +
             " with y=" + std::to_string(y) + " is unreachable");
  return book;
}

void Bitstream::append(std::uint32_t b, int len) {
  for (int j = len - 1; j >= 0; --j) {
    if (nbits % 8 == 0) bytes.push_back(0);
    if ((b >> j) & 1u)
      bytes.back() |= static_cast<std::uint8_t>(1u << (7 - nbits % 8));
    ++nbits;
  }
}

void write_bitstream(const Bitstream& bs, const std::string& path) {
  std::ofstream f(path, std::ios::binary);
  if (!f) fail(ErrorKind::Usage, "cannot open output file: " + path);
  std::uint8_t header[8];
  for (int i = 0; i < 8; ++i)
    header[i] = static_cast<std::uint8_t>(bs.nbits >> (8 * (7 - i)));
  f.write(reinterpret_cast<const char*>(header), 8);
  if (!bs.bytes.empty())
    f.write(reinterpret_cast<const char*>(bs.bytes.data()),
            static_cast<std::streamsize>(bs.bytes.size()));
  if (!f) fail(ErrorKind::Usage, "failed writing output file: " + path);
}

Bitstream read_bitstream(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) fail(ErrorKind::Usage, "cannot open input file: " + path);
  std::uint8_t header[8];
  f.read(reinterpret_cast<char*>(header), 8);
  if (f.gcount() != 8)
    fail(ErrorKind::Parse, "truncated bitstream header");
  Bitstream bs;
  for (int i = 0; i < 8; ++i)
    bs.nbits = (bs.nbits << 8) | header[i];
  const std::uint64_t expect = (bs.nbits + 7) / 8;
  bs.bytes.assign(std::istreambuf_iterator<char>(f),
                  std::istreambuf_iterator<char>());
  if (bs.bytes.size() != expect)
    fail(ErrorKind::Parse, "bitstream length does not match its header");
  if (bs.nbits % 8 != 0 && !bs.bytes.empty()) {
    const std::uint8_t pad_mask =
        static_cast<std::uint8_t>(0xffu >> (bs.nbits % 8));
    if (bs.bytes.back() & pad_mask)
      fail(ErrorKind::Parse, "nonzero padding bits in final byte");
  }
  return bs;
}

Bitstream encode_sequence(const CausalCode& code, const SequencePair& s) {
  const JointProcessModel& M = code.model();
  const int n = s.length();
  if (n > code.horizon())
    fail(ErrorKind::Domain, "sequence longer than the codebook horizon");
  Bitstream bs;
  HistState st;
  for (int i = 0; i < n; ++i) {
    const int x = s.x[static_cast<std::size_t>(i)];
    const int y = s.y[static_cast<std::size_t>(i)];
    if (x < 0 || x >= M.nx) fail(ErrorKind::Domain, "x symbol out of alphabet");
    if (y < 0 || y >= M.ny) fail(ErrorKind::Domain, "y symbol out of alphabet");
    const std::vector<Codeword>& book = code.at(st.m, st.xcode, st.ycode, y);
    const Codeword& cw = book[static_cast<std::size_t>(x)];
    if (cw.len < 0)
      fail(ErrorKind::Support,
           "symbol has probability zero in its context; no codeword");
    bs.append(cw.bits, cw.len);
    st.advance(M, x, y);
  }
  return bs;
}

std::vector<int> decode_sequence(const CausalCode& code, const Bitstream& bs,
                                 const std::vector<int>& y) {
  const JointProcessModel& M = code.model();
  const int n = static_cast<int>(y.size());
  if (n > code.horizon())
    fail(ErrorKind::Domain, "sequence longer than the codebook horizon");
  std::vector<int> xs;
  xs.reserve(static_cast<std::size_t>(n));
  HistState st;
  std::uint64_t pos = 0;
  for (int i = 0; i < n; ++i) {
    const int yi = y[static_cast<std::size_t>(i)];
    if (yi < 0 || yi >= M.ny)
      fail(ErrorKind::Domain, "y symbol out of alphabet");
    const std::vector<Codeword>& book = code.at(st.m, st.xcode, st.ycode, yi);
    std::uint32_t acc = 0;
    int acc_len = 0;
    int sym = -1;
    for (;;) {
      for (int x = 0; x < M.nx; ++x) {
        const Codeword& cw = book[static_cast<std::size_t>(x)];
        if (cw.len == acc_len && cw.bits == acc) {
          sym = x;
          break;
        }
      }
      if (sym >= 0) break;
      if (pos >= bs.nbits)
        fail(ErrorKind::Parse, "bitstream truncated inside a codeword");
      const std::uint8_t byte = bs.bytes[static_cast<std::size_t>(pos / 8)];
      acc = (acc << 1) | ((byte >> (7 - pos % 8)) & 1u);
      ++acc_len;
      ++pos;
      if (acc_len > 32)
        fail(ErrorKind::Parse, "bitstream does not match any codeword");
    }
    xs.push_back(sym);
    st.advance(M, sym, yi);
  }
  if (pos != bs.nbits)
    fail(ErrorKind::Parse, "trailing bits after the decoded sequence");
  return xs;
}

LengthReport expected_length(const JointProcessModel& M, int n) {
  if (n < 1) fail(ErrorKind::Domain, "horizon n must be >= 1");
  CausalCode code(M, n);
  LengthReport rep;
  rep.n = n;
  std::vector<double> marg(static_cast<std::size_t>(M.ny));
  std::vector<double> post(static_cast<std::size_t>(M.nx));
  run_chain(M, n, [&](int /*i*/, const ChainLayer& L) {
    const std::int64_t ystates = ipow(M.ny, L.m);
    for (std::int64_t sc = 0;
         sc < static_cast<std::int64_t>(L.rho.size()); ++sc) {
      const double w = L.rho[static_cast<std::size_t>(sc)];
      if (w <= 0) continue;
      const std::int64_t xc = sc / ystates;
      const std::int64_t yc = sc % ystates;
      marginal_forward(M, L.m, xc, yc, marg.data());
      for (int y = 0; y < M.ny; ++y) {
        const double wy = marg[static_cast<std::size_t>(y)];
        if (wy <= 0) continue;
        bayes_posterior(M, L.m, xc, yc, y, post.data());
        const std::vector<Codeword>& book = code.at(L.m, xc, yc, y);
        // el and hb mirror each other term by term so that dyadic
        // conditionals (len == -log2 p exactly) yield el == hb bitwise.
        double el = 0, hb = 0, pmax = 0;
        int support = 0;
        for (int x = 0; x < M.nx; ++x) {
          const double q = post[static_cast<std::size_t>(x)];
          if (q <= 0) continue;
          el += q * static_cast<double>(book[static_cast<std::size_t>(x)].len);
          hb += q * -std::log2(q);
          pmax = std::max(pmax, q);
          ++support;
        }
        const double scale = w * wy;
        rep.expected_bits += scale * el;
        rep.entropy_bound += scale * hb;
        rep.gallager_bound +=
            scale * (support <= 1 ? 0.0 : std::min(1.0, pmax + 0.086));
      }
    }
  });
  rep.redundancy = rep.expected_bits - rep.entropy_bound;
  rep.dyadic_exact = rep.expected_bits == rep.entropy_bound;
  return rep;
}

double expected_length_no_si(const JointProcessModel& M, int n) {
  if (n < 1) fail(ErrorKind::Domain, "horizon n must be >= 1");
  double total = 0;
  std::vector<double> pmf(static_cast<std::size_t>(M.nx));
  walk_x_prefixes(M, n, [&](int /*i*/, const int* /*prefix*/, double pp,
                            const double* pred) {
    if (pp <= 0) return;
    for (int x = 0; x < M.nx; ++x) pmf[static_cast<std::size_t>(x)] = pred[x];
    std::vector<Codeword> book = huffman_code(pmf);
    double el = 0;
    for (int x = 0; x < M.nx; ++x) {
      if (pmf[static_cast<std::size_t>(x)] <= 0) continue;
      el += pmf[static_cast<std::size_t>(x)] *
            static_cast<double>(book[static_cast<std::size_t>(x)].len);
    }
    total += pp * el;
  });
  return total;
}

namespace {

/// w * log2(num/den) with w = 0 -> 0 and support violations -> +inf.
inline double wlog(double w, double num, double den) {
  if (w <= 0) return 0.0;
  if (den <= 0 || num <= 0)
    return std::numeric_limits<double>::infinity();
  return w * std::log2(num / den);
}

}  // namespace

double mismatch_redundancy(const JointProcessModel& M, int n,
                           IgnoreDirection ignore) {
  checked_pair_count(M, n);
  std::vector<double> px = x_marginal_table(M, n);
  std::vector<double> py = y_marginal_table(M, n);
  return enumerate_sum(
      M, n, [&](const PairTerms& t, const int* xs, const int* ys) {
        if (t.joint <= 0) return 0.0;
        std::int64_t xi = 0, yi = 0;
        for (int i = 0; i < n; ++i) {
          xi = xi * M.nx + xs[i];
          yi = yi * M.ny + ys[i];
        }
        const double pxv = px[static_cast<std::size_t>(xi)];
        const double pyv = py[static_cast<std::size_t>(yi)];
        double q = 0;
        switch (ignore) {
          case IgnoreDirection::Forward:
            q = t.x_delayed * pyv;
            break;
          case IgnoreDirection::Backward:
            q = pxv * t.y_causal;
            break;
          case IgnoreDirection::Both:
            q = pxv * pyv;
            break;
        }
        return wlog(t.joint, t.joint, q);
      });
}

double independent_mismatch_penalty(const JointProcessModel& M, int n,
                                    IgnoreDirection assumed) {
  checked_pair_count(M, n);
  std::vector<double> px = x_marginal_table(M, n);
  std::vector<double> py = y_marginal_table(M, n);
  return enumerate_sum(
      M, n, [&](const PairTerms& t, const int* xs, const int* ys) {
        std::int64_t xi = 0, yi = 0;
        for (int i = 0; i < n; ++i) {
          xi = xi * M.nx + xs[i];
          yi = yi * M.ny + ys[i];
        }
        const double pxv = px[static_cast<std::size_t>(xi)];
        const double pyv = py[static_cast<std::size_t>(yi)];
        const double w = pxv * pyv;
        switch (assumed) {
          case IgnoreDirection::Forward:
            return wlog(w, pyv, t.y_causal);
          case IgnoreDirection::Backward:
            return wlog(w, pxv, t.x_delayed);
          case IgnoreDirection::Both:
            return wlog(w, pyv, t.y_causal) + wlog(w, pxv, t.x_delayed);
        }
        return 0.0;
      });
}

}  // namespace di

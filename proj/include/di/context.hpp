#ifndef DI_CONTEXT_HPP
#define DI_CONTEXT_HPP

/** @file
 * Truncated-history contexts for order-k pair processes.
 *
 * At step i (1-based) the model conditions on truncated histories:
 *
 *   backward kernel p(x_i | ...) sees (x_{i-m..i-1}, y_{i-m..i-1}),
 *   forward  kernel p(y_i | ...) sees (x_{i-mx+1..i}, y_{i-m..i-1}),
 *
 * with m = min(i-1, k) and mx = min(i, k): the forward x-part includes
 * the current symbol as its newest element. Histories shorter than k
 * (near the start) are distinct contexts.
 *
 * A history of length m over alphabet A is packed into an integer code
 * with the OLDEST symbol in the least-significant digit:
 *
 *   code = sum_j hist[j] * A^j,   hist[0] = oldest.
 *
 * Appending a symbol s to a full-length history is then
 * code/A + s*A^(k-1); to a growing one, code + s*A^m.
 *
 * Serialized keys are chronological and colon/pipe-delimited, e.g.
 * "x:0,1|y:1" for x-history (0 then 1) and y-history (1); empty parts
 * serialize as "x:|y:".
 */

#include <cstdint>
#include <string>
#include <vector>

namespace di {

/// Integer power for small bases (alphabet sizes, history lengths).
inline std::int64_t ipow(int base, int exp) {
  std::int64_t r = 1;
  for (int i = 0; i < exp; ++i) r *= base;
  return r;
}

/// Pack a chronological symbol list (oldest first) into a code.
std::int64_t pack_history(const std::vector<int>& hist, int alphabet);

/// Unpack a code into a chronological symbol list of the given length.
std::vector<int> unpack_history(std::int64_t code, int len, int alphabet);

/// Rolling truncated-history state for one side of the pair process.
struct RollingHistory {
  int len = 0;            ///< current history length, grows to cap
  std::int64_t code = 0;  ///< packed symbols, oldest in lowest digit

  /// Append a symbol, truncating to at most cap symbols.
  void push(int symbol, int alphabet, int cap) {
    if (len < cap) {
      code += static_cast<std::int64_t>(symbol) * ipow(alphabet, len);
      ++len;
    } else if (cap > 0) {
      code = code / alphabet +
             static_cast<std::int64_t>(symbol) * ipow(alphabet, cap - 1);
    }
  }
};

/// Format "x:...|y:..." from chronological symbol lists.
std::string format_context_key(const std::vector<int>& xh,
                               const std::vector<int>& yh);

/// Parse "x:...|y:..." into chronological symbol lists. Throws Parse
/// errors on malformed keys or out-of-alphabet symbols.
void parse_context_key(const std::string& key, int nx, int ny,
                       std::vector<int>* xh, std::vector<int>* yh);

}  // namespace di

#endif  // DI_CONTEXT_HPP

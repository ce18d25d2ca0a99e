#ifndef DI_COMPRESSION_HPP
#define DI_COMPRESSION_HPP

/** @file
 * Instantaneous compression of X with causally available Y.
 *
 * At step i the encoder and decoder share (x^{i-1}, y^i) and use a
 * Huffman code for the causal conditional p(x_i | x^{i-1}, y^i); the
 * model makes this a per-(truncated context, y_i) codebook. Expected
 * total length EL is sandwiched by the causally conditioned entropy:
 *
 *   H(X^n || Y^n) <= EL < H(X^n || Y^n) + n,
 *
 * and per-step the Gallager redundancy bound gives
 *   EL <= sum_i E[ r_i ],  r_i = min(1, p_max,i + 0.086)
 * with p_max,i the largest causal conditional probability at step i.
 * Dyadic conditionals achieve EL = H exactly.
 *
 * Huffman construction is deterministic: merge the two smallest
 * (probability, then smallest original symbol index) entries; the
 * first-popped node receives the 0 branch. Zero-probability symbols
 * get no codeword (encoding them is a support violation); a
 * deterministic conditional yields a zero-length codeword.
 */

#include <cstdint>
#include <string>
#include <vector>

#include "di/model.hpp"

namespace di {

/// One codeword: MSB-first bits in the low `len` bits of `bits`.
struct Codeword {
  std::uint32_t bits = 0;
  int len = -1;  ///< -1 marks an excluded (zero probability) symbol
};

/// Huffman codeword lengths/codes for a pmf (deterministic tie-break).
std::vector<Codeword> huffman_code(const std::vector<double>& p);

/// Codebooks for every reachable (stage, context, y) of a model up to
/// horizon n (contexts are time invariant; n limits reachable stages).
class CausalCode {
 public:
  CausalCode(const JointProcessModel& M, int n);

  /// Codebook for context (m, xcode, ycode) and observed y; errors on
  /// contexts that were not reachable at build time.
  const std::vector<Codeword>& at(int m, std::int64_t xcode,
                                  std::int64_t ycode, int y) const;

  const JointProcessModel& model() const { return *model_; }
  int horizon() const { return n_; }

 private:
  const JointProcessModel* model_;
  int n_;
  struct Key {
    std::int64_t packed;
    bool operator==(const Key& o) const { return packed == o.packed; }
  };
  std::vector<std::vector<std::vector<Codeword>>> books_;  ///< [m][cell*ny+y]
};

/// A packed bit string with explicit bit count.
struct Bitstream {
  std::uint64_t nbits = 0;
  std::vector<std::uint8_t> bytes;  ///< MSB-first, zero padded

  void append(std::uint32_t bits, int len);
};

/// File format: 8-byte big-endian bit count, then the packed bytes.
void write_bitstream(const Bitstream& bs, const std::string& path);
Bitstream read_bitstream(const std::string& path);

/// Encode x^n given y^n (both length n). Support violations error.
Bitstream encode_sequence(const CausalCode& code, const SequencePair& s);

/// Decode x^n from the bitstream given y^n; errors on truncated or
/// trailing input.
std::vector<int> decode_sequence(const CausalCode& code, const Bitstream& bs,
                                 const std::vector<int>& y);

/// Exact expected-length accounting at horizon n.
struct LengthReport {
  int n = 0;
  double expected_bits = 0;    ///< E[total codeword length]
  double entropy_bound = 0;    ///< H(X^n || Y^n)
  double redundancy = 0;       ///< expected_bits - entropy_bound
  double gallager_bound = 0;   ///< sum_i E[min(1, p_max,i + 0.086)]
  bool dyadic_exact = false;   ///< expected_bits == entropy_bound exactly
};

LengthReport expected_length(const JointProcessModel& M, int n);

/// Expected optimal code length without side information (Huffman on
/// p(x_i | x^{i-1}), tree walk), for quantifying the causal saving.
double expected_length_no_si(const JointProcessModel& M, int n);

/// Which dependence the mismatched coder ignores.
enum class IgnoreDirection {
  Forward,   ///< codes with p(x^n || y^{n-1}) p(y^n): loses I(X^n -> Y^n)
  Backward,  ///< codes with p(x^n) p(y^n || x^n):  loses I(Y^{n-1} -> X^n)
  Both,      ///< codes with p(x^n) p(y^n):         loses I(X^n ; Y^n)
};

/// Ideal-codelength redundancy E_p[log2 p/q] of coding the pair with
/// the partially severed law q selected by `ignore`.
double mismatch_redundancy(const JointProcessModel& M, int n,
                           IgnoreDirection ignore);

/// Dual penalty: the source is actually the independent product
/// q = p(x^n) p(y^n) of the model's marginals, but the coder keeps
/// the model's dependent factor named by `assumed`:
///   Forward:  y coded with p(y^n || x^n)      -> L1(X^n -> Y^n)
///   Backward: x coded with p(x^n || y^{n-1})  -> L1(Y^{n-1} -> X^n)
///   Both: both factors kept; the penalties add to the lautum
///   information L(X^n; Y^n).
double independent_mismatch_penalty(const JointProcessModel& M, int n,
                                    IgnoreDirection assumed);

}  // namespace di

#endif  // DI_COMPRESSION_HPP

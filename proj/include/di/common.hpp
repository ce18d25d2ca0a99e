#ifndef DI_COMMON_HPP
#define DI_COMMON_HPP

/** @file
 * Shared error model, numeric constants, and version identity.
 *
 * All information quantities in this library are in bits (log base 2);
 * wealth growth is measured in doubling rate (log2 wealth per period).
 */

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace di {

inline constexpr const char* kToolName = "dit";
inline constexpr const char* kToolVersion = "1.0.0";

/// Default maximum alphabet size accepted by model validation.
inline constexpr int kMaxAlphabet = 16;

/// Brute-force enumeration guard: operations that enumerate all sequence
/// pairs refuse to run once |X|^n * |Y|^n exceeds this many atoms.
inline constexpr double kEnumGuard = 16777216.0;  // 2^24

/// Default convergence tolerance for rate (per-symbol limit) extraction.
inline constexpr double kRateTol = 1e-6;

/// Error taxonomy; each kind maps 1:1 onto a CLI exit code (see cli.cpp).
enum class ErrorKind {
  Usage,         ///< bad command line (exit 2)
  Parse,         ///< malformed model/market/sequence file (exit 3)
  Capacity,      ///< enumeration guard exceeded (exit 4)
  Support,       ///< positive weight on a zero-probability event (exit 5)
  Domain,        ///< argument outside its mathematical domain (exit 6)
  Convergence,   ///< iterative solver failed to meet its tolerance (exit 7)
};

const char* to_string(ErrorKind kind);

/// Library exception. Operations with contractual "flagged value" results
/// (ruin, unconverged rates) return flags instead; Error is for contract
/// violations the caller must not ignore.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, std::string message)
      : std::runtime_error(std::move(message)), kind_(kind) {}
  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& msg) {
  throw Error(kind, msg);
}

/// log2 with 0 -> 0 contract is NOT applied here; callers own their
/// 0*log(0) conventions. This is a plain checked log2.
inline double log2_strict(double v) { return std::log2(v); }

/// Binary entropy h(p) in bits with 0 log 0 := 0; domain-checked.
double binary_entropy(double p);

/// Bernoulli convolution p*q = (1-p)q + (1-q)p; domain-checked.
double convolve_bernoulli(double p, double q);

/// Entropy of a pmf slice in bits with 0 log 0 := 0.
double entropy_bits(const double* p, int n);

}  // namespace di

#endif  // DI_COMMON_HPP

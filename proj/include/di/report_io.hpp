#ifndef DI_REPORT_IO_HPP
#define DI_REPORT_IO_HPP

/** @file
 * Deterministic CSV/JSON report output.
 *
 * CSV files carry a header row, data rows, and a trailing metadata
 * comment line ("# dit <version> config=0x<hash>"). Numbers are
 * formatted with "%.12g" so files are byte stable across runs and
 * execution modes.
 */

#include <cstdint>
#include <string>
#include <vector>

namespace di {

/// FNV-1a 64-bit hash (for the config fingerprint in CSV trailers).
std::uint64_t fnv1a64(const std::string& s);

/// "%.12g" formatting of a double (deterministic, locale independent).
std::string format_g(double v);

class CsvWriter {
 public:
  /// Opens path for writing (truncates) and emits the header row.
  CsvWriter(const std::string& path, const std::vector<std::string>& columns,
            const std::string& config);

  /// Append one row; cells are written verbatim.
  void row(const std::vector<std::string>& cells);

  /// Write the metadata trailer and close. Called by the destructor if
  /// not invoked explicitly.
  void close();

  ~CsvWriter();

  CsvWriter(const CsvWriter&) = delete;
  CsvWriter& operator=(const CsvWriter&) = delete;

 private:
  std::string path_;
  std::string config_;
  std::string buffer_;
  int columns_ = 0;
  bool closed_ = false;
};

}  // namespace di

#endif  // DI_REPORT_IO_HPP

/** @file
 * Byte-stable CSV output with a config-fingerprint trailer.
 */

#include "di/report_io.hpp"

#include <cstdio>
#include <fstream>

#include "di/common.hpp"

namespace di {

std::uint64_t fnv1a64(const std::string& s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string format_g(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return std::string(buf);
}

CsvWriter::CsvWriter(const std::string& path,
                     const std::vector<std::string>& columns,
                     const std::string& config)
    : path_(path), config_(config), columns_(static_cast<int>(columns.size())) {
  for (std::size_t i = 0; i < columns.size(); ++i) {
    if (i) buffer_ += ',';
    buffer_ += columns[i];
  }
  buffer_ += '\n';
}

void CsvWriter::row(const std::vector<std::string>& cells) {
  if (closed_) fail(ErrorKind::Usage, "row appended to a closed CSV writer");
  if (static_cast<int>(cells.size()) != columns_)
    fail(ErrorKind::Usage, "CSV row width does not match the header");
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) buffer_ += ',';
    buffer_ += cells[i];
  }
  buffer_ += '\n';
}

void CsvWriter::close() {
  if (closed_) return;
  closed_ = true;
  char trailer[128];
  std::snprintf(trailer, sizeof(trailer), "# %s %s config=0x%016llx\n",
                kToolName, kToolVersion,
                static_cast<unsigned long long>(fnv1a64(config_)));
  buffer_ += trailer;
  std::ofstream f(path_, std::ios::binary);
  if (!f) fail(ErrorKind::Usage, "cannot open output file: " + path_);
  f.write(buffer_.data(), static_cast<std::streamsize>(buffer_.size()));
  if (!f) fail(ErrorKind::Usage, "failed writing output file: " + path_);
}

CsvWriter::~CsvWriter() {
  // Best effort on unwind; explicit close() reports errors.
  if (closed_) return;
  try {
    close();
  } catch (...) {
  }
}

}  // namespace di

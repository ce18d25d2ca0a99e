/** @file
 * History packing and context-key (de)serialization.
 */

#include "di/context.hpp"

#include <sstream>

#include "di/common.hpp"

namespace di {

std::int64_t pack_history(const std::vector<int>& hist, int alphabet) {
  std::int64_t code = 0;
  for (std::size_t j = 0; j < hist.size(); ++j)
    code += static_cast<std::int64_t>(hist[j]) * ipow(alphabet, static_cast<int>(j));
  return code;
}

std::vector<int> unpack_history(std::int64_t code, int len, int alphabet) {
  std::vector<int> hist(static_cast<std::size_t>(len));
  for (int j = 0; j < len; ++j) {
    hist[static_cast<std::size_t>(j)] = static_cast<int>(code % alphabet);
    code /= alphabet;
  }
  return hist;
}

std::string format_context_key(const std::vector<int>& xh,
                               const std::vector<int>& yh) {
  std::ostringstream os;
  os << "x:";
  for (std::size_t i = 0; i < xh.size(); ++i) {
    if (i) os << ',';
    os << xh[i];
  }
  os << "|y:";
  for (std::size_t i = 0; i < yh.size(); ++i) {
    if (i) os << ',';
    os << yh[i];
  }
  return os.str();
}

namespace {

std::vector<int> parse_symbol_list(const std::string& part, int alphabet,
                                   const std::string& key) {
  std::vector<int> out;
  if (part.empty()) return out;
  std::size_t pos = 0;
  while (pos <= part.size()) {
    std::size_t comma = part.find(',', pos);
    std::string tok = part.substr(pos, comma == std::string::npos
                                           ? std::string::npos
                                           : comma - pos);
    if (tok.empty() || tok.find_first_not_of("0123456789") != std::string::npos)
      fail(ErrorKind::Parse, "bad symbol '" + tok + "' in context key '" + key + "'");
    int v = std::stoi(tok);
    if (v >= alphabet)
      fail(ErrorKind::Parse, "symbol " + tok + " out of alphabet in key '" + key + "'");
    out.push_back(v);
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return out;
}

}  // namespace

void parse_context_key(const std::string& key, int nx, int ny,
                       std::vector<int>* xh, std::vector<int>* yh) {
  if (key.rfind("x:", 0) != 0)
    fail(ErrorKind::Parse, "context key must start with 'x:': '" + key + "'");
  std::size_t bar = key.find("|y:");
  if (bar == std::string::npos)
    fail(ErrorKind::Parse, "context key missing '|y:': '" + key + "'");
  *xh = parse_symbol_list(key.substr(2, bar - 2), nx, key);
  *yh = parse_symbol_list(key.substr(bar + 3), ny, key);
}

}  // namespace di

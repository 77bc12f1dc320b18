#include "woftrl/csv.hpp"

#include <charconv>
#include <cmath>
#include <stdexcept>

namespace woftrl {

std::string format_double(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buf[32];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  if (ec != std::errc()) throw std::runtime_error("to_chars failed");
  return std::string(buf, ptr);
}

CsvWriter::CsvWriter(std::ostream& out, const std::vector<std::string>& header)
    : out_(out), width_(header.size()) {
  write(header);
}

void CsvWriter::write(const std::vector<std::string>& cells) {
  if (cells.size() != width_) throw std::logic_error("CSV row has the wrong number of fields");
  for (size_t k = 0; k < cells.size(); ++k) {
    if (k) out_ << ',';
    out_ << cells[k];
  }
  out_ << '\n';
}

}  // namespace woftrl

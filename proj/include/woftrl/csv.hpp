#pragma once

#include <ostream>
#include <string>
#include <type_traits>
#include <vector>

namespace woftrl {

/// Shortest text that reads back to the same double; "nan" and "inf" for
/// non-finite values.
std::string format_double(double value);

/// Comma-separated rows with a fixed header. Fields are numbers or plain
/// identifiers, so no quoting is done.
class CsvWriter {
 public:
  CsvWriter(std::ostream& out, const std::vector<std::string>& header);

  template <typename... Fields>
  void row(const Fields&... fields) {
    std::vector<std::string> cells{cell(fields)...};
    write(cells);
  }

 private:
  template <typename T>
  static std::string cell(const T& v) {
    if constexpr (std::is_floating_point_v<T>) {
      return format_double(static_cast<double>(v));
    } else if constexpr (std::is_integral_v<T>) {
      return std::to_string(v);
    } else {
      return std::string(v);
    }
  }
  void write(const std::vector<std::string>& cells);

  std::ostream& out_;
  size_t width_;
};

}  // namespace woftrl

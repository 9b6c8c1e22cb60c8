#pragma once

// CSV emission with round-trip float formatting, and the `t,f` profile format.

#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

#include "rellich/profiles.hpp"

namespace rellich {

/// %.17g; enough digits to round-trip any double.
std::string format_double(double x);

using CsvCell = std::variant<double, long long, std::string>;

class CsvTable {
 public:
  explicit CsvTable(std::vector<std::string> header);

  void add_row(std::vector<CsvCell> row);
  const std::vector<std::string>& header() const noexcept { return header_; }
  std::size_t size() const noexcept { return rows_.size(); }

  /// Comma separated, '\n' line ends, header first.
  void write(std::ostream& out) const;
  std::string str() const;

 private:
  std::vector<std::string> header_;
  std::vector<std::vector<CsvCell>> rows_;
};

void write_profile_csv(std::ostream& out, const RadialProfile& p);

/// Reads a `t,f` file; the t column must be uniformly spaced.
RadialProfile read_profile_csv(std::istream& in, int N);

}  // namespace rellich

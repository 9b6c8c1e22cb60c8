#include "rellich/report_io.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <istream>
#include <ostream>
#include <sstream>

#include "rellich/errors.hpp"

namespace rellich {

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

namespace {

std::string render(const CsvCell& cell) {
  if (const auto* d = std::get_if<double>(&cell)) return format_double(*d);
  if (const auto* i = std::get_if<long long>(&cell)) return std::to_string(*i);
  const auto& s = std::get<std::string>(cell);
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string quoted = "\"";
  for (char c : s) {
    if (c == '"') quoted += '"';
    quoted += c;
  }
  return quoted + "\"";
}

}  // namespace

CsvTable::CsvTable(std::vector<std::string> header) : header_(std::move(header)) {
  if (header_.empty()) throw ConfigurationError("CSV header must not be empty");
}

void CsvTable::add_row(std::vector<CsvCell> row) {
  if (row.size() != header_.size()) throw ConfigurationError("CSV row width does not match header");
  rows_.push_back(std::move(row));
}

void CsvTable::write(std::ostream& out) const {
  for (std::size_t j = 0; j < header_.size(); ++j) out << (j ? "," : "") << header_[j];
  out << '\n';
  for (const auto& row : rows_) {
    for (std::size_t j = 0; j < row.size(); ++j) out << (j ? "," : "") << render(row[j]);
    out << '\n';
  }
}

std::string CsvTable::str() const {
  std::ostringstream s;
  write(s);
  return s.str();
}

void write_profile_csv(std::ostream& out, const RadialProfile& p) {
  CsvTable table({"t", "f"});
  for (std::size_t i = 0; i < p.grid().size(); ++i) table.add_row({p.grid().t(i), p.f()[i]});
  table.write(out);
}

RadialProfile read_profile_csv(std::istream& in, int N) {
  std::string line;
  if (!std::getline(in, line)) throw ConfigurationError("profile CSV is empty");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != "t,f") throw ConfigurationError("profile CSV header must be 't,f'");
  std::vector<double> t, f;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos) throw ConfigurationError("profile CSV row lacks a comma");
    // strtod keeps subnormal values, which from_chars and stod reject
    const std::string t_text = line.substr(0, comma), f_text = line.substr(comma + 1);
    char* t_end = nullptr;
    char* f_end = nullptr;
    const double tv = std::strtod(t_text.c_str(), &t_end);
    const double fv = std::strtod(f_text.c_str(), &f_end);
    if (t_text.empty() || f_text.empty() || *t_end != '\0' || *f_end != '\0') {
      throw ConfigurationError("profile CSV row is not numeric: " + line);
    }
    t.push_back(tv);
    f.push_back(fv);
  }
  if (t.size() < LogGrid::kMinPoints) throw ConfigurationError("profile CSV has fewer than 16 rows");
  const LogGrid grid(t.front(), t.back(), t.size());
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (std::abs(t[i] - grid.t(i)) > 1e-9 * std::max(1.0, std::abs(t[i]))) {
      throw ConfigurationError("profile CSV t column is not uniformly spaced");
    }
  }
  return RadialProfile(GridFunction(grid, std::move(f)), N);
}

}  // namespace rellich

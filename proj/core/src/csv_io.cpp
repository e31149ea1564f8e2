#include "wavesim/csv_io.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace wavesim {

std::string format_number(double value) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.9g", value);
  return buf;
}

void write_csv(const std::string& path, const std::vector<std::string>& headers,
               const std::vector<Eigen::VectorXd>& columns) {
  if (headers.size() != columns.size()) {
    throw std::invalid_argument("write_csv: one header per column required");
  }
  if (columns.empty()) throw std::invalid_argument("write_csv: no columns");
  const Eigen::Index rows = columns.front().size();
  for (const Eigen::VectorXd& c : columns) {
    if (c.size() != rows) throw std::invalid_argument("write_csv: ragged columns");
  }
  std::ofstream out(path);
  if (!out) throw std::runtime_error("write_csv: cannot open " + path);
  for (std::size_t j = 0; j < headers.size(); ++j) {
    if (j) out << ',';
    out << headers[j];
  }
  out << '\n';
  for (Eigen::Index i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < columns.size(); ++j) {
      if (j) out << ',';
      out << format_number(columns[j][i]);
    }
    out << '\n';
  }
  if (!out) throw std::runtime_error("write_csv: write failed for " + path);
}

}  // namespace wavesim

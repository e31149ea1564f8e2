#ifndef WAVESIM_CSV_IO_HPP
#define WAVESIM_CSV_IO_HPP

#include <Eigen/Dense>

#include <string>
#include <vector>

namespace wavesim {

/// One double rendered with 9 significant digits.
std::string format_number(double value);

/// Column-oriented CSV with a header row; all columns must share one length.
void write_csv(const std::string& path, const std::vector<std::string>& headers,
               const std::vector<Eigen::VectorXd>& columns);

}  // namespace wavesim

#endif  // WAVESIM_CSV_IO_HPP

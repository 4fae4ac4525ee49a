#ifndef FHDGM_TYPES_HPP
#define FHDGM_TYPES_HPP

#include <Eigen/Dense>
#include <stdexcept>
#include <string>

namespace fhdgm {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using IntVector = Eigen::VectorXi;
using BoolArray = Eigen::Array<bool, Eigen::Dynamic, Eigen::Dynamic>;

// Error taxonomy mirrored by the CLI exit codes.
struct ConfigError : std::runtime_error {
  explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

struct DataError : std::runtime_error {
  explicit DataError(const std::string& msg) : std::runtime_error(msg) {}
};

struct NumericError : std::runtime_error {
  explicit NumericError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace fhdgm

#endif  // FHDGM_TYPES_HPP

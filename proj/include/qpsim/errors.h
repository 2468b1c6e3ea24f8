#ifndef QPSIM_ERRORS_H
#define QPSIM_ERRORS_H

#include <stdexcept>
#include <string>

namespace qpsim {

/// File-system and parse failures (CLI exit code 2).
struct IoError : std::runtime_error {
  explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

/// Numerical failures: SCF or eigensolver breakdown, empty sectors,
/// sector-violating states (CLI exit code 3).
struct NumericalError : std::runtime_error {
  explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace qpsim

#endif

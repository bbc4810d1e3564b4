#pragma once

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace cmcsep {

using cplx = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using RMatrix = Eigen::MatrixXd;
using CVector = Eigen::VectorXcd;
using RVector = Eigen::VectorXd;

/// Bipartite dimension tag (d_A, d_B).
struct Dims {
  int a = 0;
  int b = 0;

  int total() const { return a * b; }
  bool operator==(const Dims&) const = default;
};

/// Malformed or inconsistent input (wrong shape, non-Hermitian, not a state).
/// The CLI maps this to exit code 2.
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Numerical breakdown inside a detection pipeline. The CLI maps this to
/// exit code 1.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace cmcsep

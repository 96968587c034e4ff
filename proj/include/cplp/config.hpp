#pragma once

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace cplp {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;
using RealMatrix = Eigen::MatrixXd;
using Index = Eigen::Index;

/// Numerical thresholds shared by every module.
///
/// All of them are relative: a check against `herm_tol` compares to
/// `herm_tol * max(1, scale)` where the scale is the natural magnitude of the
/// operator under test (max-abs entry for Hermiticity, operator norm for PSD
/// checks).
struct Tolerances {
  double herm_tol = 1e-10;
  double psd_tol = 1e-9;
  double eig_tol = 1e-8;
  double deg_tol = 1e-8;
};

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionError : public Error {
 public:
  using Error::Error;
};

class NotHermitianError : public Error {
 public:
  using Error::Error;
};

class InvalidStateError : public Error {
 public:
  using Error::Error;
};

class ConvergenceError : public Error {
 public:
  using Error::Error;
};

/// A documented precondition of an analytic bound does not hold
/// (degenerate or rank-deficient ground state, etc).
class PreconditionError : public Error {
 public:
  using Error::Error;
};

}  // namespace cplp

#pragma once

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Core>

namespace gor {

/// Base class of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid arguments or malformed input data.
class InputError : public Error {
 public:
  using Error::Error;
};

/// The numerical problem is degenerate (near-singular model, empty signal
/// content, singular linearization pencil).
class DegenerateError : public Error {
 public:
  using Error::Error;
};

/// The eigenvalue solver did not reach a usable state, e.g. the block
/// Macaulay iteration hit its degree limit before the null space stabilized.
class SolverError : public Error {
 public:
  SolverError(const std::string& what, std::vector<long> nullity_history)
      : Error(what), nullity_history_(std::move(nullity_history)) {}

  const std::vector<long>& nullity_history() const { return nullity_history_; }

 private:
  std::vector<long> nullity_history_;
};

/// The eigenvalue problem was solved but none of its affine eigenvalues is
/// real. Carries the full list of complex eigenvalues (one vector per
/// solution, entries b_1 ... b_q).
class NoRealSolutionError : public Error {
 public:
  NoRealSolutionError(const std::string& what,
                      std::vector<Eigen::VectorXcd> eigenvalues)
      : Error(what), eigenvalues_(std::move(eigenvalues)) {}

  const std::vector<Eigen::VectorXcd>& eigenvalues() const {
    return eigenvalues_;
  }

 private:
  std::vector<Eigen::VectorXcd> eigenvalues_;
};

}  // namespace gor

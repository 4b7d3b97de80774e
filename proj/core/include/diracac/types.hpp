#pragma once

#include <Eigen/Dense>

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

namespace diracac {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RVector = Eigen::VectorXd;

using namespace std::complex_literals;

inline constexpr double kPi = 3.141592653589793238462643383279502884;

//------------------------------------------------------------------------------
// Error hierarchy. Every numerical failure mode the toolkit can report is a
// distinct type so callers (and the CLI report) can tell them apart.

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

// Non-finite values appeared while integrating an ODE.
class IntegrationBlowup : public Error {
 public:
  IntegrationBlowup(double node, const std::string& what)
      : Error(what), node_(node) {}
  double node() const { return node_; }

 private:
  double node_;
};

// A fixed-point or series iteration failed to reach its tolerance.
class NonConvergence : public Error {
 public:
  NonConvergence(double residual, const std::string& what)
      : Error(what), residual_(residual) {}
  double residual() const { return residual_; }

 private:
  double residual_;
};

// Matrix inversion refused because the condition number is too large.
class NearDegenerate : public Error {
 public:
  NearDegenerate(double condition, const std::string& what)
      : Error(what), condition_(condition) {}
  double condition() const { return condition_; }

 private:
  double condition_;
};

// ln of a non-positive (or underflowing) quantity was requested.
class LogSingularity : public Error {
 public:
  LogSingularity(double node, const std::string& what)
      : Error(what), node_(node) {}
  double node() const { return node_; }

 private:
  double node_;
};

class SingularParameter : public Error {
 public:
  using Error::Error;
};

class QuadratureError : public Error {
 public:
  QuadratureError(double discrepancy, const std::string& what)
      : Error(what), discrepancy_(discrepancy) {}
  double discrepancy() const { return discrepancy_; }

 private:
  double discrepancy_;
};

// Born series terms stopped decaying.
class SmallnessViolated : public Error {
 public:
  SmallnessViolated(double ratio, const std::string& what)
      : Error(what), ratio_(ratio) {}
  double ratio() const { return ratio_; }

 private:
  double ratio_;
};

class OutOfRegime : public Error {
 public:
  using Error::Error;
};

}  // namespace diracac

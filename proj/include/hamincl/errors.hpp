#pragma once

#include <stdexcept>
#include <string>

namespace hamincl {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Mismatched period, dimension or mode count between operands.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// An operation was called outside its documented domain.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// Hypothesis or solver parameters out of range (e.g. mu1 <= 2 for V2).
class ParameterError : public Error {
 public:
  using Error::Error;
};

/// Period at or above the admissible threshold pi*sqrt(2/A).
class InfeasibleGeometry : public Error {
 public:
  InfeasibleGeometry(const std::string& what, double period, double threshold)
      : Error(what), period_(period), threshold_(threshold) {}
  double period() const { return period_; }
  double threshold() const { return threshold_; }

 private:
  double period_;
  double threshold_;
};

/// Saddle calibration could not separate S^1_R from X_2 within its budget.
class NonCoerciveError : public Error {
 public:
  NonCoerciveError(const std::string& what, double last_radius, double last_gap)
      : Error(what), last_radius_(last_radius), last_gap_(last_gap) {}
  double last_radius() const { return last_radius_; }
  double last_gap() const { return last_gap_; }

 private:
  double last_radius_;
  double last_gap_;
};

/// A solver run was asked to start from a geometry whose certificate failed.
class CertificateRefused : public Error {
 public:
  using Error::Error;
};

/// Line search exhausted at a node whose Cerami measure is above tolerance.
class StallError : public Error {
 public:
  StallError(const std::string& what, int node, double value, double measure)
      : Error(what), node_(node), value_(value), measure_(measure) {}
  int node() const { return node_; }
  double value() const { return value_; }
  double measure() const { return measure_; }

 private:
  int node_;
  double value_;
  double measure_;
};

/// Shooting Newton iteration did not close the orbit.
class OracleFailure : public Error {
 public:
  OracleFailure(const std::string& what, int iterations, double closure)
      : Error(what), iterations_(iterations), closure_(closure) {}
  int iterations() const { return iterations_; }
  double closure() const { return closure_; }

 private:
  int iterations_;
  double closure_;
};

/// Malformed configuration; `key()` names the offending entry.
class ConfigError : public Error {
 public:
  ConfigError(const std::string& key, const std::string& what)
      : Error("config key '" + key + "': " + what), key_(key) {}
  const std::string& key() const { return key_; }

 private:
  std::string key_;
};

}  // namespace hamincl

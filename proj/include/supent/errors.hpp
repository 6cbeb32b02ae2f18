#pragma once

#include <stdexcept>
#include <string>

namespace supent {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Subsystem label, length, or partition index out of range.
class DimensionError : public Error {
 public:
  using Error::Error;
};

class RegisterMismatch : public Error {
 public:
  using Error::Error;
};

// Precondition on a scalar argument (qubit count, mixing weight, norm, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

class HermiticityError : public Error {
 public:
  using Error::Error;
};

// Witness does not belong to the class an operation requires.
class ClassError : public Error {
 public:
  using Error::Error;
};

class SizeError : public Error {
 public:
  using Error::Error;
};

class SolverFailure : public Error {
 public:
  SolverFailure(const std::string& what, double best_primal)
      : Error(what), best_primal_(best_primal) {}
  double best_primal() const noexcept { return best_primal_; }

 private:
  double best_primal_;
};

// A superposition bound evaluated below -violation tolerance. The bounds are
// theorems, so this always means a numerical or implementation defect.
class BoundViolation : public Error {
 public:
  BoundViolation(const std::string& what, std::string instance_json)
      : Error(what), instance_(std::move(instance_json)) {}
  const std::string& instance_json() const noexcept { return instance_; }

 private:
  std::string instance_;
};

class ExperimentFailure : public Error {
 public:
  ExperimentFailure(const std::string& what, double lower, double upper)
      : Error(what), lower_(lower), upper_(upper) {}
  double lower() const noexcept { return lower_; }
  double upper() const noexcept { return upper_; }

 private:
  double lower_;
  double upper_;
};

}  // namespace supent

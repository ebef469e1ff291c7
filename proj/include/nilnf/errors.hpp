#pragma once

#include <stdexcept>
#include <string>

namespace nilnf {

// Shape mismatch between operands (dimension, degree, grade).
class StructuralError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// An operation was called outside its precondition.
class ContractViolation : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Internal consistency failure; always a bug, never bad input.
class InvariantViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class FrameMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class NotNilpotent : public std::runtime_error {
 public:
  NotNilpotent(int stabilizing_power, int stable_rank)
      : std::runtime_error("matrix is not nilpotent: rank(L^" + std::to_string(stabilizing_power) +
                           ") = rank(L^" + std::to_string(stabilizing_power + 1) + ") = " +
                           std::to_string(stable_rank)),
        power_(stabilizing_power),
        rank_(stable_rank) {}

  // Smallest p with rank(L^p) = rank(L^{p+1}) > 0.
  int power() const noexcept { return power_; }
  int stable_rank() const noexcept { return rank_; }

 private:
  int power_;
  int rank_;
};

class ResidualTooLarge : public std::runtime_error {
 public:
  ResidualTooLarge(double residual, double tolerance)
      : std::runtime_error("homological residual " + std::to_string(residual) +
                           " exceeds tolerance " + std::to_string(tolerance)),
        residual_(residual) {}

  double residual() const noexcept { return residual_; }

 private:
  double residual_;
};

}  // namespace nilnf

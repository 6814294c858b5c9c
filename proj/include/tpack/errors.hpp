#pragma once

#include <stdexcept>
#include <string>

namespace tpack {

/// Base for every recoverable failure of a packing procedure.
class PackingError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A tree lacks the required leaves / pending path.
class HypothesisViolated : public PackingError {
 public:
  HypothesisViolated(int j, const std::string& why)
      : PackingError("HypothesisViolated j=" + std::to_string(j) + ": " + why), j_(j) {}
  int j() const { return j_; }

 private:
  int j_;
};

/// A required choice set ran empty during a staged construction.
class StageFailure : public PackingError {
 public:
  StageFailure(std::string stage, const std::string& reason)
      : PackingError("StageFailure stage=" + stage + ": " + reason), stage_(std::move(stage)) {}
  const std::string& stage() const { return stage_; }

 private:
  std::string stage_;
};

/// Random stage sets failed their concentration conditions R times in a row.
class ResampleExhausted : public PackingError {
 public:
  ResampleExhausted(std::string condition, int worst_index)
      : PackingError("ResampleExhausted: " + condition + " (worst i=" +
                     std::to_string(worst_index) + ")"),
        condition_(std::move(condition)),
        worst_index_(worst_index) {}
  const std::string& condition() const { return condition_; }
  int worst_index() const { return worst_index_; }

 private:
  std::string condition_;
  int worst_index_;
};

class InsufficientPPrime : public PackingError {
 public:
  using PackingError::PackingError;
};

/// No path/star packing of the reserved block satisfies the side conditions.
class SmallPackingInfeasible : public PackingError {
 public:
  using PackingError::PackingError;
};

}  // namespace tpack

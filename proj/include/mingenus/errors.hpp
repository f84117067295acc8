#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace mingenus {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Rejected Gram matrix: not square, not symmetric, degenerate or not unimodular.
class LatticeError : public Error {
 public:
  enum class Kind { kShape, kNotSymmetric, kDegenerate, kNotUnimodular };

  LatticeError(Kind kind, const std::string& what) : Error(what), kind_(kind) {}
  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

/// An operation was called outside its documented domain.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// The search ran out of nodes or pairing range before reaching an answer.
/// This is never a statement about feasibility.
class BudgetExhausted : public Error {
 public:
  BudgetExhausted(const std::string& what, std::string scan_state)
      : Error(what), scan_state_(std::move(scan_state)) {}
  const std::string& scan_state() const { return scan_state_; }

 private:
  std::string scan_state_;
};

}  // namespace mingenus

#ifndef TIGHTPOLY_ERRORS_HPP
#define TIGHTPOLY_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace tightpoly {

/// Base of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Input that violates an operation's contract (bad symbol, bad index set).
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// The relator case split is undefined: two adjacent Schläfli entries are odd.
class AdjacentOddPair : public InvalidArgument {
 public:
  explicit AdjacentOddPair(std::size_t index)
      : InvalidArgument("adjacent odd entries at positions " +
                        std::to_string(index) + " and " +
                        std::to_string(index + 1)),
        index_(index) {}
  /// 1-based position of the first odd entry of the pair.
  std::size_t index() const noexcept { return index_; }

 private:
  std::size_t index_;
};

class NotAdmissible : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

class PreconditionViolated : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// Resource exhaustion. Never means "the group is infinite".
class ResourceExhausted : public Error {
 public:
  using Error::Error;
};

/// Coset enumeration did not close within its coset budget.
class BudgetExceeded : public ResourceExhausted {
 public:
  using ResourceExhausted::ResourceExhausted;
};

/// An element, index or poset cap was hit.
class CapExceeded : public ResourceExhausted {
 public:
  using ResourceExhausted::ResourceExhausted;
};

/// Internal consistency failures. Seeing one of these means a bug.
class InternalError : public Error {
 public:
  using Error::Error;
};

class RelatorViolation : public InternalError {
 public:
  using InternalError::InternalError;
};

class RouteDisagreement : public InternalError {
 public:
  using InternalError::InternalError;
};

class DiamondViolation : public Error {
 public:
  using Error::Error;
};

class NotComparable : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

}  // namespace tightpoly

#endif  // TIGHTPOLY_ERRORS_HPP

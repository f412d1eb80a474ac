#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace hippo {

/// Input that parses but violates a semantic rule (e.g. non-increasing timestamps).
class SemanticError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A linear system that cannot be solved (e.g. a zero pivot in I - delta A).
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Singular diagonal in the structured LegS solve; `index` is the offending row.
class SingularError : public NumericalError {
 public:
  explicit SingularError(long index)
      : NumericalError("singular system: zero pivot at row " + std::to_string(index)), index_(index) {}
  long index() const { return index_; }

 private:
  long index_;
};

/// Failure while folding a stream; `index` is the offending sample.
class StreamError : public NumericalError {
 public:
  StreamError(std::size_t index, const std::string& what)
      : NumericalError("sample " + std::to_string(index) + ": " + what), index_(index) {}
  std::size_t index() const { return index_; }

 private:
  std::size_t index_;
};

}  // namespace hippo

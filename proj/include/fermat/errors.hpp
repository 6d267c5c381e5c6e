#pragma once

#include <stdexcept>
#include <string>

namespace fermat {

// Malformed input: wrong dimension, bad weights, out-of-range index.
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A smooth-only quantity (gradient, surrogate) was requested at an anchor.
// Use the subdiff module there instead.
class AtVertexError : public std::domain_error {
 public:
  AtVertexError(const std::string& what, std::size_t anchor)
      : std::domain_error(what), anchor_(anchor) {}
  std::size_t anchor() const noexcept { return anchor_; }

 private:
  std::size_t anchor_;
};

class UnsupportedError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

class NumericDegeneracy : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace fermat

#ifndef LELONG_ERROR_HPP
#define LELONG_ERROR_HPP

#include <stdexcept>
#include <string>

namespace lelong {

/// Root of the toolkit's exception hierarchy. Each subclass maps to one
/// process exit status in the command-line tool.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An operation was called outside its documented domain.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// An input is valid but lies outside what the exact machinery supports
/// (irrational intersection points, excluded degenerate configurations).
class UnsupportedInstance : public Error {
 public:
  using Error::Error;
};

/// A certificate or claimed value failed an exact re-check.
class VerificationFailure : public Error {
 public:
  using Error::Error;
};

/// Malformed input file or literal.
class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace lelong

#endif  // LELONG_ERROR_HPP

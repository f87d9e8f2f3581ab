#pragma once

#include <stdexcept>
#include <string>

namespace fdsec {

/// Raised when an input violates a type invariant (non-positive gain, negative power, ...).
class InvalidParameter : public std::invalid_argument {
public:
  explicit InvalidParameter(const std::string& what) : std::invalid_argument(what) {}
};

/// Raised when a closed form is requested outside the hypotheses under which it holds.
class UnsupportedRegime : public std::domain_error {
public:
  explicit UnsupportedRegime(const std::string& what) : std::domain_error(what) {}
};

/// The maximizer does not exist (secrecy keeps growing with jamming power).
class UnboundedOptimum : public std::domain_error {
public:
  explicit UnboundedOptimum(const std::string& what) : std::domain_error(what) {}
};

}  // namespace fdsec

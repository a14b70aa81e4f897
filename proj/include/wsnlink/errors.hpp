#pragma once

#include <stdexcept>
#include <string>

namespace wsnlink {

/// Argument outside an operation's mathematical domain (d <= 0, negative SNR ratio, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Region search ran past the bracket cap without crossing the threshold.
class UnboundedRegion : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class ConfigErrorKind { parse, unknown_key, missing_key, wrong_type, invariant };

/// Bad configuration. kind() tells a malformed file from a bad value.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what,
                       ConfigErrorKind kind = ConfigErrorKind::invariant)
      : std::runtime_error(what), kind_(kind) {}

  ConfigErrorKind kind() const noexcept { return kind_; }

 private:
  ConfigErrorKind kind_;
};

/// Unknown built-in profile or modulation name.
class LookupError : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

}  // namespace wsnlink

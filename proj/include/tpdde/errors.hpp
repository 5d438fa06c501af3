#ifndef TPDDE_ERRORS_HPP
#define TPDDE_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace tpdde {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid argument for a mathematical operation (log of zero, α = 0, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

class ArityError : public Error {
 public:
  using Error::Error;
};

/// Non-finite value or overflow while evaluating numerically.
class EvalError : public Error {
 public:
  using Error::Error;
};

/// Equation model or solution parameters violate a standing hypothesis.
class ValidationError : public Error {
 public:
  using Error::Error;
};

class ConstructionError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(std::size_t position, const std::string& what)
      : Error("at position " + std::to_string(position) + ": " + what),
        position_(position) {}

  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

/// Problem with a key of a config document.
class ConfigError : public Error {
 public:
  ConfigError(std::string key, const std::string& what)
      : Error("key '" + key + "': " + what), key_(std::move(key)) {}

  const std::string& key() const { return key_; }

 private:
  std::string key_;
};

}  // namespace tpdde

#endif  // TPDDE_ERRORS_HPP

#pragma once

#include <stdexcept>
#include <string>

namespace greenforge {

enum class ErrorKind {
  Domain,         // argument outside the mathematical domain
  Range,          // argument outside the configured numeric range
  Parse,          // malformed spec string / config
  Solver,         // optimizer failed to make progress
  Inconclusive,   // numeric evidence insufficient for a verdict
  Normalization,  // level-consistency spread too large
  Witness,        // witness sub-check failed
  Io,             // file / format problem
  Internal,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& msg)
      : std::runtime_error(msg), kind_(kind) {}
  ErrorKind kind() const { return kind_; }

  static Error domain(const std::string& m) { return {ErrorKind::Domain, m}; }
  static Error range(const std::string& m) { return {ErrorKind::Range, m}; }
  static Error parse(const std::string& m) { return {ErrorKind::Parse, m}; }
  static Error solver(const std::string& m) { return {ErrorKind::Solver, m}; }
  static Error inconclusive(const std::string& m) {
    return {ErrorKind::Inconclusive, m};
  }
  static Error normalization(const std::string& m) {
    return {ErrorKind::Normalization, m};
  }
  static Error witness(const std::string& m) {
    return {ErrorKind::Witness, m};
  }
  static Error io(const std::string& m) { return {ErrorKind::Io, m}; }

 private:
  ErrorKind kind_;
};

}  // namespace greenforge

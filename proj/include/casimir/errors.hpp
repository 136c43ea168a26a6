#pragma once

#include <stdexcept>
#include <string>

namespace casimir {

/// Argument outside the mathematical domain of an operation (negative frequency, ...).
class DomainError : public std::domain_error {
  public:
    using std::domain_error::domain_error;
};

/// Permittivity evaluated at zero frequency for a model whose static value is infinite.
/// Callers handling the l = 0 Matsubara term use the model's zero-frequency limits instead.
class DivergenceError : public DomainError {
  public:
    using DomainError::DomainError;
};

/// Malformed or inconsistent user input (material files, tables, ranges).
class InputError : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

/// A material or model parameter set that violates its invariants.
class InvariantError : public InputError {
  public:
    using InputError::InputError;
};

/// Parse failure in a material or table file; carries the 1-based line number.
class ParseError : public InputError {
  public:
    ParseError(const std::string& file, int line, const std::string& what)
        : InputError(file + ":" + std::to_string(line) + ": " + what), line_(line) {}

    [[nodiscard]] int line() const noexcept { return line_; }

  private:
    int line_;
};

/// An integral or series that did not meet its tolerance. `partial()` is the
/// best value available when the iteration gave up.
class ConvergenceError : public std::runtime_error {
  public:
    ConvergenceError(const std::string& what, double partial)
        : std::runtime_error(what), partial_(partial) {}

    [[nodiscard]] double partial() const noexcept { return partial_; }

  private:
    double partial_;
};

} // namespace casimir

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace supra {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A caller-supplied argument violates an operation's precondition.
class InvalidArgument : public Error {
public:
    using Error::Error;
};

/// Input data failed structural validation. `violations` holds one
/// human-readable entry per problem found.
class ValidationError : public Error {
public:
    explicit ValidationError(std::vector<std::string> violations);

    const std::vector<std::string>& violations() const noexcept { return violations_; }

private:
    std::vector<std::string> violations_;
};

/// Malformed text input. `line` is 1-based; 0 when the error is not tied to a line.
class ParseError : public Error {
public:
    ParseError(std::string path, std::size_t line, const std::string& what);

    const std::string& path() const noexcept { return path_; }
    std::size_t line() const noexcept { return line_; }

private:
    std::string path_;
    std::size_t line_;
};

class NonConvergence : public Error {
public:
    NonConvergence(std::size_t iterations, double residual, const std::string& context = {});

    std::size_t iterations() const noexcept { return iterations_; }
    double residual() const noexcept { return residual_; }

private:
    std::size_t iterations_;
    double residual_;
};

/// Pearson correlation requested on a zero-variance input.
class ConstantInput : public Error {
public:
    using Error::Error;
};

/// A dominant eigenvalue that must be simple is (numerically) repeated.
class DegenerateEigenvalue : public Error {
public:
    using Error::Error;
};

/// A matrix that must be irreducible is not.
class ReducibleMatrix : public Error {
public:
    using Error::Error;
};

/// A closed-form special case does not apply to the given input.
class NotApplicable : public Error {
public:
    using Error::Error;
};

} // namespace supra

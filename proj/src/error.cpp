#include "supra/error.hpp"

namespace supra {

namespace {

std::string join_violations(const std::vector<std::string>& v) {
    std::string out = "validation failed";
    for (const auto& s : v) {
        out += "; ";
        out += s;
    }
    return out;
}

} // namespace

ValidationError::ValidationError(std::vector<std::string> violations)
    : Error(join_violations(violations)), violations_(std::move(violations)) {}

ParseError::ParseError(std::string path, std::size_t line, const std::string& what)
    : Error(path + (line ? ":" + std::to_string(line) : std::string{}) + ": " + what),
      path_(std::move(path)), line_(line) {}

NonConvergence::NonConvergence(std::size_t iterations, double residual, const std::string& context)
    : Error("no convergence after " + std::to_string(iterations) + " iterations (residual " +
            std::to_string(residual) + ")" + (context.empty() ? "" : ": " + context)),
      iterations_(iterations), residual_(residual) {}

} // namespace supra

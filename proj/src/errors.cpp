#include "sodia/errors.hpp"

namespace sodia {

namespace {

std::string summarize(const std::vector<Violation>& violations) {
    if (violations.empty()) return "validation failed";
    std::string out = std::to_string(violations.size()) + " violation(s): ";
    const auto& first = violations.front();
    out += first.entity + " " + first.rule;
    if (!first.detail.empty()) out += " (" + first.detail + ")";
    if (violations.size() > 1) out += ", ...";
    return out;
}

} // namespace

ValidationError::ValidationError(std::vector<Violation> violations)
    : Error(summarize(violations)), violations_(std::move(violations)) {}

ValidationError::ValidationError(std::string message, std::vector<Violation> violations)
    : Error(std::move(message)), violations_(std::move(violations)) {}

} // namespace sodia

#include "veritas/error.hpp"

namespace veritas {

const char* to_string(ErrorCode code) noexcept {
    switch (code) {
        case ErrorCode::Domain: return "domain";
        case ErrorCode::Undefined: return "undefined";
        case ErrorCode::Validation: return "validation";
        case ErrorCode::ImpossibleEvidence: return "impossible_evidence";
        case ErrorCode::Numeric: return "numeric";
        case ErrorCode::NotFound: return "not_found";
        case ErrorCode::Io: return "io";
    }
    return "unknown";
}

namespace {

std::string join_issues(const std::vector<ValidationIssue>& issues) {
    std::string out = "invalid input";
    for (const auto& issue : issues) {
        out += "; ";
        if (!issue.node.empty()) out += issue.node + ": ";
        out += issue.message;
    }
    return out;
}

std::string describe(const std::vector<std::pair<std::string, std::string>>& findings) {
    std::string out = "impossible findings {";
    for (std::size_t i = 0; i < findings.size(); ++i) {
        if (i) out += ", ";
        out += findings[i].first + "=" + findings[i].second;
    }
    return out + "} have probability zero; seek other hypotheses";
}

}  // namespace

ValidationError::ValidationError(std::vector<ValidationIssue> issues)
    : Error(ErrorCode::Validation, join_issues(issues)), issues_(std::move(issues)) {}

ValidationError::ValidationError(std::string kind, std::string node, std::string message)
    : ValidationError(std::vector<ValidationIssue>{{std::move(kind), std::move(node), std::move(message)}}) {}

ImpossibleEvidenceError::ImpossibleEvidenceError(std::vector<std::pair<std::string, std::string>> findings)
    : Error(ErrorCode::ImpossibleEvidence, describe(findings)), findings_(std::move(findings)) {}

}  // namespace veritas

#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace veritas {

/// Error categories shared by the C++ core, the C API and the CLI exit codes.
enum class ErrorCode {
    Domain,           // argument outside the mathematical domain (p > 1, negative odds, ...)
    Undefined,        // 0/0 Bayes factor: the hypotheses under comparison cannot explain the evidence
    Validation,       // malformed network, findings or request
    ImpossibleEvidence,
    Numeric,          // quadrature failure, overflow of an enumeration budget, ...
    NotFound,
    Io,
};

const char* to_string(ErrorCode code) noexcept;

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

class DomainError : public Error {
public:
    explicit DomainError(const std::string& what) : Error(ErrorCode::Domain, what) {}
};

class UndefinedEvidenceError : public Error {
public:
    explicit UndefinedEvidenceError(const std::string& what) : Error(ErrorCode::Undefined, what) {}
};

class NumericError : public Error {
public:
    explicit NumericError(const std::string& what) : Error(ErrorCode::Numeric, what) {}
};

class NotFoundError : public Error {
public:
    explicit NotFoundError(const std::string& what) : Error(ErrorCode::NotFound, what) {}
};

class IoError : public Error {
public:
    explicit IoError(const std::string& what) : Error(ErrorCode::Io, what) {}
};

struct ValidationIssue {
    std::string kind;  // "cycle", "dangling_parent", "row_sum", ...
    std::string node;
    std::string message;
};

class ValidationError : public Error {
public:
    explicit ValidationError(std::vector<ValidationIssue> issues);
    ValidationError(std::string kind, std::string node, std::string message);

    const std::vector<ValidationIssue>& issues() const noexcept { return issues_; }

private:
    std::vector<ValidationIssue> issues_;
};

/// Raised when the joint probability of a finding set is zero.
class ImpossibleEvidenceError : public Error {
public:
    explicit ImpossibleEvidenceError(std::vector<std::pair<std::string, std::string>> findings);

    const std::vector<std::pair<std::string, std::string>>& findings() const noexcept { return findings_; }

private:
    std::vector<std::pair<std::string, std::string>> findings_;
};

}  // namespace veritas

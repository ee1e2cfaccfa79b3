#pragma once

#include "girl/model.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace girl {

enum class Severity { Error, Warning };

/// A parse or validation finding. `rule` is a stable identifier
/// (P1..P3, J1..J2, V1..V9, W1..W2) that tests and tooling key on.
struct Diagnostic {
    Severity severity = Severity::Error;
    std::string rule;
    std::optional<SourceSpan> span;
    std::string path; // AST path, used when no span is available
    std::string message;

    bool operator==(const Diagnostic &) const = default;
};

/// `file:line:col: error [V2]: message`
std::string format(const Diagnostic &d);

bool has_errors(const std::vector<Diagnostic> &diags);

/// Failure carrying one of the stable error codes (U1, S1, C1, T1, ...).
class Error : public std::runtime_error {
public:
    Error(std::string code, const std::string &message)
        : std::runtime_error(message), code_(std::move(code))
    {
    }

    [[nodiscard]] const std::string &code() const { return code_; }

private:
    std::string code_;
};

/// Raised when an operation's precondition about resolution is violated.
class InternalError : public Error {
public:
    explicit InternalError(const std::string &message) : Error("internal", message) {}
};

} // namespace girl

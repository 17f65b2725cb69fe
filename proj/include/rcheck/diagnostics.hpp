#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace rcheck {

struct SourcePos {
    int line = 0;
    int column = 0;

    friend bool operator==(const SourcePos&, const SourcePos&) = default;
};

std::string to_string(const SourcePos& pos);

enum class ErrorCode {
    IllegalCharacter,
    SyntaxError,
    DuplicateInstanceId,
    DuplicateDeclaration,
    UnknownAgentType,
    UnknownLabel,
    UnknownVariable,
    UnknownName,
    ReservedName,
    TypeMismatch,
    UpdateToUndeclaredVar,
    UnboundSymbol,
    EmptyInitialSet,
    OracleTooLarge,
    StateSpaceBudgetExceeded,
    UnknownFixture,
    UnsupportedDomain,
    InfeasibleConstraint,
    Deadlock,
    ProtocolError,
    IoError,
};

const char* to_string(ErrorCode code);

/// Every failure raised by the library. Carries a machine-readable code and,
/// for source-level problems, the offending position.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, std::string message, std::optional<SourcePos> pos = std::nullopt,
          std::vector<std::string> expected = {});

    ErrorCode code() const noexcept { return code_; }
    const std::optional<SourcePos>& position() const noexcept { return pos_; }
    const std::vector<std::string>& expected() const noexcept { return expected_; }
    const std::string& detail() const noexcept { return detail_; }

private:
    ErrorCode code_;
    std::optional<SourcePos> pos_;
    std::vector<std::string> expected_;
    std::string detail_;
};

enum class Severity { Info, Warning };

struct Diagnostic {
    Severity severity = Severity::Warning;
    std::string code;     // short kebab-case identifier, e.g. "missing-relabel"
    std::string subject;  // agent type or instance the diagnostic is about
    std::string message;
    std::vector<std::string> details;
    std::optional<SourcePos> pos;
};

std::string format(const Diagnostic& d);

} // namespace rcheck

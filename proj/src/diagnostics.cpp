#include "rcheck/diagnostics.hpp"

#include <sstream>

namespace rcheck {

std::string to_string(const SourcePos& pos) {
    return std::to_string(pos.line) + ":" + std::to_string(pos.column);
}

const char* to_string(ErrorCode code) {
    switch (code) {
    case ErrorCode::IllegalCharacter: return "IllegalCharacter";
    case ErrorCode::SyntaxError: return "SyntaxError";
    case ErrorCode::DuplicateInstanceId: return "DuplicateInstanceId";
    case ErrorCode::DuplicateDeclaration: return "DuplicateDeclaration";
    case ErrorCode::UnknownAgentType: return "UnknownAgentType";
    case ErrorCode::UnknownLabel: return "UnknownLabel";
    case ErrorCode::UnknownVariable: return "UnknownVariable";
    case ErrorCode::UnknownName: return "UnknownName";
    case ErrorCode::ReservedName: return "ReservedName";
    case ErrorCode::TypeMismatch: return "TypeMismatch";
    case ErrorCode::UpdateToUndeclaredVar: return "UpdateToUndeclaredVar";
    case ErrorCode::UnboundSymbol: return "UnboundSymbol";
    case ErrorCode::EmptyInitialSet: return "EmptyInitialSet";
    case ErrorCode::OracleTooLarge: return "OracleTooLarge";
    case ErrorCode::StateSpaceBudgetExceeded: return "StateSpaceBudgetExceeded";
    case ErrorCode::UnknownFixture: return "UnknownFixture";
    case ErrorCode::UnsupportedDomain: return "UnsupportedDomain";
    case ErrorCode::InfeasibleConstraint: return "InfeasibleConstraint";
    case ErrorCode::Deadlock: return "Deadlock";
    case ErrorCode::ProtocolError: return "ProtocolError";
    case ErrorCode::IoError: return "IoError";
    }
    return "Error";
}

namespace {

std::string compose(ErrorCode code, const std::string& message, const std::optional<SourcePos>& pos,
                    const std::vector<std::string>& expected) {
    std::ostringstream out;
    if (pos) out << to_string(*pos) << ": ";
    out << to_string(code) << ": " << message;
    if (!expected.empty()) {
        out << " (expected ";
        for (std::size_t i = 0; i < expected.size(); ++i) {
            if (i) out << (i + 1 == expected.size() ? " or " : ", ");
            out << expected[i];
        }
        out << ")";
    }
    return out.str();
}

} // namespace

Error::Error(ErrorCode code, std::string message, std::optional<SourcePos> pos,
             std::vector<std::string> expected)
    : std::runtime_error(compose(code, message, pos, expected)),
      code_(code),
      pos_(pos),
      expected_(std::move(expected)),
      detail_(std::move(message)) {}

std::string format(const Diagnostic& d) {
    std::ostringstream out;
    out << (d.severity == Severity::Warning ? "warning" : "info") << "[" << d.code << "]";
    if (d.pos) out << " " << to_string(*d.pos);
    if (!d.subject.empty()) out << " " << d.subject << ":";
    out << " " << d.message;
    for (const auto& line : d.details) out << "\n    " << line;
    return out.str();
}

} // namespace rcheck

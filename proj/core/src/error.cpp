#include "cohup/error.hpp"

namespace cohup {

namespace {

std::string with_line(const std::string& message, std::size_t line) {
    if (line == 0) return message;
    return "line " + std::to_string(line) + ": " + message;
}

} // namespace

std::string_view to_string(ErrorKind kind) noexcept {
    switch (kind) {
    case ErrorKind::SyntaxError: return "SyntaxError";
    case ErrorKind::ComplexHeadTerm: return "ComplexHeadTerm";
    case ErrorKind::NonGroundFact: return "NonGroundFact";
    case ErrorKind::UnknownPredicate: return "UnknownPredicate";
    case ErrorKind::Io: return "Io";
    case ErrorKind::InvalidRuleSet: return "InvalidRuleSet";
    case ErrorKind::NotStratifiable: return "NotStratifiable";
    case ErrorKind::ConflictingSeed: return "ConflictingSeed";
    case ErrorKind::SeedPredicateUnknown: return "SeedPredicateUnknown";
    case ErrorKind::UnknownClass: return "UnknownClass";
    case ErrorKind::DanglingReference: return "DanglingReference";
    case ErrorKind::DuplicateElement: return "DuplicateElement";
    case ErrorKind::ElementNotInClass: return "ElementNotInClass";
    case ErrorKind::TargetEqualsSource: return "TargetEqualsSource";
    case ErrorKind::MismatchDetected: return "MismatchDetected";
    }
    return "Unknown";
}

Error::Error(ErrorKind kind, const std::string& message, std::size_t line)
    : std::runtime_error(with_line(message, line)), kind_(kind), line_(line) {}

bool Error::is_input_error() const noexcept {
    switch (kind_) {
    case ErrorKind::SyntaxError:
    case ErrorKind::ComplexHeadTerm:
    case ErrorKind::NonGroundFact:
    case ErrorKind::UnknownPredicate:
    case ErrorKind::Io:
        return true;
    default:
        return false;
    }
}

} // namespace cohup

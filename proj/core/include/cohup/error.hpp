#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace cohup {

enum class ErrorKind {
    SyntaxError,
    ComplexHeadTerm,
    NonGroundFact,
    UnknownPredicate,
    Io,
    InvalidRuleSet,
    NotStratifiable,
    ConflictingSeed,
    SeedPredicateUnknown,
    UnknownClass,
    DanglingReference,
    DuplicateElement,
    ElementNotInClass,
    TargetEqualsSource,
    MismatchDetected,
};

std::string_view to_string(ErrorKind kind) noexcept;

/// Every failure raised by the library. The kind decides how callers react;
/// input errors (malformed or unreadable files) are distinguished from
/// domain errors so the CLI can report them with different exit codes.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& message, std::size_t line = 0);

    ErrorKind kind() const noexcept { return kind_; }
    /// 1-based source line for parse errors, 0 when not applicable.
    std::size_t line() const noexcept { return line_; }
    bool is_input_error() const noexcept;

private:
    ErrorKind kind_;
    std::size_t line_;
};

} // namespace cohup

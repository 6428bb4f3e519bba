#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace fanforge {

enum class ErrorCode {
    InvalidInput,
    Unbounded,
    Empty,
    DimensionDeficient,
    UnsupportedType,
    SingularSystem,
    NonPositiveParameter,
    BudgetExceeded,
    DegenerateWall,
    NotSimplicial,
    InconsistentSystem,
};

std::string_view to_string(ErrorCode code);

/// The single exception type thrown by the library. The code lets callers
/// (and the CLI) tell failure modes apart without parsing messages.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

}  // namespace fanforge

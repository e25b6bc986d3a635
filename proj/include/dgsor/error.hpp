#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace dgsor {

enum class ErrorCode {
    DimensionMismatch,
    InvalidStepsize,
    Singular,
    NotSpd,
    InvalidPartition,
    SingularBlock,
    OutOfRange,
    InvalidSpec,
    Unsupported,
    ParseError,
    UnsupportedField,
    Io,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Exception carrying a machine-checkable error category.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

} // namespace dgsor

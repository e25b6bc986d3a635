#include "dgsor/error.hpp"

namespace dgsor {

std::string_view to_string(ErrorCode code) noexcept {
    switch (code) {
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::InvalidStepsize: return "InvalidStepsize";
    case ErrorCode::Singular: return "Singular";
    case ErrorCode::NotSpd: return "NotSpd";
    case ErrorCode::InvalidPartition: return "InvalidPartition";
    case ErrorCode::SingularBlock: return "SingularBlock";
    case ErrorCode::OutOfRange: return "OutOfRange";
    case ErrorCode::InvalidSpec: return "InvalidSpec";
    case ErrorCode::Unsupported: return "Unsupported";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::UnsupportedField: return "UnsupportedField";
    case ErrorCode::Io: return "Io";
    }
    return "Unknown";
}

} // namespace dgsor

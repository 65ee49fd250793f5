#pragma once

#include <stdexcept>
#include <string>

namespace qrouter {

enum class ErrorCode {
    None = 0,
    ViolatedInvariant,
    OutOfBand,
    NotSymmetric,
    NearPole,
    ComplexRoot,
    SingularSystem,
    EngineMismatch,
    NormDrift,
    PacketNotCleared,
    ConfigError,
    BadArgument,
};

const char* error_code_name(ErrorCode c);

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, std::string message)
        : std::runtime_error(std::move(message)), code_(code) {}
    ErrorCode code() const { return code_; }

private:
    ErrorCode code_;
};

inline const char* error_code_name(ErrorCode c)
{
    switch (c) {
    case ErrorCode::None: return "None";
    case ErrorCode::ViolatedInvariant: return "ViolatedInvariant";
    case ErrorCode::OutOfBand: return "OutOfBand";
    case ErrorCode::NotSymmetric: return "NotSymmetric";
    case ErrorCode::NearPole: return "NearPole";
    case ErrorCode::ComplexRoot: return "ComplexRoot";
    case ErrorCode::SingularSystem: return "SingularSystem";
    case ErrorCode::EngineMismatch: return "EngineMismatch";
    case ErrorCode::NormDrift: return "NormDrift";
    case ErrorCode::PacketNotCleared: return "PacketNotCleared";
    case ErrorCode::ConfigError: return "ConfigError";
    case ErrorCode::BadArgument: return "BadArgument";
    }
    return "Unknown";
}

} // namespace qrouter

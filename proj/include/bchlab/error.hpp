#ifndef BCHLAB_ERROR_HPP
#define BCHLAB_ERROR_HPP

#include <stdexcept>
#include <string>

namespace bchlab {

enum class ErrorCode {
    NotPrimitive,
    LengthMismatch,
    ZeroWord,
    BadLength,
    InvalidLeader,
    NotDualCodeword,
    InsufficientChecks,
    MixedWeights,
    InconsistentList,
    InvalidArgument,
    Parse,
};

inline const char* to_string(ErrorCode code) noexcept {
    switch (code) {
    case ErrorCode::NotPrimitive: return "NotPrimitive";
    case ErrorCode::LengthMismatch: return "LengthMismatch";
    case ErrorCode::ZeroWord: return "ZeroWord";
    case ErrorCode::BadLength: return "BadLength";
    case ErrorCode::InvalidLeader: return "InvalidLeader";
    case ErrorCode::NotDualCodeword: return "NotDualCodeword";
    case ErrorCode::InsufficientChecks: return "InsufficientChecks";
    case ErrorCode::MixedWeights: return "MixedWeights";
    case ErrorCode::InconsistentList: return "InconsistentList";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::Parse: return "Parse";
    }
    return "Unknown";
}

/// Exception carrying a machine-checkable error category.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

} // namespace bchlab

#endif // BCHLAB_ERROR_HPP

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace hecke {

enum class ErrorCode {
    BackendMismatch,
    IndexOverflow,
    PairMismatch,
    NotFinite,
    NotAbelian,
    SpecInvalid,
    DegenerateParameter,
    ParseError,
};

std::string_view to_string(ErrorCode code) noexcept;

// Single exception type for the library; callers branch on code().
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& detail)
        : std::runtime_error(detail), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& detail) {
    throw Error(code, detail);
}

}  // namespace hecke
